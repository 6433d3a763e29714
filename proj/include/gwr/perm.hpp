#pragma once

// Dense permutations of {0, ..., degree-1}.
//
// Composition convention, used everywhere in this library:
//   compose(p, q)(x) = p(q(x))      -- the right factor is applied first.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwr/kernels.hpp"

namespace gwr {

using Point = kernels::Point;

/// Largest degree any Permutation may have (default 2^20).
std::size_t degree_cap();
void set_degree_cap(std::size_t cap);

class Permutation {
 public:
  Permutation() = default;
  /// The identity on `degree` points.
  explicit Permutation(std::size_t degree);

  /// Validates that `images` is a bijection of 0..n-1.
  static Permutation from_images(std::vector<Point> images);
  /// Caller guarantees `images` is a bijection.
  static Permutation from_images_unchecked(std::vector<Point> images);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }

  std::span<const Point> images() const noexcept { return images_; }
  Point* data() noexcept { return images_.data(); }
  const Point* data() const noexcept { return images_.data(); }

  bool is_identity() const;
  /// Least moved point, or degree() for the identity.
  std::size_t first_moved() const;
  std::vector<Point> support() const;

  friend bool operator==(const Permutation& a, const Permutation& b);
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  explicit Permutation(std::vector<Point> images, int) : images_(std::move(images)) {}
  std::vector<Point> images_;
};

Permutation compose(const Permutation& p, const Permutation& q);
/// out = p ∘ q, reusing out's storage when it already has the right degree.
void compose_into(Permutation& out, const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
/// by ∘ g ∘ by⁻¹
Permutation conjugate(const Permutation& g, const Permutation& by);

/// Disjoint-cycle notation, e.g. "(0 1 2)(3 4)"; "()" is the identity.
Permutation parse_cycles(std::string_view text, std::size_t degree);
/// Canonical form: fixed points omitted, each cycle starts at its least
/// point, cycles ordered by that point.
std::string format_cycles(const Permutation& p);

}  // namespace gwr
