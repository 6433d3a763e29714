#include "gwr/perm.hpp"

#include <atomic>
#include <cctype>
#include <numeric>
#include <string>

#include "gwr/error.hpp"

namespace gwr {

namespace {

std::atomic<std::size_t> g_degree_cap{std::size_t{1} << 20};

void check_degree(std::size_t degree) {
  if (degree > degree_cap())
    throw CapError("permutation degree " + std::to_string(degree) + " exceeds degree cap " +
                   std::to_string(degree_cap()));
}

void require_same_degree(const Permutation& p, const Permutation& q, const char* op) {
  if (p.degree() != q.degree())
    throw ValidationError(std::string(op) + ": degree mismatch (" + std::to_string(p.degree()) +
                          " vs " + std::to_string(q.degree()) + ")");
}

}  // namespace

std::size_t degree_cap() { return g_degree_cap.load(std::memory_order_relaxed); }

void set_degree_cap(std::size_t cap) {
  if (cap == 0) throw ValidationError("degree cap must be positive");
  g_degree_cap.store(cap, std::memory_order_relaxed);
}

Permutation::Permutation(std::size_t degree) {
  check_degree(degree);
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation Permutation::from_images(std::vector<Point> images) {
  check_degree(images.size());
  std::vector<bool> seen(images.size(), false);
  for (Point x : images) {
    if (x >= images.size())
      throw ValidationError("image " + std::to_string(x) + " out of range for degree " +
                            std::to_string(images.size()));
    if (seen[x]) throw ValidationError("image " + std::to_string(x) + " repeated");
    seen[x] = true;
  }
  return Permutation(std::move(images), 0);
}

Permutation Permutation::from_images_unchecked(std::vector<Point> images) {
  return Permutation(std::move(images), 0);
}

bool Permutation::is_identity() const {
  return kernels::active().is_identity(images_.data(), images_.size());
}

std::size_t Permutation::first_moved() const {
  return kernels::active().first_moved(images_.data(), images_.size());
}

std::vector<Point> Permutation::support() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) out.push_back(static_cast<Point>(i));
  return out;
}

bool operator==(const Permutation& a, const Permutation& b) {
  return a.degree() == b.degree() &&
         kernels::active().equal(a.images_.data(), b.images_.data(), a.degree());
}

void compose_into(Permutation& out, const Permutation& p, const Permutation& q) {
  require_same_degree(p, q, "compose");
  if (out.degree() != p.degree()) out = Permutation(p.degree());
  kernels::active().compose(out.data(), p.data(), q.data(), p.degree());
}

Permutation compose(const Permutation& p, const Permutation& q) {
  require_same_degree(p, q, "compose");
  std::vector<Point> out(p.degree());
  kernels::active().compose(out.data(), p.data(), q.data(), p.degree());
  return Permutation::from_images_unchecked(std::move(out));
}

Permutation inverse(const Permutation& p) {
  std::vector<Point> out(p.degree());
  kernels::active().invert(out.data(), p.data(), p.degree());
  return Permutation::from_images_unchecked(std::move(out));
}

Permutation conjugate(const Permutation& g, const Permutation& by) {
  require_same_degree(g, by, "conjugate");
  return compose(by, compose(g, inverse(by)));
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> ValidationError {
    return ValidationError("malformed cycle notation at offset " + std::to_string(pos) + ": " +
                           why);
  };

  skip_space();
  if (pos == text.size()) throw fail("empty input");
  while (true) {
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != '(') throw fail("expected '('");
    ++pos;
    std::vector<Point> cycle;
    while (true) {
      skip_space();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos == text.size()) throw fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) throw fail("expected a point");
      std::uint64_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (value >= degree)
          throw ValidationError("point " + std::to_string(value) + " >= degree " +
                                std::to_string(degree));
        ++pos;
      }
      if (used[value]) throw ValidationError("point " + std::to_string(value) + " repeated");
      used[value] = true;
      cycle.push_back(static_cast<Point>(value));
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) images[cycle[i]] = cycle[(i + 1) % cycle.size()];
  }
  return Permutation::from_images(std::move(images));
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (seen[start] || p(start) == start) continue;
    out += '(';
    Point x = start;
    bool first = true;
    do {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(x);
      seen[x] = true;
      x = p(x);
    } while (x != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace gwr
