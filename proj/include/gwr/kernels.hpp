#pragma once

// Data-parallel inner loops of the permutation engine.
//
// Each kernel has a portable scalar reference and, where the target has
// them, vector variants. The variant is chosen once at startup from the
// CPU feature flags and can be pinned with select() or the GWR_ISA
// environment variable ("scalar", "avx2"). All variants must produce
// bit-identical results; tests/test_kernels.cpp checks this.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace gwr::kernels {

using Point = std::uint32_t;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // out[i] = p[q[i]]  (apply q first, then p)
  void (*compose)(Point* out, const Point* p, const Point* q, std::size_t n);
  // out[p[i]] = i
  void (*invert)(Point* out, const Point* p, std::size_t n);
  bool (*is_identity)(const Point* p, std::size_t n);
  bool (*equal)(const Point* a, const Point* b, std::size_t n);
  // Least i with p[i] != i, or n when p is the identity.
  std::size_t (*first_moved)(const Point* p, std::size_t n);
  // out[i] = table[idx[i]]; used for relabeling points through a lookup table.
  void (*gather)(Point* out, const Point* table, const Point* idx, std::size_t n);
};

std::string_view isa_name(Isa isa);
Isa parse_isa(std::string_view name);

bool supported(Isa isa);
Isa detect();

const KernelTable& table(Isa isa);
const KernelTable& active();
void select(Isa isa);

namespace scalar {
void compose(Point* out, const Point* p, const Point* q, std::size_t n);
void invert(Point* out, const Point* p, std::size_t n);
bool is_identity(const Point* p, std::size_t n);
bool equal(const Point* a, const Point* b, std::size_t n);
std::size_t first_moved(const Point* p, std::size_t n);
void gather(Point* out, const Point* table, const Point* idx, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GWR_HAVE_AVX2_KERNELS 1
namespace avx2 {
void compose(Point* out, const Point* p, const Point* q, std::size_t n);
bool is_identity(const Point* p, std::size_t n);
bool equal(const Point* a, const Point* b, std::size_t n);
std::size_t first_moved(const Point* p, std::size_t n);
void gather(Point* out, const Point* table, const Point* idx, std::size_t n);
}  // namespace avx2
#endif

}  // namespace gwr::kernels
