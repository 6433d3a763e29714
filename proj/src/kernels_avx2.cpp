// AVX2 variants. This translation unit is compiled with -mavx2; nothing in
// it may be called unless supported(Isa::avx2) holds at runtime.

#include "gwr/kernels.hpp"

#include <immintrin.h>

namespace gwr::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 8;

inline __m256i load(const Point* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(Point* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

}  // namespace

void gather(Point* out, const Point* table, const Point* idx, std::size_t n) {
  const int* base = reinterpret_cast<const int*>(table);
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    __m256i a = _mm256_i32gather_epi32(base, load(idx + i), 4);
    __m256i b = _mm256_i32gather_epi32(base, load(idx + i + kLanes), 4);
    store(out + i, a);
    store(out + i + kLanes, b);
  }
  for (; i + kLanes <= n; i += kLanes)
    store(out + i, _mm256_i32gather_epi32(base, load(idx + i), 4));
  for (; i < n; ++i) out[i] = table[idx[i]];
}

void compose(Point* out, const Point* p, const Point* q, std::size_t n) {
  gather(out, p, q, n);
}

bool is_identity(const Point* p, std::size_t n) {
  __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(static_cast<int>(kLanes));
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i eq = _mm256_cmpeq_epi32(load(p + i), iota);
    if (_mm256_movemask_epi8(eq) != -1) return false;
    iota = _mm256_add_epi32(iota, step);
  }
  for (; i < n; ++i)
    if (p[i] != i) return false;
  return true;
}

bool equal(const Point* a, const Point* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i eq = _mm256_cmpeq_epi32(load(a + i), load(b + i));
    if (_mm256_movemask_epi8(eq) != -1) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::size_t first_moved(const Point* p, std::size_t n) {
  __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(static_cast<int>(kLanes));
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i eq = _mm256_cmpeq_epi32(load(p + i), iota);
    unsigned mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
    if (mask != 0xFFu) return i + static_cast<std::size_t>(__builtin_ctz(~mask & 0xFFu));
    iota = _mm256_add_epi32(iota, step);
  }
  for (; i < n; ++i)
    if (p[i] != i) return i;
  return n;
}

}  // namespace gwr::kernels::avx2
