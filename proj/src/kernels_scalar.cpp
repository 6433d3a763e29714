#include "gwr/kernels.hpp"

namespace gwr::kernels::scalar {

void compose(Point* out, const Point* p, const Point* q, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = p[q[i]];
}

void invert(Point* out, const Point* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[p[i]] = static_cast<Point>(i);
}

bool is_identity(const Point* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] != i) return false;
  return true;
}

bool equal(const Point* a, const Point* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::size_t first_moved(const Point* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] != i) return i;
  return n;
}

void gather(Point* out, const Point* table, const Point* idx, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = table[idx[i]];
}

}  // namespace gwr::kernels::scalar
