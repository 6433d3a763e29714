#include "gwr/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "gwr/error.hpp"

namespace gwr::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar,       scalar::compose, scalar::invert,
                              scalar::is_identity, scalar::equal,   scalar::first_moved,
                              scalar::gather};

#ifdef GWR_HAVE_AVX2_KERNELS
// No scatter in AVX2, so inversion stays scalar.
constexpr KernelTable kAvx2{Isa::avx2,        avx2::compose, scalar::invert,
                            avx2::is_identity, avx2::equal,   avx2::first_moved,
                            avx2::gather};
#endif

const KernelTable* initial() {
  Isa isa = detect();
  if (const char* env = std::getenv("GWR_ISA")) {
    Isa wanted = parse_isa(env);
    if (supported(wanted)) isa = wanted;
  }
  return &table(isa);
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{initial()};
  return ptr;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  throw ValidationError("unknown instruction set '" + std::string(name) + "'");
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#ifdef GWR_HAVE_AVX2_KERNELS
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detect() { return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const KernelTable& table(Isa isa) {
  if (!supported(isa))
    throw ValidationError("instruction set '" + std::string(isa_name(isa)) +
                          "' is not supported on this CPU");
#ifdef GWR_HAVE_AVX2_KERNELS
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) { current().store(&table(isa), std::memory_order_relaxed); }

}  // namespace gwr::kernels
