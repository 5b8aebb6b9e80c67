#include "mule/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace mule::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

namespace detail {

void pairwise_scalar(std::span<const double> xs, std::span<const double> ys, double speed,
                     std::span<double> out) {
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = xs[i];
    const double yi = ys[i];
    double* row = out.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = xi - xs[j];
      const double dy = yi - ys[j];
      row[j] = std::sqrt(dx * dx + dy * dy) / speed;
    }
  }
}

void relax_min_scalar(std::span<const double> xs, std::span<const double> ys, double px, double py,
                      std::span<double> mins) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    const double d = std::sqrt(dx * dx + dy * dy);
    if (d < mins[i]) mins[i] = d;
  }
}

}  // namespace detail

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, detail::pairwise_scalar, detail::relax_min_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{Isa::Avx2, detail::pairwise_avx2, detail::relax_min_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("MULE_SIMD");
    if (forced != nullptr && std::string(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace mule::kernels
