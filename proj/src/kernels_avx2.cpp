#include "mule/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace mule::kernels::detail {

__attribute__((target("avx2"))) void pairwise_avx2(std::span<const double> xs,
                                                   std::span<const double> ys, double speed,
                                                   std::span<double> out) {
  const std::size_t n = xs.size();
  const __m256d vspeed = _mm256_set1_pd(speed);
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d xi = _mm256_set1_pd(xs[i]);
    const __m256d yi = _mm256_set1_pd(ys[i]);
    double* row = out.data() + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(xs.data() + j));
      const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(ys.data() + j));
      const __m256d sq = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      _mm256_storeu_pd(row + j, _mm256_div_pd(_mm256_sqrt_pd(sq), vspeed));
    }
    for (; j < n; ++j) {
      const double dx = xs[i] - xs[j];
      const double dy = ys[i] - ys[j];
      row[j] = std::sqrt(dx * dx + dy * dy) / speed;
    }
  }
}

__attribute__((target("avx2"))) void relax_min_avx2(std::span<const double> xs,
                                                    std::span<const double> ys, double px,
                                                    double py, std::span<double> mins) {
  const std::size_t n = xs.size();
  const __m256d vx = _mm256_set1_pd(px);
  const __m256d vy = _mm256_set1_pd(py);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + i), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + i), vy);
    const __m256d d =
        _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    const __m256d cur = _mm256_loadu_pd(mins.data() + i);
    // (d < cur) ? d : cur, matching the scalar comparison exactly.
    _mm256_storeu_pd(mins.data() + i, _mm256_blendv_pd(cur, d, _mm256_cmp_pd(d, cur, _CMP_LT_OQ)));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    const double d = std::sqrt(dx * dx + dy * dy);
    if (d < mins[i]) mins[i] = d;
  }
}

}  // namespace mule::kernels::detail

#endif
