#pragma once

// Distance kernels shared by the topology, planner and baseline code.
//
// Every kernel has a scalar reference implementation and, where the CPU
// supports it, a vector variant. Variants are bit-identical to the scalar
// reference: they use only IEEE add/sub/mul/div/sqrt, which are correctly
// rounded in both paths, and the build disables FMA contraction.

#include <span>
#include <string_view>

namespace mule::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// out[i*n + j] = Euclidean distance between points i and j divided by `speed`.
/// `out` must hold xs.size()^2 values.
using PairwiseFn = void (*)(std::span<const double> xs, std::span<const double> ys, double speed,
                            std::span<double> out);

/// mins[i] = min(mins[i], distance((xs[i], ys[i]), (px, py))).
using RelaxMinFn = void (*)(std::span<const double> xs, std::span<const double> ys, double px,
                            double py, std::span<double> mins);

struct KernelTable {
  Isa isa;
  PairwiseFn pairwise_travel_times;
  RelaxMinFn relax_min_distance;
};

const KernelTable& scalar_kernels();

/// Returns nullptr when the binary or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// Best table for this CPU. Setting MULE_SIMD=scalar in the environment forces the reference path.
const KernelTable& active();

namespace detail {
void pairwise_scalar(std::span<const double> xs, std::span<const double> ys, double speed,
                     std::span<double> out);
void relax_min_scalar(std::span<const double> xs, std::span<const double> ys, double px, double py,
                      std::span<double> mins);
#if defined(__x86_64__) || defined(_M_X64)
void pairwise_avx2(std::span<const double> xs, std::span<const double> ys, double speed,
                   std::span<double> out);
void relax_min_avx2(std::span<const double> xs, std::span<const double> ys, double px, double py,
                    std::span<double> mins);
#endif
}  // namespace detail

}  // namespace mule::kernels
