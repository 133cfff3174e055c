#pragma once

#include "remknap/core.hpp"

#include <cstdint>

namespace remknap {

// Strict inequalities in generated instances must hold with at least this
// margin unless they are mathematically exact, so that the capacity
// tolerance can never change feasibility.
inline constexpr double kGeneratorMargin = 1e-6;

// psi = 4/(1+sqrt(17)) = (sqrt(17)-1)/4, the one-advice-bit constant.
double psi();

// Positive root of 2z^2 + (2k-3)z - 2(k-1), for integer k >= 2. zeta(2) == psi.
double zeta(int k);

// Three instances on a shared three-item prefix (psi, psi^2, 1-psi^2+eps);
// the second appends 1-psi^2 and the third appends psi^2-eps.
// Requires eps in [1e-6, psi-1e-6] and positive generated sizes.
std::vector<Instance> gen_one_bit(double eps);

// k+1 instances on a shared k+1 item prefix x_1 = zeta,
// x_i = zeta^2-(i-2)(1-zeta) for i in 2..k, x_{k+1} = zeta^2-(k-1)(1-zeta)+eps;
// instance i >= 2 appends y_i = 1-x_i. Requires k >= 2 and
// eps in [1e-6, 1-zeta(k)-1e-6].
std::vector<Instance> gen_log_k(int k, double eps);

// Capacity 5m+1; big items 4m+i for i in -k..k; then 1+2^-j for j = 1..m;
// then one final item. The literal variant uses 1 - sum_{j in S} 2^-j, the
// repaired variant m+1-|S|-sum_{j in S} 2^-j, under which exactly one packing
// fills the knapsack to capacity: {4m} union S union {final}.
enum class OptimalityVariant { literal, repaired };
Instance gen_optimality(int m, int k, const std::vector<int>& subset,
                        OptimalityVariant variant = OptimalityVariant::repaired);

// log2 of the exact integer sum of binomials C(m,i) for i in k..m-k.
double advice_requirement(int m, int k);

// n sizes drawn i.i.d. uniform on (0,1] from SplitMix64; identical (n, seed)
// yields an identical instance on every platform.
Instance gen_uniform(std::size_t n, std::uint64_t seed);

} // namespace remknap
