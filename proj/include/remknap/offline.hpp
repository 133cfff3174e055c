#pragma once

#include "remknap/core.hpp"

#include <functional>

namespace remknap {

// Subset sums within this distance of each other count as equal. Intended
// ties in the hard families are exact in binary64, so this only has to
// absorb rounding noise.
inline constexpr double kTieTolerance = 1e-12;

// Exact-search size limits.
inline constexpr std::size_t kMaxExactItems = 40;       // meet in the middle
inline constexpr std::size_t kMaxEnumerationItems = 24; // full subset enumeration

struct OptResult {
    double gain = 0.0;
    std::vector<std::size_t> witness; // lexicographically smallest maximizer
};

// Maximum subset sum not exceeding the capacity (plus tolerance), by meet in
// the middle: the items are split into halves, the subset sums of each half
// are enumerated, one side is sorted, and a sweep finds the best combination.
// The witness is the lexicographically smallest index set among maximizers.
OptResult optimal_gain(const Instance& instance);

// Every maximizer witness set, complete and duplicate-free, in lexicographic
// order of the index sets. Full 2^n enumeration with pruning.
std::vector<std::vector<std::size_t>> enumerate_optima(const Instance& instance);

// True iff some optimal witness set satisfies the predicate.
bool exists_optimum_with(const Instance& instance,
                         const std::function<bool(std::span<const std::size_t>)>& predicate);

} // namespace remknap
