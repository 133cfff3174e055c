#include "remknap/offline.hpp"

#include "remknap/errors.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace remknap {

namespace {

// All subset sums of sizes[begin..end). sums[mask] uses bit i for item begin+i.
std::vector<double> subset_sums(std::span<const double> sizes, std::size_t begin,
                                std::size_t end) {
    const std::size_t count = end - begin;
    std::vector<double> sums(std::size_t{1} << count, 0.0);
    for (std::size_t mask = 1; mask < sums.size(); ++mask) {
        const unsigned low = std::countr_zero(mask);
        sums[mask] = sums[mask & (mask - 1)] + sizes[begin + low];
    }
    return sums;
}

// Largest value in the ascending-sorted list not exceeding budget; 0 if none
// (the empty subset is always present as a 0 entry).
double best_at_most(const std::vector<double>& sorted_sums, double budget) {
    auto it = std::upper_bound(sorted_sums.begin(), sorted_sums.end(), budget);
    if (it == sorted_sums.begin()) {
        return -1.0; // below even the empty subset; caller treats as unreachable
    }
    return *(it - 1);
}

} // namespace

OptResult optimal_gain(const Instance& instance) {
    validate_instance(instance);
    const std::size_t n = instance.sizes.size();
    if (n > kMaxExactItems) {
        throw TooLarge("optimal_gain handles at most " + std::to_string(kMaxExactItems) +
                       " items, got " + std::to_string(n));
    }
    if (n == 0) {
        return {};
    }

    const std::span<const double> sizes(instance.sizes);
    const double limit = instance.capacity + capacity_tolerance();
    const std::size_t half = (n + 1) / 2;

    std::vector<double> right_sorted = subset_sums(sizes, half, n);
    std::sort(right_sorted.begin(), right_sorted.end());

    // Pass 1: the optimal gain.
    double best = 0.0;
    {
        const std::vector<double> left_sums = subset_sums(sizes, 0, half);
        for (double left : left_sums) {
            if (left > limit) {
                continue;
            }
            const double right = best_at_most(right_sorted, limit - left);
            if (right >= 0.0 && left + right > best) {
                best = left + right;
            }
        }
    }

    // Maximum achievable total from base plus any subset of items first..n-1,
    // subject to the capacity limit. Returns -1 when even base is infeasible.
    const auto max_total_from = [&](std::size_t first, double base) -> double {
        if (base > limit) {
            return -1.0;
        }
        if (first >= half) {
            // Suffix lies entirely in the right half: enumerate it directly.
            const std::vector<double> sums = subset_sums(sizes, first, n);
            double top = base;
            for (double s : sums) {
                if (base + s <= limit && base + s > top) {
                    top = base + s;
                }
            }
            return top;
        }
        const std::vector<double> left_sums = subset_sums(sizes, first, half);
        double top = -1.0;
        for (double left : left_sums) {
            if (base + left > limit) {
                continue;
            }
            const double right = best_at_most(right_sorted, limit - base - left);
            if (right >= 0.0 && base + left + right > top) {
                top = base + left + right;
            }
        }
        return top;
    };

    // Pass 2: lexicographically smallest witness. Take each item in index
    // order whenever the optimum is still reachable with it included.
    OptResult result;
    double current = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double with_item = current + sizes[i];
        if (with_item <= limit && max_total_from(i + 1, with_item) >= best - kTieTolerance) {
            result.witness.push_back(i);
            current = with_item;
        }
    }
    result.gain = current; // ascending-index summation by construction
    assert(std::abs(result.gain - best) <= kTieTolerance);
    return result;
}

std::vector<std::vector<std::size_t>> enumerate_optima(const Instance& instance) {
    validate_instance(instance);
    const std::size_t n = instance.sizes.size();
    if (n > kMaxEnumerationItems) {
        throw TooLarge("enumerate_optima handles at most " +
                       std::to_string(kMaxEnumerationItems) + " items, got " +
                       std::to_string(n));
    }

    const std::span<const double> sizes(instance.sizes);
    const double limit = instance.capacity + capacity_tolerance();

    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        suffix[i] = suffix[i + 1] + sizes[i];
    }

    double best = 0.0;
    std::vector<std::pair<std::vector<std::size_t>, double>> candidates;
    std::vector<std::size_t> chosen;

    // Include-first depth-first search; branches that cannot tie the best
    // sum seen so far are cut.
    auto dfs = [&](auto&& self, std::size_t i, double sum) -> void {
        if (sum + suffix[i] < best - kTieTolerance) {
            return;
        }
        if (i == n) {
            if (sum > best) {
                best = sum;
            }
            if (sum >= best - kTieTolerance) {
                candidates.emplace_back(chosen, sum);
            }
            return;
        }
        if (sum + sizes[i] <= limit) {
            chosen.push_back(i);
            self(self, i + 1, sum + sizes[i]);
            chosen.pop_back();
        }
        self(self, i + 1, sum);
    };
    dfs(dfs, 0, 0.0);

    std::vector<std::vector<std::size_t>> optima;
    for (auto& [set, sum] : candidates) {
        if (sum >= best - kTieTolerance) {
            optima.push_back(std::move(set));
        }
    }
    std::sort(optima.begin(), optima.end());
    return optima;
}

bool exists_optimum_with(const Instance& instance,
                         const std::function<bool(std::span<const std::size_t>)>& predicate) {
    const auto optima = enumerate_optima(instance);
    return std::any_of(optima.begin(), optima.end(),
                       [&](const std::vector<std::size_t>& witness) {
                           return predicate(std::span<const std::size_t>(witness));
                       });
}

} // namespace remknap
