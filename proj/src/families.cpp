#include "remknap/families.hpp"

#include "remknap/errors.hpp"
#include "remknap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace remknap {

namespace {

std::string short_real(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

void check_generated_sizes(const std::vector<Instance>& instances) {
    for (const Instance& instance : instances) {
        for (double size : instance.sizes) {
            if (!(size >= kGeneratorMargin)) {
                throw DomainError("instance '" + instance.name +
                                  "': generated size below the 1e-6 margin");
            }
        }
    }
}

} // namespace

double psi() {
    return (std::sqrt(17.0) - 1.0) / 4.0;
}

double zeta(int k) {
    if (k < 2) {
        throw DomainError("zeta(k) requires an integer k >= 2");
    }
    const double kd = static_cast<double>(k);
    return (3.0 - 2.0 * kd + std::sqrt(4.0 * kd * (kd + 1.0) - 7.0)) / 4.0;
}

std::vector<Instance> gen_one_bit(double eps) {
    const double p = psi();
    if (!(eps >= kGeneratorMargin && eps <= p - kGeneratorMargin)) {
        throw DomainError("gen_one_bit requires eps in [1e-6, psi-1e-6], got " +
                          short_real(eps));
    }
    const double p2 = p * p;
    const double x1 = p;
    const double x2 = p2;
    const double x3 = 1.0 - p2 + eps;
    const double y2 = 1.0 - p2;
    const double y3 = p2 - eps;

    const std::string stem = "onebit-e" + short_real(eps) + "-I";
    std::vector<Instance> family = {
        {stem + "1", 1.0, {x1, x2, x3}},
        {stem + "2", 1.0, {x1, x2, x3, y2}},
        {stem + "3", 1.0, {x1, x2, x3, y3}},
    };
    check_generated_sizes(family);
    return family;
}

std::vector<Instance> gen_log_k(int k, double eps) {
    if (k < 2) {
        throw DomainError("gen_log_k requires an integer k >= 2");
    }
    const double z = zeta(k);
    if (!(eps >= kGeneratorMargin && eps <= 1.0 - z - kGeneratorMargin)) {
        throw DomainError("gen_log_k requires eps in [1e-6, 1-zeta(k)-1e-6], got " +
                          short_real(eps));
    }

    std::vector<double> prefix;
    prefix.push_back(z);
    for (int i = 2; i <= k; ++i) {
        prefix.push_back(z * z - static_cast<double>(i - 2) * (1.0 - z));
    }
    prefix.push_back(z * z - static_cast<double>(k - 1) * (1.0 - z) + eps);

    const std::string stem = "logk" + std::to_string(k) + "-e" + short_real(eps) + "-I";
    std::vector<Instance> family;
    family.push_back({stem + "1", 1.0, prefix});
    for (int i = 2; i <= k + 1; ++i) {
        std::vector<double> sizes = prefix;
        sizes.push_back(1.0 - prefix[static_cast<std::size_t>(i) - 1]);
        family.push_back({stem + std::to_string(i), 1.0, std::move(sizes)});
    }
    check_generated_sizes(family);
    return family;
}

Instance gen_optimality(int m, int k, const std::vector<int>& subset,
                        OptimalityVariant variant) {
    if (m < 1 || k < 0) {
        throw DomainError("gen_optimality requires m >= 1 and k >= 0");
    }
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("gen_optimality: subset indices must be distinct");
    }
    for (int j : sorted) {
        if (j < 1 || j > m) {
            throw DomainError("gen_optimality: subset indices must lie in 1..m");
        }
    }
    const int cardinality = static_cast<int>(sorted.size());
    if (cardinality < k || cardinality > m - k) {
        throw DomainError("gen_optimality requires k <= |S| <= m-k");
    }

    Instance instance;
    instance.capacity = 5.0 * m + 1.0;
    for (int i = -k; i <= k; ++i) {
        instance.sizes.push_back(4.0 * m + i);
    }
    for (int j = 1; j <= m; ++j) {
        instance.sizes.push_back(1.0 + std::ldexp(1.0, -j));
    }
    double subset_fraction = 0.0;
    for (int j : sorted) {
        subset_fraction += std::ldexp(1.0, -j);
    }
    const double final_item = variant == OptimalityVariant::literal
                                  ? 1.0 - subset_fraction
                                  : m + 1.0 - cardinality - subset_fraction;
    if (!(final_item > 0.0)) {
        throw DomainError("gen_optimality: final item size is not positive");
    }
    instance.sizes.push_back(final_item);

    std::string name = "opt-m" + std::to_string(m) + "-k" + std::to_string(k) + "-S";
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        name += (i ? "." : "") + std::to_string(sorted[i]);
    }
    if (sorted.empty()) {
        name += "none";
    }
    name += variant == OptimalityVariant::literal ? "-literal" : "-repaired";
    instance.name = std::move(name);
    return instance;
}

double advice_requirement(int m, int k) {
    if (m < 0 || k < 0 || 2 * k > m) {
        throw DomainError("advice_requirement requires 0 <= k <= m/2");
    }
    if (m > 126) {
        throw TooLarge("advice_requirement: binomial sums are exact only up to m = 126");
    }
    // Pascal-row additions: entries stay below 2^127 through m = 126, which
    // the multiplicative recurrence would not (its intermediate products
    // overflow near the central binomials).
    using Wide = unsigned __int128;
    std::vector<Wide> row(static_cast<std::size_t>(m) + 1, 0);
    row[0] = 1;
    for (int r = 1; r <= m; ++r) {
        for (int i = r; i >= 1; --i) {
            row[static_cast<std::size_t>(i)] += row[static_cast<std::size_t>(i) - 1];
        }
    }
    Wide sum = 0;
    for (int i = k; i <= m - k; ++i) {
        sum += row[static_cast<std::size_t>(i)];
    }
    const double high = static_cast<double>(static_cast<std::uint64_t>(sum >> 64));
    const double low = static_cast<double>(static_cast<std::uint64_t>(sum));
    return std::log2(std::ldexp(high, 64) + low);
}

Instance gen_uniform(std::size_t n, std::uint64_t seed) {
    Instance instance;
    instance.name = "uniform-n" + std::to_string(n) + "-s" + std::to_string(seed);
    instance.capacity = 1.0;
    instance.sizes.reserve(n);
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        instance.sizes.push_back(rng.next_unit());
    }
    return instance;
}

} // namespace remknap
