#include "remknap/core.hpp"

#include "remknap/errors.hpp"
#include "remknap/tape.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

namespace remknap {

namespace {

std::atomic<double> g_capacity_tolerance{1e-9};

} // namespace

double capacity_tolerance() {
    return g_capacity_tolerance.load(std::memory_order_relaxed);
}

void set_capacity_tolerance(double eta) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
        throw DomainError("capacity tolerance must be finite and nonnegative");
    }
    g_capacity_tolerance.store(eta, std::memory_order_relaxed);
}

void validate_instance(const Instance& instance) {
    if (!(instance.capacity > 0.0) || !std::isfinite(instance.capacity)) {
        throw DomainError("instance '" + instance.name + "': capacity must be positive and finite");
    }
    for (double size : instance.sizes) {
        if (!(size > 0.0) || !std::isfinite(size)) {
            throw DomainError("instance '" + instance.name + "': item sizes must be positive and finite");
        }
    }
}

Instance normalize(const Instance& instance) {
    validate_instance(instance);
    if (instance.capacity == 1.0) {
        return instance;
    }
    Instance result = instance;
    result.capacity = 1.0;
    for (double& size : result.sizes) {
        size /= instance.capacity;
    }
    return result;
}

bool Packing::contains(std::size_t index) const {
    return std::binary_search(members.begin(), members.end(), index);
}

double exact_filling(std::span<const std::size_t> members, std::span<const double> sizes) {
    double sum = 0.0;
    for (std::size_t index : members) {
        sum += sizes[index];
    }
    return sum;
}

Packing apply_step(const Packing& packing, const StepDecision& decision,
                   std::size_t item_index, std::span<const double> sizes,
                   double capacity) {
    for (std::size_t index : decision.removals) {
        if (!packing.contains(index)) {
            throw RuleViolation("removal of item " + std::to_string(index) +
                                " which is not packed");
        }
    }

    Packing next;
    next.members.reserve(packing.members.size() + 1);
    for (std::size_t index : packing.members) {
        if (std::find(decision.removals.begin(), decision.removals.end(), index) ==
            decision.removals.end()) {
            next.members.push_back(index);
        }
    }
    if (decision.take_new) {
        next.members.push_back(item_index);
    }
    std::sort(next.members.begin(), next.members.end());

    next.filling = exact_filling(next.members, sizes);
    if (next.filling > capacity + capacity_tolerance()) {
        throw RuleViolation("filling " + std::to_string(next.filling) +
                            " exceeds capacity at item " + std::to_string(item_index));
    }
    return next;
}

RunRecord run(OnlinePolicy& policy, const Instance& instance, BitTape& tape) {
    Instance normalized = normalize(instance);

    policy.init(tape);

    RunRecord record;
    record.trace.reserve(normalized.sizes.size());

    Packing packing;
    for (std::size_t i = 0; i < normalized.sizes.size(); ++i) {
        StepDecision decision = policy.on_item(i, normalized.sizes[i], packing);
        packing = apply_step(packing, decision, i, normalized.sizes, normalized.capacity);
        record.trace.push_back(packing);
    }

    record.final_gain = packing.filling;
    record.advice_bits_read = tape.cursor();
    record.frozen_at = policy.frozen_at();
    return record;
}

double performance(double opt_gain, double alg_gain) {
    if (alg_gain > opt_gain + capacity_tolerance()) {
        throw DomainError("algorithm gain exceeds optimal gain");
    }
    if (alg_gain <= 0.0) {
        return opt_gain > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    return opt_gain / alg_gain;
}

} // namespace remknap
