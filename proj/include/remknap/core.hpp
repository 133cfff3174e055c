#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace remknap {

class BitTape;

// Absolute slack allowed on every capacity comparison, there to absorb
// summation rounding. Hard-instance generators keep all real margins at
// 1e-6 or more, so the slack can never flip an intended feasibility.
double capacity_tolerance();
void set_capacity_tolerance(double eta);

enum class ExecMode { serial, parallel };

struct Instance {
    std::string name;
    double capacity = 1.0;
    std::vector<double> sizes; // arrival order; indices are 0-based throughout

    std::size_t item_count() const { return sizes.size(); }
};

// Throws DomainError unless the capacity and every size are positive and finite.
void validate_instance(const Instance& instance);

// Rescales so that the capacity is 1. Item order is unchanged.
Instance normalize(const Instance& instance);

struct Packing {
    std::vector<std::size_t> members; // sorted ascending
    double filling = 0.0;

    bool contains(std::size_t index) const;
};

// Exact filling of a member set: sizes summed in ascending index order.
// Every filling in the library is produced by this one function so that
// equal sets always yield bit-identical sums.
double exact_filling(std::span<const std::size_t> members, std::span<const double> sizes);

struct StepDecision {
    std::vector<std::size_t> removals;
    bool take_new = false;
};

struct RunRecord {
    std::vector<Packing> trace; // one snapshot per presented item
    double final_gain = 0.0;
    std::size_t advice_bits_read = 0;
    std::optional<std::size_t> frozen_at; // step at which the policy froze, if any
};

// Deterministic per-item decision maker. One object serves one run; the
// runner calls init once and then on_item for every item in arrival order.
// The policy sees only the items presented so far.
class OnlinePolicy {
public:
    virtual ~OnlinePolicy() = default;

    virtual void init(BitTape& /*tape*/) {}
    virtual StepDecision on_item(std::size_t index, double size, const Packing& packing) = 0;
    virtual std::optional<std::size_t> frozen_at() const { return std::nullopt; }
};

// Applies one decision and returns the next packing, whose filling is
// recomputed from scratch. Throws RuleViolation if a removal names a
// non-member or the new filling exceeds capacity plus tolerance.
Packing apply_step(const Packing& packing, const StepDecision& decision,
                   std::size_t item_index, std::span<const double> sizes,
                   double capacity);

// Plays the instance through the policy. Instances with capacity != 1 are
// normalized internally first.
RunRecord run(OnlinePolicy& policy, const Instance& instance, BitTape& tape);

// opt/alg. Returns +infinity when alg == 0 < opt and 1 when both are zero.
// Throws DomainError if alg exceeds opt beyond tolerance (a broken oracle).
double performance(double opt_gain, double alg_gain);

} // namespace remknap
