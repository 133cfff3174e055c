#pragma once

#include "remknap/core.hpp"
#include "remknap/policies.hpp"
#include "remknap/tape.hpp"

#include <memory>
#include <string_view>

namespace remknap {

// All advice oracles enumerate optima and are gated at this many items.
inline constexpr std::size_t kMaxOracleItems = 24;

// One bit, 1 = Strategy One. Strategy One is chosen when the deterministic
// optimal witness holds a large item, except that on instances with no huge
// item but a little and a big item fitting together, the choice follows
// whether the first minimal big item precedes the first minimal little item.
bool oracle_sqrt2(const Instance& normalized);

// One bit, 1 = some optimum holds at least two items from [1/3, 2/3].
bool oracle_half(const Instance& normalized);

// Strategy 1..4: the strategy attaining the best gain on the full instance,
// the lowest index on ties.
int oracle_twobit(const Instance& normalized);

// Class tuple of the big items of the deterministic optimal witness, in
// order of appearance, together with those items.
struct PropAdvice {
    ClassTuple tuple;
    std::vector<std::size_t> big_items; // indices into the instance, ascending
};
PropAdvice oracle_proppack(const Instance& normalized, const PropParams& params);

// ---------------------------------------------------------------------------
// Registry used by the batch evaluator and the command line.

enum class AlgorithmId { greedy, half32, sqrt2, twobit, proppack };

std::optional<AlgorithmId> algorithm_from_name(std::string_view name);
std::string_view algorithm_name(AlgorithmId id);

// Advice tape for one instance; params is required for proppack only.
BitTape compute_advice(AlgorithmId id, const Instance& normalized,
                       const PropParams* params);
std::unique_ptr<OnlinePolicy> make_policy(AlgorithmId id, const PropParams* params);

} // namespace remknap
