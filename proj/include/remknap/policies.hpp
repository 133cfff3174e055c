#pragma once

#include "remknap/core.hpp"
#include "remknap/tape.hpp"

#include <optional>

namespace remknap {

// ---------------------------------------------------------------------------
// Size classes of the one-bit sqrt(2) algorithm.

enum class Sqrt2Class { tiny, small, medium, big, huge };

namespace sqrt2 {
// Interval ends of the five classes (0,a], (a,b], (b,c], (c,d], (d,1].
double a(); // 1 - 1/sqrt(2)
double b(); // sqrt(2) - 1
double c(); // 1/2
double d(); // 1/sqrt(2)
} // namespace sqrt2

Sqrt2Class classify_sqrt2(double size); // requires 0 < size <= 1
bool is_little(Sqrt2Class cls);         // small or medium
bool is_large(Sqrt2Class cls);          // big or huge

// ---------------------------------------------------------------------------
// PropPack size classes: class 0 holds sizes <= delta with
// delta = (1-eps/2)^K; class k holds ((1-eps/2)^k, (1-eps/2)^{k-1}].

struct PropParams {
    double guarantee_eps = 0.0; // advertised bound: ratio <= 1 + guarantee_eps
    double eps = 0.0;           // epsilon of the class system in use
    int num_classes = 0;        // K = ceil(log_{1-eps/2}(eps/2))
    double delta = 0.0;         // (1-eps/2)^K
    std::vector<double> power;  // power[k] = (1-eps/2)^k for k = 0..K

    // Class system for the given epsilon, clamped into (0, 1/2].
    static PropParams from_internal(double eps);
    // Class system at eps/(1+eps), so that the worst-case ratio
    // 1/(1-internal_eps) equals 1+eps exactly.
    static PropParams from_user(double eps);

    int classify(double size) const; // requires 0 < size <= 1
    std::size_t max_tuple_count() const;   // ceil(1/delta), bound on m
    std::size_t advice_bits_bound() const; // B: worst encoded tuple length
};

int classify_proppack(double size, double eps); // from_internal(eps) system

// ---------------------------------------------------------------------------
// Policies. One object serves one run.

// Packs an item iff it fits; never removes. Zero advice.
class GreedyPolicy : public OnlinePolicy {
public:
    StepDecision on_item(std::size_t index, double size, const Packing& packing) override;
};

// One advice bit (1 = Strategy One). Strategy One freezes on the first huge
// item and otherwise keeps the minimal big and minimal little item seen;
// Strategy Two keeps up to two minimal mediums, three minimal smalls and one
// minimal big. Tiny items are packed greedily under the shared freeze rules.
class Sqrt2Policy : public OnlinePolicy {
public:
    void init(BitTape& tape) override;
    StepDecision on_item(std::size_t index, double size, const Packing& packing) override;
    std::optional<std::size_t> frozen_at() const override { return frozen_at_; }
    bool strategy_one() const { return strategy_one_; }

private:
    struct Slot {
        std::size_t index;
        double size;
    };

    StepDecision step_one(std::size_t index, double size);
    StepDecision step_two(std::size_t index, double size);
    StepDecision step_tiny(std::size_t index, double size);

    std::vector<const Slot*> packed_items() const;
    void freeze(std::size_t index);

    bool strategy_one_ = false;
    bool frozen_ = false;
    std::optional<std::size_t> frozen_at_;

    // Strategy One slots.
    std::optional<Slot> primary_big_;
    std::optional<Slot> secondary_little_;
    // Strategy Two slots.
    std::vector<Slot> mediums_; // at most two, minimal
    std::vector<Slot> smalls_;  // at most three, minimal
    std::optional<Slot> tertiary_big_;
    // Both strategies.
    std::vector<Slot> tinies_;
};

// One advice bit, 3/2-competitive. Bit 1: some optimum holds two or more
// items from [1/3, 2/3]; keep the smallest such item until a second fits,
// then freeze. Bit 0: keep the largest item of size >= 1/3 while packing
// smaller items greedily, discarding them largest-first on overflow.
class Half32Policy : public OnlinePolicy {
public:
    void init(BitTape& tape) override;
    StepDecision on_item(std::size_t index, double size, const Packing& packing) override;
    std::optional<std::size_t> frozen_at() const override { return frozen_at_; }
    bool pair_mode() const { return pair_mode_; }

private:
    struct Slot {
        std::size_t index;
        double size;
    };

    bool pair_mode_ = false;
    bool frozen_ = false;
    std::optional<std::size_t> frozen_at_;

    std::optional<Slot> interval_; // pair mode: minimal item in [1/3, 2/3]
    std::optional<Slot> large_;    // single mode: maximal item >= 1/3
    std::vector<Slot> smalls_;     // single mode: greedy items < 1/3
};

// Two advice bits selecting one of four strategies over the medium size
// interval [1/4, 3/4]; 4/3-competitive.
class TwoBitPolicy : public OnlinePolicy {
public:
    void init(BitTape& tape) override;
    StepDecision on_item(std::size_t index, double size, const Packing& packing) override;
    std::optional<std::size_t> frozen_at() const override { return frozen_at_; }
    int strategy() const { return strategy_; }

private:
    struct Slot {
        std::size_t index;
        double size;
    };

    StepDecision step_s1(std::size_t index, double size);
    StepDecision step_s2(std::size_t index, double size);
    StepDecision step_s3(std::size_t index, double size);
    StepDecision step_s4(std::size_t index, double size);

    int strategy_ = 1;
    bool frozen_ = false;
    std::optional<std::size_t> frozen_at_;

    std::optional<Slot> s1_medium_; // maximal medium
    std::vector<Slot> s1_smalls_;   // greedy items < 1/4

    std::vector<Slot> s2_mediums_; // minimal mediums
    int s2_limit_ = 3;             // drops to 2 once a third medium fails to fit

    std::vector<Slot> s3_pair_;   // up to two maximal items from [1/4, 1/2]
    std::vector<Slot> s3_smalls_; // greedy items < 1/4

    std::optional<Slot> s4_low_;  // minimal item in [1/4, 1/2]
    std::optional<Slot> s4_high_; // minimal item in (1/2, 3/4]; takes precedence
};

// Constant-advice (1+eps)-competitive policy. The tape carries the class
// tuple of the big items of the chosen optimal solution; the policy fills
// one slot per tuple entry in order, keeps slot items minimal within their
// class, and packs small items greedily, popping them largest-first to make
// room for big packs.
class PropPackPolicy : public OnlinePolicy {
public:
    explicit PropPackPolicy(PropParams params);

    void init(BitTape& tape) override; // decodes the class tuple
    StepDecision on_item(std::size_t index, double size, const Packing& packing) override;

    const PropParams& params() const { return params_; }
    const ClassTuple& advice() const { return advice_; }
    std::size_t phases_completed() const { return phase_classes_.size(); }
    const std::vector<int>& phase_classes() const { return phase_classes_; }

private:
    struct Slot {
        std::size_t index;
        double size;
        int cls;
    };

    PropParams params_;
    ClassTuple advice_;
    std::size_t next_phase_ = 0;
    std::vector<Slot> bigs_;
    std::vector<Slot> smalls_;
    std::vector<int> phase_classes_;
};

} // namespace remknap
