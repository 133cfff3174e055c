#include "remknap/policies.hpp"

#include "remknap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace remknap {

namespace {

struct ItemRef {
    std::size_t index;
    double size;
};

// Ascending-index summation, matching the runner's recomputation exactly, so
// a policy's feasibility check never disagrees with apply_step.
double exact_sum(std::vector<ItemRef> items) {
    std::sort(items.begin(), items.end(),
              [](const ItemRef& x, const ItemRef& y) { return x.index < y.index; });
    double sum = 0.0;
    for (const ItemRef& item : items) {
        sum += item.size;
    }
    return sum;
}

// Eviction order inside one pool: largest size first, later arrival first on ties.
template <typename SlotT>
void sort_for_eviction(std::vector<SlotT>& pool) {
    std::sort(pool.begin(), pool.end(), [](const SlotT& x, const SlotT& y) {
        if (x.size != y.size) {
            return x.size > y.size;
        }
        return x.index > y.index;
    });
}

double fit_limit() {
    return 1.0 + capacity_tolerance();
}

} // namespace

// ---------------------------------------------------------------------------
// sqrt2 size classes

namespace sqrt2 {
double a() { return 1.0 - 1.0 / std::sqrt(2.0); }
double b() { return std::sqrt(2.0) - 1.0; }
double c() { return 0.5; }
double d() { return 1.0 / std::sqrt(2.0); }
} // namespace sqrt2

Sqrt2Class classify_sqrt2(double size) {
    if (!(size > 0.0) || !(size <= 1.0)) {
        throw DomainError("classify_sqrt2 requires 0 < size <= 1");
    }
    if (size <= sqrt2::a()) {
        return Sqrt2Class::tiny;
    }
    if (size <= sqrt2::b()) {
        return Sqrt2Class::small;
    }
    if (size <= sqrt2::c()) {
        return Sqrt2Class::medium;
    }
    if (size <= sqrt2::d()) {
        return Sqrt2Class::big;
    }
    return Sqrt2Class::huge;
}

bool is_little(Sqrt2Class cls) {
    return cls == Sqrt2Class::small || cls == Sqrt2Class::medium;
}

bool is_large(Sqrt2Class cls) {
    return cls == Sqrt2Class::big || cls == Sqrt2Class::huge;
}

// ---------------------------------------------------------------------------
// PropPack class system

PropParams PropParams::from_internal(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw DomainError("PropPack requires eps > 0");
    }
    eps = std::min(eps, 0.5);

    PropParams params;
    params.guarantee_eps = eps / (1.0 - eps); // 1/(1-eps) = 1 + this
    params.eps = eps;

    const double base = 1.0 - eps / 2.0;
    const double half_eps = eps / 2.0;
    int k = static_cast<int>(std::ceil(std::log(half_eps) / std::log(base)));
    if (k < 1) {
        k = 1;
    }
    // Settle K against the powers actually used, so the defining inequalities
    // (1-eps/2)^K <= eps/2 < (1-eps/2)^{K-1} hold exactly in binary64.
    const auto power_of = [&](int exponent) {
        double value = 1.0;
        for (int i = 0; i < exponent; ++i) {
            value *= base;
        }
        return value;
    };
    while (power_of(k) > half_eps) {
        ++k;
    }
    while (k > 1 && power_of(k - 1) <= half_eps) {
        --k;
    }

    params.num_classes = k;
    params.power.resize(static_cast<std::size_t>(k) + 1);
    params.power[0] = 1.0;
    for (int i = 1; i <= k; ++i) {
        params.power[static_cast<std::size_t>(i)] =
            params.power[static_cast<std::size_t>(i) - 1] * base;
    }
    params.delta = params.power.back();
    return params;
}

PropParams PropParams::from_user(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw DomainError("PropPack requires eps > 0");
    }
    eps = std::min(eps, 0.5);
    PropParams params = from_internal(eps / (1.0 + eps));
    params.guarantee_eps = eps;
    return params;
}

int PropParams::classify(double size) const {
    if (!(size > 0.0) || !(size <= 1.0)) {
        throw DomainError("PropPack classification requires 0 < size <= 1");
    }
    if (size <= delta) {
        return 0;
    }
    for (int k = 1; k <= num_classes; ++k) {
        if (size > power[static_cast<std::size_t>(k)]) {
            return k;
        }
    }
    return num_classes; // unreachable: size > delta == power[K]
}

std::size_t PropParams::max_tuple_count() const {
    return static_cast<std::size_t>(std::ceil(1.0 / delta));
}

std::size_t PropParams::advice_bits_bound() const {
    const std::size_t m = max_tuple_count();
    return gamma_bit_length(m + 1) +
           m * static_cast<std::size_t>(class_field_width(num_classes));
}

int classify_proppack(double size, double eps) {
    return PropParams::from_internal(eps).classify(size);
}

// ---------------------------------------------------------------------------
// Greedy baseline

StepDecision GreedyPolicy::on_item(std::size_t /*index*/, double size,
                                   const Packing& packing) {
    StepDecision decision;
    // The new item has the highest index, so the runner's recomputed filling
    // is exactly packing.filling + size.
    decision.take_new = packing.filling + size <= fit_limit();
    return decision;
}

// ---------------------------------------------------------------------------
// Sqrt2Policy

void Sqrt2Policy::init(BitTape& tape) {
    strategy_one_ = tape.read();
}

void Sqrt2Policy::freeze(std::size_t index) {
    frozen_ = true;
    if (!frozen_at_) {
        frozen_at_ = index;
    }
}

std::vector<const Sqrt2Policy::Slot*> Sqrt2Policy::packed_items() const {
    std::vector<const Slot*> items;
    if (primary_big_) {
        items.push_back(&*primary_big_);
    }
    if (secondary_little_) {
        items.push_back(&*secondary_little_);
    }
    for (const Slot& slot : mediums_) {
        items.push_back(&slot);
    }
    for (const Slot& slot : smalls_) {
        items.push_back(&slot);
    }
    if (tertiary_big_) {
        items.push_back(&*tertiary_big_);
    }
    for (const Slot& slot : tinies_) {
        items.push_back(&slot);
    }
    return items;
}

StepDecision Sqrt2Policy::on_item(std::size_t index, double size, const Packing&) {
    if (frozen_ || size > 1.0) {
        return {};
    }
    return strategy_one_ ? step_one(index, size) : step_two(index, size);
}

StepDecision Sqrt2Policy::step_tiny(std::size_t index, double size) {
    std::vector<ItemRef> plan;
    for (const Slot* slot : packed_items()) {
        plan.push_back({slot->index, slot->size});
    }
    plan.push_back({index, size});
    if (exact_sum(std::move(plan)) <= fit_limit()) {
        tinies_.push_back({index, size});
        StepDecision decision;
        decision.take_new = true;
        return decision;
    }
    // A tiny item that does not fit freezes the knapsack for good.
    freeze(index);
    return {};
}

StepDecision Sqrt2Policy::step_one(std::size_t index, double size) {
    const double limit = fit_limit();
    const Sqrt2Class cls = classify_sqrt2(size);

    if (cls == Sqrt2Class::huge) {
        StepDecision decision;
        decision.take_new = true;
        for (const Slot* slot : packed_items()) {
            decision.removals.push_back(slot->index);
        }
        primary_big_.reset();
        secondary_little_.reset();
        tinies_.clear();
        primary_big_ = Slot{index, size}; // sole content from here on
        freeze(index);
        return decision;
    }

    if (cls == Sqrt2Class::tiny) {
        return step_tiny(index, size);
    }

    std::vector<Slot> removed;
    if (cls == Sqrt2Class::big) {
        if (primary_big_ && size >= primary_big_->size) {
            return {};
        }
        if (primary_big_) {
            removed.push_back(*primary_big_);
        }
        bool keep_little = secondary_little_.has_value();
        if (secondary_little_ && secondary_little_->size + size > limit) {
            // Slot conflict: the primary slot wins, the little item goes.
            removed.push_back(*secondary_little_);
            keep_little = false;
        }
        std::vector<Slot> kept_tinies = tinies_;
        sort_for_eviction(kept_tinies);
        const auto plan_total = [&]() {
            std::vector<ItemRef> plan{{index, size}};
            if (keep_little) {
                plan.push_back({secondary_little_->index, secondary_little_->size});
            }
            for (const Slot& slot : kept_tinies) {
                plan.push_back({slot.index, slot.size});
            }
            return exact_sum(std::move(plan));
        };
        while (plan_total() > limit && !kept_tinies.empty()) {
            removed.push_back(kept_tinies.front());
            kept_tinies.erase(kept_tinies.begin());
        }

        StepDecision decision;
        decision.take_new = true;
        for (const Slot& slot : removed) {
            decision.removals.push_back(slot.index);
        }
        primary_big_ = Slot{index, size};
        if (!keep_little) {
            secondary_little_.reset();
        }
        tinies_ = kept_tinies;
        const bool only_tiny =
            !removed.empty() && std::all_of(removed.begin(), removed.end(), [](const Slot& s) {
                return classify_sqrt2(s.size) == Sqrt2Class::tiny;
            });
        if (only_tiny) {
            freeze(index);
        }
        return decision;
    }

    // Little item: maintained in the secondary slot, primary slot wins conflicts.
    if (secondary_little_ && size >= secondary_little_->size) {
        return {};
    }
    if (primary_big_ && primary_big_->size + size > limit) {
        return {};
    }
    if (secondary_little_) {
        removed.push_back(*secondary_little_);
    }
    std::vector<Slot> kept_tinies = tinies_;
    sort_for_eviction(kept_tinies);
    const auto plan_total = [&]() {
        std::vector<ItemRef> plan{{index, size}};
        if (primary_big_) {
            plan.push_back({primary_big_->index, primary_big_->size});
        }
        for (const Slot& slot : kept_tinies) {
            plan.push_back({slot.index, slot.size});
        }
        return exact_sum(std::move(plan));
    };
    while (plan_total() > limit && !kept_tinies.empty()) {
        removed.push_back(kept_tinies.front());
        kept_tinies.erase(kept_tinies.begin());
    }
    if (plan_total() > limit) {
        return {};
    }

    StepDecision decision;
    decision.take_new = true;
    for (const Slot& slot : removed) {
        decision.removals.push_back(slot.index);
    }
    secondary_little_ = Slot{index, size};
    tinies_ = kept_tinies;
    const bool only_tiny =
        !removed.empty() && std::all_of(removed.begin(), removed.end(), [](const Slot& s) {
            return classify_sqrt2(s.size) == Sqrt2Class::tiny;
        });
    if (only_tiny) {
        freeze(index);
    }
    return decision;
}

StepDecision Sqrt2Policy::step_two(std::size_t index, double size) {
    const double limit = fit_limit();
    const Sqrt2Class cls = classify_sqrt2(size);

    if (cls == Sqrt2Class::huge) {
        return {};
    }
    if (cls == Sqrt2Class::tiny) {
        return step_tiny(index, size);
    }

    if (cls == Sqrt2Class::big) {
        // Exception: a big item that fits beside a packed small item is kept
        // with just that item, and the packing freezes.
        const Slot* mate = nullptr;
        for (const Slot& small : smalls_) {
            if (small.size + size <= limit &&
                (!mate || small.size < mate->size ||
                 (small.size == mate->size && small.index < mate->index))) {
                mate = &small;
            }
        }
        if (mate) {
            StepDecision decision;
            decision.take_new = true;
            for (const Slot* slot : packed_items()) {
                if (slot->index != mate->index) {
                    decision.removals.push_back(slot->index);
                }
            }
            const Slot kept_mate = *mate;
            mediums_.clear();
            tinies_.clear();
            tertiary_big_.reset();
            smalls_ = {kept_mate};
            tertiary_big_ = Slot{index, size};
            freeze(index);
            return decision;
        }

        if (tertiary_big_ && size >= tertiary_big_->size) {
            return {};
        }
        std::vector<Slot> removed;
        if (tertiary_big_) {
            removed.push_back(*tertiary_big_);
        }
        std::vector<Slot> kept_tinies = tinies_;
        sort_for_eviction(kept_tinies);
        const auto plan_total = [&]() {
            std::vector<ItemRef> plan{{index, size}};
            for (const Slot& slot : mediums_) {
                plan.push_back({slot.index, slot.size});
            }
            for (const Slot& slot : smalls_) {
                plan.push_back({slot.index, slot.size});
            }
            for (const Slot& slot : kept_tinies) {
                plan.push_back({slot.index, slot.size});
            }
            return exact_sum(std::move(plan));
        };
        while (plan_total() > limit && !kept_tinies.empty()) {
            removed.push_back(kept_tinies.front());
            kept_tinies.erase(kept_tinies.begin());
        }
        if (plan_total() > limit) {
            return {}; // higher-precedence slots are out of reach for a big item
        }
        StepDecision decision;
        decision.take_new = true;
        for (const Slot& slot : removed) {
            decision.removals.push_back(slot.index);
        }
        tertiary_big_ = Slot{index, size};
        tinies_ = kept_tinies;
        const bool only_tiny =
            !removed.empty() && std::all_of(removed.begin(), removed.end(), [](const Slot& s) {
                return classify_sqrt2(s.size) == Sqrt2Class::tiny;
            });
        if (only_tiny) {
            freeze(index);
        }
        return decision;
    }

    // Medium or small: multi-item slots maintaining minimal contents.
    std::vector<Slot>& pool = cls == Sqrt2Class::medium ? mediums_ : smalls_;
    const std::size_t slot_capacity = cls == Sqrt2Class::medium ? 2 : 3;
    const bool may_evict_smalls = cls == Sqrt2Class::medium;

    if (pool.size() < slot_capacity) {
        std::vector<Slot> removed;
        std::vector<Slot> kept_tinies = tinies_;
        std::vector<Slot> kept_smalls = smalls_;
        std::optional<Slot> kept_tertiary = tertiary_big_;
        sort_for_eviction(kept_tinies);
        sort_for_eviction(kept_smalls);
        const auto plan_total = [&]() {
            std::vector<ItemRef> plan{{index, size}};
            for (const Slot& slot : mediums_) {
                plan.push_back({slot.index, slot.size});
            }
            if (cls == Sqrt2Class::small) {
                for (const Slot& slot : pool) {
                    plan.push_back({slot.index, slot.size});
                }
            } else {
                for (const Slot& slot : kept_smalls) {
                    plan.push_back({slot.index, slot.size});
                }
            }
            if (kept_tertiary) {
                plan.push_back({kept_tertiary->index, kept_tertiary->size});
            }
            for (const Slot& slot : kept_tinies) {
                plan.push_back({slot.index, slot.size});
            }
            return exact_sum(std::move(plan));
        };
        // Eviction order: the tertiary big first (it is never part of the
        // filling this strategy is accountable for), then tiny items largest
        // first (an all-tiny removal freezes the run at filling >= 1-a),
        // and the small slot last, so that one small survives beside a
        // medium whenever b+c <= 1 allows it.
        while (plan_total() > limit) {
            if (kept_tertiary) {
                removed.push_back(*kept_tertiary);
                kept_tertiary.reset();
            } else if (!kept_tinies.empty()) {
                removed.push_back(kept_tinies.front());
                kept_tinies.erase(kept_tinies.begin());
            } else if (may_evict_smalls && !kept_smalls.empty()) {
                removed.push_back(kept_smalls.front());
                kept_smalls.erase(kept_smalls.begin());
            } else {
                break;
            }
        }
        if (plan_total() <= limit) {
            StepDecision decision;
            decision.take_new = true;
            for (const Slot& slot : removed) {
                decision.removals.push_back(slot.index);
            }
            pool.push_back({index, size});
            if (may_evict_smalls) {
                smalls_ = kept_smalls;
            }
            tertiary_big_ = kept_tertiary;
            tinies_ = kept_tinies;
            const bool only_tiny = !removed.empty() &&
                                   std::all_of(removed.begin(), removed.end(), [](const Slot& s) {
                                       return classify_sqrt2(s.size) == Sqrt2Class::tiny;
                                   });
            if (only_tiny) {
                freeze(index);
            }
            return decision;
        }
        // Fall through to minimal maintenance below.
    }

    auto largest = std::max_element(pool.begin(), pool.end(),
                                    [](const Slot& x, const Slot& y) {
                                        if (x.size != y.size) {
                                            return x.size < y.size;
                                        }
                                        return x.index < y.index;
                                    });
    if (largest != pool.end() && size < largest->size) {
        StepDecision decision;
        decision.take_new = true;
        decision.removals.push_back(largest->index);
        *largest = Slot{index, size};
        return decision;
    }
    return {};
}

// ---------------------------------------------------------------------------
// Half32Policy

void Half32Policy::init(BitTape& tape) {
    pair_mode_ = tape.read();
}

StepDecision Half32Policy::on_item(std::size_t index, double size, const Packing&) {
    if (frozen_ || size > 1.0) {
        return {};
    }
    const double limit = fit_limit();

    if (pair_mode_) {
        if (size < 1.0 / 3.0 || size > 2.0 / 3.0) {
            return {};
        }
        StepDecision decision;
        if (!interval_) {
            interval_ = Slot{index, size};
            decision.take_new = true;
            return decision;
        }
        if (interval_->size + size <= limit) {
            decision.take_new = true;
            frozen_ = true;
            frozen_at_ = index;
            return decision;
        }
        if (size < interval_->size) {
            decision.take_new = true;
            decision.removals.push_back(interval_->index);
            interval_ = Slot{index, size};
            return decision;
        }
        return {};
    }

    if (size >= 1.0 / 3.0) {
        if (large_ && size <= large_->size) {
            return {};
        }
        StepDecision decision;
        decision.take_new = true;
        if (large_) {
            decision.removals.push_back(large_->index);
        }
        std::vector<Slot> kept = smalls_;
        sort_for_eviction(kept);
        const auto plan_total = [&]() {
            std::vector<ItemRef> plan{{index, size}};
            for (const Slot& slot : kept) {
                plan.push_back({slot.index, slot.size});
            }
            return exact_sum(std::move(plan));
        };
        while (plan_total() > limit && !kept.empty()) {
            decision.removals.push_back(kept.front().index);
            kept.erase(kept.begin());
        }
        large_ = Slot{index, size};
        smalls_ = kept;
        return decision;
    }

    // Item below 1/3: pack greedily; on overflow discard sub-1/3 items one by
    // one, largest first, the new item included in the pool.
    std::vector<Slot> pool = smalls_;
    pool.push_back({index, size});
    sort_for_eviction(pool);
    std::vector<Slot> discarded;
    const auto plan_total = [&]() {
        std::vector<ItemRef> plan;
        if (large_) {
            plan.push_back({large_->index, large_->size});
        }
        for (const Slot& slot : pool) {
            plan.push_back({slot.index, slot.size});
        }
        return exact_sum(std::move(plan));
    };
    while (plan_total() > limit && !pool.empty()) {
        discarded.push_back(pool.front());
        pool.erase(pool.begin());
    }
    StepDecision decision;
    decision.take_new = true;
    for (const Slot& slot : discarded) {
        if (slot.index == index) {
            decision.take_new = false;
        } else {
            decision.removals.push_back(slot.index);
        }
    }
    smalls_ = pool;
    return decision;
}

// ---------------------------------------------------------------------------
// TwoBitPolicy

void TwoBitPolicy::init(BitTape& tape) {
    const int high = tape.read() ? 1 : 0;
    const int low = tape.read() ? 1 : 0;
    strategy_ = 2 * high + low + 1;
}

StepDecision TwoBitPolicy::on_item(std::size_t index, double size, const Packing&) {
    if (frozen_ || size > 1.0) {
        return {};
    }
    switch (strategy_) {
    case 1:
        return step_s1(index, size);
    case 2:
        return step_s2(index, size);
    case 3:
        return step_s3(index, size);
    default:
        return step_s4(index, size);
    }
}

StepDecision TwoBitPolicy::step_s1(std::size_t index, double size) {
    const double limit = fit_limit();

    if (size > 0.75) {
        StepDecision decision;
        decision.take_new = true;
        if (s1_medium_) {
            decision.removals.push_back(s1_medium_->index);
        }
        for (const Slot& slot : s1_smalls_) {
            decision.removals.push_back(slot.index);
        }
        s1_medium_ = Slot{index, size};
        s1_smalls_.clear();
        frozen_ = true;
        frozen_at_ = index;
        return decision;
    }

    if (size >= 0.25) {
        // Maintain one maximal medium.
        if (s1_medium_ && size <= s1_medium_->size) {
            return {};
        }
        StepDecision decision;
        decision.take_new = true;
        if (s1_medium_) {
            decision.removals.push_back(s1_medium_->index);
        }
        std::vector<Slot> kept = s1_smalls_;
        sort_for_eviction(kept);
        const auto plan_total = [&]() {
            std::vector<ItemRef> plan{{index, size}};
            for (const Slot& slot : kept) {
                plan.push_back({slot.index, slot.size});
            }
            return exact_sum(std::move(plan));
        };
        while (plan_total() > limit && !kept.empty()) {
            decision.removals.push_back(kept.front().index);
            kept.erase(kept.begin());
        }
        s1_medium_ = Slot{index, size};
        s1_smalls_ = kept;
        return decision;
    }

    // Smaller item: plain greedy.
    std::vector<ItemRef> plan{{index, size}};
    if (s1_medium_) {
        plan.push_back({s1_medium_->index, s1_medium_->size});
    }
    for (const Slot& slot : s1_smalls_) {
        plan.push_back({slot.index, slot.size});
    }
    if (exact_sum(std::move(plan)) <= limit) {
        s1_smalls_.push_back({index, size});
        StepDecision decision;
        decision.take_new = true;
        return decision;
    }
    return {};
}

StepDecision TwoBitPolicy::step_s2(std::size_t index, double size) {
    const double limit = fit_limit();
    if (size < 0.25 || size > 0.75) {
        return {};
    }

    if (static_cast<int>(s2_mediums_.size()) < s2_limit_) {
        std::vector<ItemRef> plan{{index, size}};
        for (const Slot& slot : s2_mediums_) {
            plan.push_back({slot.index, slot.size});
        }
        if (exact_sum(std::move(plan)) <= limit) {
            s2_mediums_.push_back({index, size});
            StepDecision decision;
            decision.take_new = true;
            return decision;
        }
        if (s2_mediums_.size() == 2) {
            s2_limit_ = 2; // a third medium failed to fit: two minimal from now on
        }
    }

    auto largest = std::max_element(s2_mediums_.begin(), s2_mediums_.end(),
                                    [](const Slot& x, const Slot& y) {
                                        if (x.size != y.size) {
                                            return x.size < y.size;
                                        }
                                        return x.index < y.index;
                                    });
    if (largest != s2_mediums_.end() && size < largest->size) {
        StepDecision decision;
        decision.take_new = true;
        decision.removals.push_back(largest->index);
        *largest = Slot{index, size};
        return decision;
    }
    return {};
}

StepDecision TwoBitPolicy::step_s3(std::size_t index, double size) {
    const double limit = fit_limit();

    if (size >= 0.25 && size <= 0.5) {
        StepDecision decision;
        std::vector<Slot> kept_pair = s3_pair_;
        if (kept_pair.size() >= 2) {
            auto smallest = std::min_element(kept_pair.begin(), kept_pair.end(),
                                             [](const Slot& x, const Slot& y) {
                                                 if (x.size != y.size) {
                                                     return x.size < y.size;
                                                 }
                                                 return x.index > y.index;
                                             });
            if (size <= smallest->size) {
                return {};
            }
            decision.removals.push_back(smallest->index);
            kept_pair.erase(smallest);
        }
        kept_pair.push_back({index, size});
        std::vector<Slot> kept = s3_smalls_;
        sort_for_eviction(kept);
        const auto plan_total = [&]() {
            std::vector<ItemRef> plan;
            for (const Slot& slot : kept_pair) {
                plan.push_back({slot.index, slot.size});
            }
            for (const Slot& slot : kept) {
                plan.push_back({slot.index, slot.size});
            }
            return exact_sum(std::move(plan));
        };
        while (plan_total() > limit && !kept.empty()) {
            decision.removals.push_back(kept.front().index);
            kept.erase(kept.begin());
        }
        decision.take_new = true;
        s3_pair_ = kept_pair;
        s3_smalls_ = kept;
        return decision;
    }

    if (size < 0.25) {
        std::vector<ItemRef> plan{{index, size}};
        for (const Slot& slot : s3_pair_) {
            plan.push_back({slot.index, slot.size});
        }
        for (const Slot& slot : s3_smalls_) {
            plan.push_back({slot.index, slot.size});
        }
        if (exact_sum(std::move(plan)) <= limit) {
            s3_smalls_.push_back({index, size});
            StepDecision decision;
            decision.take_new = true;
            return decision;
        }
    }
    return {};
}

StepDecision TwoBitPolicy::step_s4(std::size_t index, double size) {
    const double limit = fit_limit();

    if (size > 0.5 && size <= 0.75) {
        if (s4_high_ && size >= s4_high_->size) {
            return {};
        }
        StepDecision decision;
        decision.take_new = true;
        if (s4_high_) {
            decision.removals.push_back(s4_high_->index);
        }
        if (s4_low_ && s4_low_->size + size > limit) {
            decision.removals.push_back(s4_low_->index); // the high slot wins
            s4_low_.reset();
        }
        s4_high_ = Slot{index, size};
        return decision;
    }

    if (size >= 0.25 && size <= 0.5) {
        if (s4_low_ && size >= s4_low_->size) {
            return {};
        }
        if (s4_high_ && s4_high_->size + size > limit) {
            return {}; // does not fit beside the high item right now
        }
        StepDecision decision;
        decision.take_new = true;
        if (s4_low_) {
            decision.removals.push_back(s4_low_->index);
        }
        s4_low_ = Slot{index, size};
        return decision;
    }
    return {};
}

// ---------------------------------------------------------------------------
// PropPackPolicy

PropPackPolicy::PropPackPolicy(PropParams params) : params_(std::move(params)) {}

void PropPackPolicy::init(BitTape& tape) {
    advice_ = decode_class_tuple(tape, params_.num_classes);
}

StepDecision PropPackPolicy::on_item(std::size_t index, double size, const Packing&) {
    if (size > 1.0) {
        return {};
    }
    const double limit = fit_limit();
    const int cls = params_.classify(size);

    if (cls == 0) {
        std::vector<ItemRef> plan{{index, size}};
        for (const Slot& slot : bigs_) {
            plan.push_back({slot.index, slot.size});
        }
        for (const Slot& slot : smalls_) {
            plan.push_back({slot.index, slot.size});
        }
        if (exact_sum(std::move(plan)) <= limit) {
            smalls_.push_back({index, size, 0});
            StepDecision decision;
            decision.take_new = true;
            return decision;
        }
        return {};
    }

    const int awaited =
        next_phase_ < advice_.count() ? advice_.classes[next_phase_] : 0;

    std::vector<ItemRef> big_plan{{index, size}};
    for (const Slot& slot : bigs_) {
        big_plan.push_back({slot.index, slot.size});
    }
    if (cls == awaited && exact_sum(std::move(big_plan)) <= limit) {
        // Phase completes: pop small items, largest first, until it fits.
        StepDecision decision;
        decision.take_new = true;
        std::vector<Slot> kept = smalls_;
        sort_for_eviction(kept);
        const auto plan_total = [&]() {
            std::vector<ItemRef> plan{{index, size}};
            for (const Slot& slot : bigs_) {
                plan.push_back({slot.index, slot.size});
            }
            for (const Slot& slot : kept) {
                plan.push_back({slot.index, slot.size});
            }
            return exact_sum(std::move(plan));
        };
        while (plan_total() > limit && !kept.empty()) {
            decision.removals.push_back(kept.front().index);
            kept.erase(kept.begin());
        }
        smalls_ = kept;
        bigs_.push_back({index, size, cls});
        phase_classes_.push_back(cls);
        ++next_phase_;
        return decision;
    }

    // Replacement: among the new item and the packed big items of its class,
    // the largest one goes.
    Slot* victim = nullptr;
    for (Slot& slot : bigs_) {
        if (slot.cls == cls &&
            (!victim || slot.size > victim->size ||
             (slot.size == victim->size && slot.index > victim->index))) {
            victim = &slot;
        }
    }
    if (victim && victim->size > size) {
        StepDecision decision;
        decision.take_new = true;
        decision.removals.push_back(victim->index);
        *victim = Slot{index, size, cls};
        return decision;
    }
    return {};
}

} // namespace remknap
