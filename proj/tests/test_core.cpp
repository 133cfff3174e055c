#include "remknap/core.hpp"
#include "remknap/errors.hpp"
#include "remknap/families.hpp"
#include "remknap/policies.hpp"
#include "remknap/tape.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace remknap;
using namespace remknap::test;

TEST_CASE("normalize keeps unit instances and rescales others") {
    const Instance unit = make_instance({0.5, 0.3});
    const Instance same = normalize(unit);
    CHECK(same.capacity == 1.0);
    CHECK(same.sizes == std::vector<double>{0.5, 0.3});

    const Instance halved = normalize(make_instance({1.0, 0.5}, 2.0));
    CHECK(halved.capacity == 1.0);
    CHECK(halved.sizes == std::vector<double>{0.5, 0.25});
}

TEST_CASE("normalize matches the optimality generator's big item") {
    const Instance family = gen_optimality(12, 0, {1, 2});
    CHECK(family.capacity == 61.0);
    CHECK(family.sizes[0] == 48.0);
    const Instance scaled = normalize(family);
    CHECK(scaled.sizes[0] == 48.0 / 61.0);
    CHECK(near(scaled.sizes[0], 0.786885, 1e-6));
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(validate_instance(make_instance({0.4, 0.0})), DomainError);
    CHECK_THROWS_AS(validate_instance(make_instance({-0.1})), DomainError);
    CHECK_THROWS_AS(validate_instance(make_instance({0.4}, 0.0)), DomainError);
}

TEST_CASE("apply_step packs, swaps and enforces the rules") {
    const std::vector<double> sizes = {0.4, 0.9, 0.6};
    Packing empty;

    const Packing first = apply_step(empty, {{}, true}, 0, sizes, 1.0);
    CHECK(first.members == std::vector<std::size_t>{0});
    CHECK(first.filling == 0.4);

    const Packing swapped = apply_step(first, {{0}, true}, 1, sizes, 1.0);
    CHECK(swapped.members == std::vector<std::size_t>{1});
    CHECK(swapped.filling == 0.9);

    const std::vector<double> clash = {0.6, 0.6};
    const Packing base = apply_step(empty, {{}, true}, 0, clash, 1.0);
    CHECK_THROWS_AS(apply_step(base, {{}, true}, 1, clash, 1.0), RuleViolation);
    CHECK_THROWS_AS(apply_step(base, {{5}, false}, 1, clash, 1.0), RuleViolation);
}

TEST_CASE("greedy run over two fitting items") {
    GreedyPolicy greedy;
    BitTape tape;
    const RunRecord record = run(greedy, make_instance({0.4, 0.5}), tape);
    CHECK(record.final_gain == 0.9);
    CHECK(record.advice_bits_read == 0);
    CHECK(record.trace.size() == 2);
    CHECK(record.trace[1].members == std::vector<std::size_t>{0, 1});
}

TEST_CASE("run on the empty instance") {
    GreedyPolicy greedy;
    BitTape tape;
    const RunRecord record = run(greedy, make_instance({}), tape);
    CHECK(record.final_gain == 0.0);
    CHECK(record.trace.empty());
}

TEST_CASE("sqrt2 on the third one-bit instance freezes the huge first item") {
    const auto family = gen_one_bit(0.01);
    const RunRecord record = run_with_oracle(AlgorithmId::sqrt2, family[2]);
    CHECK(near(record.final_gain, psi(), 1e-12));
    CHECK(near(record.final_gain, 0.780776, 1e-6));
    CHECK(record.advice_bits_read == 1);
    CHECK(record.frozen_at == std::size_t{0});
}

TEST_CASE("oversized items are presented but a take is a violation") {
    const Instance instance = make_instance({1.5, 0.5});

    GreedyPolicy greedy;
    BitTape tape;
    const RunRecord record = run(greedy, instance, tape);
    CHECK(record.final_gain == 0.5);

    ScriptedPolicy take_everything({{{}, true}, {{}, true}});
    BitTape other;
    CHECK_THROWS_AS(run(take_everything, instance, other), RuleViolation);
}

TEST_CASE("advice exhaustion surfaces from the runner") {
    Sqrt2Policy policy;
    BitTape empty;
    CHECK_THROWS_AS(run(policy, make_instance({0.5}), empty), AdviceExhausted);
}

TEST_CASE("performance ratios") {
    CHECK(performance(1.0, 0.5) == 2.0);
    const double p = psi();
    CHECK(near(performance(p, p * p), 1.0 / p, 1e-12));
    CHECK(near(performance(p, p * p), 1.280776, 1e-6));
    CHECK(performance(0.7, 0.0) == std::numeric_limits<double>::infinity());
    CHECK(performance(0.0, 0.0) == 1.0);
    CHECK_THROWS_AS(performance(0.5, 0.6), DomainError);
}

TEST_CASE("capacity tolerance is configurable") {
    const double saved = capacity_tolerance();
    set_capacity_tolerance(1e-6);
    CHECK(capacity_tolerance() == 1e-6);
    set_capacity_tolerance(saved);
    CHECK_THROWS_AS(set_capacity_tolerance(-1.0), DomainError);
}

namespace {

void check_run_invariants(const Instance& instance, const RunRecord& record) {
    const Instance normalized = normalize(instance);
    std::vector<std::size_t> previous;
    for (std::size_t i = 0; i < record.trace.size(); ++i) {
        const Packing& packing = record.trace[i];
        // members_i lies inside members_{i-1} plus the new item
        for (std::size_t member : packing.members) {
            const bool carried =
                std::find(previous.begin(), previous.end(), member) != previous.end();
            CHECK((carried || member == i));
        }
        CHECK(packing.filling <= 1.0 + capacity_tolerance());
        CHECK(packing.filling ==
              exact_filling(packing.members, normalized.sizes));
        previous = packing.members;
    }
    // once removed, never repacked
    std::vector<bool> seen(record.trace.size(), false);
    std::vector<bool> gone(record.trace.size(), false);
    previous.clear();
    for (const Packing& packing : record.trace) {
        for (std::size_t member : packing.members) {
            CHECK(!gone[member]);
            seen[member] = true;
        }
        for (std::size_t member : previous) {
            if (!packing.contains(member)) {
                gone[member] = true;
            }
        }
        previous = packing.members;
    }
}

} // namespace

TEST_CASE("identical advice and identical prefixes give identical decisions") {
    // the one-bit family shares a three-item prefix
    const auto family = gen_one_bit(0.01);
    for (const char* bits : {"1", "0"}) {
        Sqrt2Policy on_second;
        Sqrt2Policy on_third;
        const RunRecord second = run_with_tape(family[1], bits, on_second);
        const RunRecord third = run_with_tape(family[2], bits, on_third);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(second.trace[i].members == third.trace[i].members);
            CHECK(second.trace[i].filling == third.trace[i].filling);
        }
    }
}

TEST_CASE("runner invariants and replay determinism across policies") {
    const auto corpus = uniform_corpus(60, 12, 0xBEEF);
    for (const Instance& instance : corpus) {
        for (AlgorithmId id : {AlgorithmId::greedy, AlgorithmId::half32,
                               AlgorithmId::sqrt2, AlgorithmId::twobit,
                               AlgorithmId::proppack}) {
            const std::optional<double> eps =
                id == AlgorithmId::proppack ? std::optional<double>(0.25) : std::nullopt;
            const RunRecord first = run_with_oracle(id, instance, eps);
            const RunRecord second = run_with_oracle(id, instance, eps);
            check_run_invariants(instance, first);
            REQUIRE(first.trace.size() == second.trace.size());
            for (std::size_t i = 0; i < first.trace.size(); ++i) {
                CHECK(first.trace[i].members == second.trace[i].members);
                CHECK(first.trace[i].filling == second.trace[i].filling);
            }
            CHECK(first.advice_bits_read == second.advice_bits_read);
        }
    }
}
