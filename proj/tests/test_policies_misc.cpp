#include "remknap/errors.hpp"
#include "remknap/offline.hpp"
#include "remknap/oracles.hpp"
#include "remknap/policies.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace remknap;
using namespace remknap::test;

TEST_CASE("greedy baseline") {
    GreedyPolicy a;
    BitTape t1;
    CHECK(run(a, make_instance({0.6, 0.5}), t1).final_gain == 0.6);

    GreedyPolicy b;
    BitTape t2;
    CHECK(run(b, make_instance({0.5, 0.5}), t2).final_gain == 1.0);

    GreedyPolicy c;
    BitTape t3;
    CHECK(run(c, make_instance({0.1, 0.95}), t3).final_gain == 0.1);
}

TEST_CASE("half32 oracle bit") {
    CHECK(oracle_half(make_instance({0.5, 0.5})) == true);
    CHECK(oracle_half(make_instance({0.5, 0.6})) == false);
    CHECK(oracle_half(make_instance({0.34, 0.2, 0.2, 0.2, 0.2, 0.2})) == false);
}

TEST_CASE("half32 pair mode packs two interval items and freezes") {
    const RunRecord both = run_with_oracle(AlgorithmId::half32, make_instance({0.5, 0.5}));
    CHECK(both.final_gain == 1.0);
    CHECK(both.advice_bits_read == 1);

    // replacement keeps the smallest interval item until a second one fits
    Half32Policy policy;
    const RunRecord swap =
        run_with_tape(make_instance({0.6, 0.5, 0.45}), "1", policy);
    CHECK(near(swap.final_gain, 0.95, 1e-12));
    CHECK(swap.frozen_at == std::size_t{2});
    CHECK(swap.trace[1].members == std::vector<std::size_t>{1});
}

TEST_CASE("half32 single mode keeps the largest item above one third") {
    const RunRecord record =
        run_with_oracle(AlgorithmId::half32, make_instance({0.5, 0.6}));
    CHECK(record.final_gain == 0.6);

    // greedy items below one third, discarded largest-first on overflow
    const Instance spread = make_instance({0.34, 0.2, 0.2, 0.2, 0.2, 0.2});
    const RunRecord greedy = run_with_oracle(AlgorithmId::half32, spread);
    CHECK(near(greedy.final_gain, 0.94, 1e-12));
    CHECK(greedy.final_gain >= 2.0 / 3.0);

    Half32Policy forced;
    const RunRecord mech =
        run_with_tape(make_instance({0.4, 0.7, 0.2, 0.25}), "0", forced);
    CHECK(mech.trace[1].members == std::vector<std::size_t>{1});
    CHECK(near(mech.final_gain, 0.9, 1e-12));
}

TEST_CASE("half32 ratio bound on a seeded corpus") {
    const auto corpus = uniform_corpus(800, 12, 0xA11);
    for (const Instance& instance : corpus) {
        const RunRecord record = run_with_oracle(AlgorithmId::half32, instance);
        const double opt = optimal_gain(instance).gain;
        CHECK(performance(opt, record.final_gain) <= 1.5 + 1e-9);
    }
}

TEST_CASE("twobit oracle picks the best strategy") {
    CHECK(oracle_twobit(make_instance({0.8, 0.3})) == 1);
    CHECK(oracle_twobit(make_instance({0.3, 0.3, 0.3, 0.3})) == 2);
    CHECK(oracle_twobit(make_instance({0.45, 0.55})) == 2); // ties break low
    CHECK(oracle_twobit(make_instance({0.26, 0.27, 0.60})) == 4);
}

TEST_CASE("twobit strategy runs") {
    const RunRecord oversized =
        run_with_oracle(AlgorithmId::twobit, make_instance({0.8, 0.3}));
    CHECK(oversized.final_gain == 0.8);
    CHECK(oversized.advice_bits_read == 2);

    const RunRecord three =
        run_with_oracle(AlgorithmId::twobit, make_instance({0.3, 0.3, 0.3, 0.3}));
    CHECK(near(three.final_gain, 0.9, 1e-12));

    const RunRecord pair =
        run_with_oracle(AlgorithmId::twobit, make_instance({0.45, 0.55}));
    CHECK(near(pair.final_gain, 1.0, 1e-12));

    const RunRecord split =
        run_with_oracle(AlgorithmId::twobit, make_instance({0.26, 0.27, 0.60}));
    CHECK(near(split.final_gain, 0.86, 1e-12));
}

TEST_CASE("twobit strategy mechanics under forced advice") {
    // S2: a third medium that fails to fit forces two minimal mediums for good
    TwoBitPolicy s2;
    const RunRecord switched =
        run_with_tape(make_instance({0.3, 0.3, 0.5, 0.3}), "01", s2);
    CHECK(near(switched.final_gain, 0.6, 1e-12));

    // S3: two maximal items from [1/4, 1/2]
    TwoBitPolicy s3;
    const RunRecord maximal =
        run_with_tape(make_instance({0.26, 0.26, 0.49, 0.26, 0.26}), "10", s3);
    CHECK(near(maximal.final_gain, 0.75, 1e-12));
    CHECK(maximal.trace[2].members == std::vector<std::size_t>{0, 2});

    // S4: minimal low item beside the minimal high item
    TwoBitPolicy s4;
    const RunRecord slots =
        run_with_tape(make_instance({0.32, 0.32, 0.55, 0.32}), "11", s4);
    CHECK(near(slots.final_gain, 0.87, 1e-12));

    // S1: maximal medium with greedy smaller items
    TwoBitPolicy s1;
    const RunRecord mixed =
        run_with_tape(make_instance({0.3, 0.2, 0.6, 0.2}), "00", s1);
    CHECK(near(mixed.final_gain, 1.0, 1e-12));
}

TEST_CASE("twobit selection beats any fixed condition order on arrival traps") {
    for (const Instance& instance :
         {make_instance({0.3, 0.3, 0.5, 0.3}), make_instance({0.32, 0.32, 0.55, 0.32}),
          make_instance({0.26, 0.26, 0.49, 0.26, 0.26})}) {
        const RunRecord record = run_with_oracle(AlgorithmId::twobit, instance);
        const double opt = optimal_gain(instance).gain;
        CHECK(performance(opt, record.final_gain) <= 4.0 / 3.0 + 1e-9);
    }
}

TEST_CASE("twobit ratio bound on a seeded corpus") {
    const auto corpus = uniform_corpus(800, 12, 0xB22);
    for (const Instance& instance : corpus) {
        const RunRecord record = run_with_oracle(AlgorithmId::twobit, instance);
        const double opt = optimal_gain(instance).gain;
        CHECK(performance(opt, record.final_gain) <= 4.0 / 3.0 + 1e-9);
    }
}
