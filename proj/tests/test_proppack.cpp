#include "remknap/errors.hpp"
#include "remknap/offline.hpp"
#include "remknap/oracles.hpp"
#include "remknap/policies.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace remknap;
using namespace remknap::test;

namespace {

RunRecord run_internal_proppack(const Instance& instance, const PropParams& params,
                                PropPackPolicy& policy) {
    const Instance normalized = normalize(instance);
    const PropAdvice advice = oracle_proppack(normalized, params);
    BitTape tape;
    encode_class_tuple(advice.tuple, params.num_classes, tape);
    return run(policy, normalized, tape);
}

} // namespace

TEST_CASE("class system at eps = 1/2") {
    const PropParams params = PropParams::from_internal(0.5);
    CHECK(params.num_classes == 5);
    CHECK(params.delta == 0.2373046875);

    CHECK(params.classify(0.5) == 3); // 0.421875 < 0.5 <= 0.5625
    CHECK(params.classify(0.2) == 0);
    CHECK(params.classify(1.0) == 1);
    CHECK(params.classify(0.2373046875) == 0); // delta itself is small
    CHECK(params.classify(0.5625) == 3);       // upper class ends are inclusive
    CHECK(params.classify(0.6) == 2);
    CHECK(classify_proppack(0.5, 0.5) == 3);
    CHECK_THROWS_AS(params.classify(0.0), DomainError);
}

TEST_CASE("class system invariants across epsilons") {
    for (double eps : {0.5, 0.25, 0.1, 0.037}) {
        const PropParams params = PropParams::from_internal(eps);
        CHECK(params.delta <= eps / 2.0);
        CHECK(params.power[params.num_classes - 1] > eps / 2.0); // K is minimal
        CHECK(params.delta == params.power.back());
        // classes tile (delta, 1] without gaps
        for (int k = 1; k <= params.num_classes; ++k) {
            const double upper = params.power[k - 1];
            CHECK(params.classify(upper) == k);
            if (k < params.num_classes) {
                CHECK(params.classify(std::nextafter(params.power[k], 1.0)) == k);
            }
        }
    }
}

TEST_CASE("the user calibration runs the class system at eps/(1+eps)") {
    const PropParams params = PropParams::from_user(0.5);
    CHECK(params.guarantee_eps == 0.5);
    CHECK(near(params.eps, 1.0 / 3.0, 1e-15));
    CHECK(near(1.0 / (1.0 - params.eps), 1.5, 1e-12));

    // requests beyond 1/2 clamp to 1/2
    const PropParams clamped = PropParams::from_user(2.0);
    CHECK(clamped.guarantee_eps == 0.5);
    CHECK_THROWS_AS(PropParams::from_user(0.0), DomainError);
    CHECK_THROWS_AS(PropParams::from_internal(-1.0), DomainError);
}

TEST_CASE("advice length bound is a constant in the instance size") {
    for (double eps : {0.5, 0.25, 0.1}) {
        const PropParams params = PropParams::from_user(eps);
        const std::size_t bound = params.advice_bits_bound();
        CHECK(bound >= gamma_bit_length(params.max_tuple_count() + 1));
        // the fullest legal tuple still fits the bound
        ClassTuple fullest;
        fullest.classes.assign(params.max_tuple_count(), params.num_classes);
        BitTape tape;
        encode_class_tuple(fullest, params.num_classes, tape);
        CHECK(tape.written() <= bound);
    }
}

TEST_CASE("oracle and policy on two half-sized items") {
    const PropParams params = PropParams::from_internal(0.5);
    const Instance instance = make_instance({0.5, 0.5});

    const PropAdvice advice = oracle_proppack(instance, params);
    CHECK(advice.tuple == ClassTuple{{3, 3}});
    CHECK(advice.big_items == std::vector<std::size_t>{0, 1});

    PropPackPolicy policy(params);
    const RunRecord record = run_internal_proppack(instance, params, policy);
    CHECK(record.final_gain == 1.0);
    CHECK(policy.phases_completed() == 2);
    CHECK(policy.phase_classes() == std::vector<int>{3, 3});
}

TEST_CASE("a big item of the wrong class is rejected by the replacement branch") {
    const PropParams params = PropParams::from_internal(0.5);
    const Instance instance = make_instance({0.6, 0.5, 0.5});
    CHECK(params.classify(0.6) == 2);

    const PropAdvice advice = oracle_proppack(instance, params);
    CHECK(advice.tuple == ClassTuple{{3, 3}});

    PropPackPolicy policy(params);
    const RunRecord record = run_internal_proppack(instance, params, policy);
    CHECK(record.final_gain == 1.0);
    CHECK(record.trace[0].members.empty()); // 0.6 never packed
}

TEST_CASE("small-only instances carry an empty tuple") {
    const PropParams params = PropParams::from_internal(0.5);
    const Instance instance = make_instance({0.2, 0.2, 0.2, 0.2, 0.2});

    const PropAdvice advice = oracle_proppack(instance, params);
    CHECK(advice.tuple.count() == 0);

    PropPackPolicy policy(params);
    const RunRecord record = run_internal_proppack(instance, params, policy);
    CHECK(record.final_gain == 1.0);
    CHECK(record.advice_bits_read == 1); // just gamma(1)
}

TEST_CASE("same-class replacement keeps slot items minimal") {
    const PropParams params = PropParams::from_internal(0.5);
    // 0.55, 0.5 and 0.45 share class 3; 0.5 displaces 0.55 when the pair
    // does not fit, and 0.45 then completes the second phase
    const Instance instance = make_instance({0.55, 0.5, 0.45});
    const PropAdvice advice = oracle_proppack(instance, params);
    CHECK(advice.tuple == ClassTuple{{3, 3}});

    PropPackPolicy policy(params);
    const RunRecord record = run_internal_proppack(instance, params, policy);
    CHECK(record.trace[0].members == std::vector<std::size_t>{0});
    CHECK(record.trace[1].members == std::vector<std::size_t>{1});
    CHECK(record.trace[2].members == std::vector<std::size_t>{1, 2});
    CHECK(near(record.final_gain, 0.95, 1e-12));
}

TEST_CASE("small items pop largest-first to admit an awaited big item") {
    const PropParams params = PropParams::from_internal(0.5);
    // smalls (<= 0.2373): 0.2, 0.15, 0.1; big 0.8 is class 1
    const Instance instance = make_instance({0.2, 0.15, 0.1, 0.8});
    PropPackPolicy policy(params);
    const RunRecord record = run_internal_proppack(instance, params, policy);
    // 0.45 of smalls, then 0.8 arrives: pop 0.2 and 0.15, keep 0.1
    CHECK(record.trace[3].members == std::vector<std::size_t>{2, 3});
    CHECK(near(record.final_gain, 0.9, 1e-12));
}

TEST_CASE("malformed advice tapes are rejected") {
    const PropParams params = PropParams::from_internal(0.5);
    PropPackPolicy policy(params);
    BitTape truncated = BitTape::from_string("01"); // gamma cut short
    CHECK_THROWS_AS(run(policy, make_instance({0.5}), truncated), MalformedCode);
}

TEST_CASE("proppack guarantee and structural invariants on a seeded corpus") {
    const auto corpus = uniform_corpus(400, 12, 0xA99);
    for (double eps : {0.5, 0.25, 0.1}) {
        const PropParams params = PropParams::from_user(eps);
        for (const Instance& instance : corpus) {
            const Instance normalized = normalize(instance);
            const PropAdvice advice = oracle_proppack(normalized, params);
            BitTape tape;
            encode_class_tuple(advice.tuple, params.num_classes, tape);
            PropPackPolicy policy(params);
            const RunRecord record = run(policy, normalized, tape);

            const double opt = optimal_gain(normalized).gain;
            CHECK(performance(opt, record.final_gain) <= 1.0 + eps + 1e-9);

            // every phase filled, in the advised order
            CHECK(policy.phases_completed() == advice.tuple.count());
            CHECK(policy.phase_classes() == advice.tuple.classes);

            // final big classes match the advice as a multiset
            std::vector<int> final_classes;
            for (std::size_t member : record.trace.empty()
                                          ? std::vector<std::size_t>{}
                                          : record.trace.back().members) {
                if (params.classify(normalized.sizes[member]) != 0) {
                    final_classes.push_back(params.classify(normalized.sizes[member]));
                }
            }
            std::vector<int> advised = advice.tuple.classes;
            std::sort(final_classes.begin(), final_classes.end());
            std::sort(advised.begin(), advised.end());
            CHECK(final_classes == advised);
        }
    }
}

TEST_CASE("advice length does not grow with padding") {
    const PropParams params = PropParams::from_user(0.25);
    const Instance base = gen_uniform(20, 777);
    const Instance normalized = normalize(base);
    const OptResult opt = optimal_gain(normalized);
    const PropAdvice advice = oracle_proppack(normalized, params);
    REQUIRE(advice.tuple.count() >= 1);

    BitTape tape;
    encode_class_tuple(advice.tuple, params.num_classes, tape);
    PropPackPolicy policy(params);
    const RunRecord small_run = run(policy, normalized, tape);

    // pad with small items that all fit beside the optimum; the optimal
    // big items, and hence the advice, stay the same
    Instance padded = normalized;
    const double budget = (1.0 - opt.gain) * 0.5;
    const std::size_t extra = 180;
    for (std::size_t i = 0; i < extra; ++i) {
        padded.sizes.push_back(std::max(budget / extra, 1e-9));
    }
    BitTape padded_tape;
    encode_class_tuple(advice.tuple, params.num_classes, padded_tape);
    PropPackPolicy padded_policy(params);
    const RunRecord padded_run = run(padded_policy, padded, padded_tape);

    CHECK(small_run.advice_bits_read == padded_run.advice_bits_read);
    CHECK(padded_run.final_gain >= small_run.final_gain);
}
