#include "remknap/errors.hpp"
#include "remknap/rng.hpp"
#include "remknap/tape.hpp"

#include <doctest.h>

using namespace remknap;

TEST_CASE("bit tape basics") {
    BitTape tape;
    tape.append(true);
    tape.append(false);
    CHECK(tape.written() == 2);
    CHECK(tape.to_string() == "10");
    CHECK(tape.read() == true);
    CHECK(tape.read() == false);
    CHECK(tape.cursor() == 2);
    CHECK_THROWS_AS(tape.read(), AdviceExhausted);

    const BitTape parsed = BitTape::from_string("0110");
    CHECK(parsed.to_string() == "0110");
    CHECK_THROWS_AS(BitTape::from_string("01x"), MalformedCode);
}

TEST_CASE("gamma code of small integers") {
    CHECK(gamma_encode_string(1) == "1");
    CHECK(gamma_encode_string(2) == "010");
    CHECK(gamma_encode_string(5) == "00101");
    CHECK(gamma_bit_length(1) == 1);
    CHECK(gamma_bit_length(2) == 3);
    CHECK(gamma_bit_length(5) == 5);
    CHECK_THROWS_AS(gamma_encode_string(0), DomainError);
}

TEST_CASE("gamma round trip") {
    SplitMix64 rng(41);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t value = 1 + rng.next_below(1u << 20);
        BitTape tape;
        gamma_encode(value, tape);
        CHECK(tape.written() == gamma_bit_length(value));
        CHECK(gamma_decode(tape) == value);
        CHECK(tape.remaining() == 0);
    }
}

TEST_CASE("gamma decoding rejects truncated input") {
    BitTape tape = BitTape::from_string("01"); // needs one more payload bit
    CHECK_THROWS_AS(gamma_decode(tape), MalformedCode);
    BitTape empty;
    CHECK_THROWS_AS(gamma_decode(empty), MalformedCode);
}

TEST_CASE("class tuple encoding examples") {
    CHECK(encode_class_tuple_string({}, 5) == "1");
    CHECK(encode_class_tuple_string({{3, 3}}, 5) == "011010010");

    BitTape tape = BitTape::from_string("011010010");
    const ClassTuple decoded = decode_class_tuple(tape, 5);
    CHECK(decoded == ClassTuple{{3, 3}});
    CHECK(tape.remaining() == 0);
}

TEST_CASE("class tuple decoding is self-delimiting") {
    BitTape tape;
    encode_class_tuple({{2, 5, 1}}, 6, tape);
    const std::size_t payload = tape.written();
    tape.append(true); // trailing bits stay untouched
    tape.append(true);
    const ClassTuple decoded = decode_class_tuple(tape, 6);
    CHECK(decoded == ClassTuple{{2, 5, 1}});
    CHECK(tape.cursor() == payload);
    CHECK(tape.remaining() == 2);
}

TEST_CASE("class tuple error cases") {
    CHECK_THROWS_AS(encode_class_tuple_string({{6}}, 5), DomainError);
    CHECK_THROWS_AS(encode_class_tuple_string({{0}}, 5), DomainError);

    // class field 5 decodes to class 6 > K = 5
    BitTape overflow = BitTape::from_string("010101");
    CHECK_THROWS_AS(decode_class_tuple(overflow, 5), MalformedCode);

    BitTape truncated = BitTape::from_string("01101"); // promises two fields
    CHECK_THROWS_AS(decode_class_tuple(truncated, 5), MalformedCode);
}

TEST_CASE("single-class tuples need no field bits") {
    CHECK(class_field_width(1) == 0);
    BitTape tape;
    encode_class_tuple({{1, 1, 1}}, 1, tape);
    CHECK(tape.to_string() == "00100"); // just gamma(4)
    CHECK(decode_class_tuple(tape, 1) == ClassTuple{{1, 1, 1}});
}

TEST_CASE("class tuple round trip over random tuples") {
    SplitMix64 rng(99);
    for (int i = 0; i < 300; ++i) {
        const int num_classes = 1 + static_cast<int>(rng.next_below(40));
        ClassTuple tuple;
        const std::size_t count = rng.next_below(12);
        for (std::size_t j = 0; j < count; ++j) {
            tuple.classes.push_back(1 + static_cast<int>(rng.next_below(num_classes)));
        }
        BitTape tape;
        encode_class_tuple(tuple, num_classes, tape);
        CHECK(decode_class_tuple(tape, num_classes) == tuple);
        CHECK(tape.remaining() == 0);
    }
}
