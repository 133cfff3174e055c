#include "remknap/tape.hpp"

#include "remknap/errors.hpp"

#include <bit>

namespace remknap {

bool BitTape::read() {
    if (cursor_ >= bits_.size()) {
        throw AdviceExhausted("read past the end of the advice tape");
    }
    return bits_[cursor_++];
}

std::string BitTape::to_string() const {
    std::string text;
    text.reserve(bits_.size());
    for (bool bit : bits_) {
        text.push_back(bit ? '1' : '0');
    }
    return text;
}

BitTape BitTape::from_string(std::string_view text) {
    BitTape tape;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw MalformedCode("bit string may contain only '0' and '1'");
        }
        tape.append(c == '1');
    }
    return tape;
}

void gamma_encode(std::uint64_t value, BitTape& tape) {
    if (value == 0) {
        throw DomainError("gamma code is defined for positive integers");
    }
    const int width = std::bit_width(value); // number of significant bits
    for (int i = 0; i < width - 1; ++i) {
        tape.append(false);
    }
    for (int i = width - 1; i >= 0; --i) {
        tape.append(((value >> i) & 1u) != 0);
    }
}

std::string gamma_encode_string(std::uint64_t value) {
    BitTape tape;
    gamma_encode(value, tape);
    return tape.to_string();
}

std::uint64_t gamma_decode(BitTape& tape) {
    try {
        int zeros = 0;
        while (!tape.read()) {
            if (++zeros > 63) {
                throw MalformedCode("gamma code prefix too long");
            }
        }
        std::uint64_t value = 1;
        for (int i = 0; i < zeros; ++i) {
            value = (value << 1) | (tape.read() ? 1u : 0u);
        }
        return value;
    } catch (const AdviceExhausted&) {
        throw MalformedCode("truncated gamma code");
    }
}

std::size_t gamma_bit_length(std::uint64_t value) {
    if (value == 0) {
        throw DomainError("gamma code is defined for positive integers");
    }
    return 2 * static_cast<std::size_t>(std::bit_width(value)) - 1;
}

int class_field_width(int num_classes) {
    if (num_classes < 1) {
        throw DomainError("class count must be at least 1");
    }
    return std::bit_width(static_cast<unsigned>(num_classes - 1));
}

void encode_class_tuple(const ClassTuple& tuple, int num_classes, BitTape& tape) {
    const int width = class_field_width(num_classes);
    for (int cls : tuple.classes) {
        if (cls < 1 || cls > num_classes) {
            throw DomainError("class out of range 1..K");
        }
    }
    gamma_encode(tuple.count() + 1, tape);
    for (int cls : tuple.classes) {
        const unsigned field = static_cast<unsigned>(cls - 1);
        for (int i = width - 1; i >= 0; --i) {
            tape.append(((field >> i) & 1u) != 0);
        }
    }
}

std::string encode_class_tuple_string(const ClassTuple& tuple, int num_classes) {
    BitTape tape;
    encode_class_tuple(tuple, num_classes, tape);
    return tape.to_string();
}

ClassTuple decode_class_tuple(BitTape& tape, int num_classes) {
    const int width = class_field_width(num_classes);
    const std::uint64_t count_plus_one = gamma_decode(tape);
    if (count_plus_one == 0) {
        throw MalformedCode("class tuple count underflow");
    }
    const std::uint64_t count = count_plus_one - 1;

    ClassTuple tuple;
    tuple.classes.reserve(count);
    try {
        for (std::uint64_t j = 0; j < count; ++j) {
            unsigned field = 0;
            for (int i = 0; i < width; ++i) {
                field = (field << 1) | (tape.read() ? 1u : 0u);
            }
            const int cls = static_cast<int>(field) + 1;
            if (cls > num_classes) {
                throw MalformedCode("class field exceeds K");
            }
            tuple.classes.push_back(cls);
        }
    } catch (const AdviceExhausted&) {
        throw MalformedCode("truncated class tuple");
    }
    return tuple;
}

} // namespace remknap
