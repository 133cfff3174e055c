#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace remknap {

// Advice bit stream with a read cursor. Reading past the written end throws
// AdviceExhausted.
class BitTape {
public:
    void append(bool bit) { bits_.push_back(bit); }
    bool read();

    std::size_t cursor() const { return cursor_; }
    std::size_t written() const { return bits_.size(); }
    std::size_t remaining() const { return bits_.size() - cursor_; }
    void reset_cursor() { cursor_ = 0; }

    // '0'/'1' text, first written bit first.
    std::string to_string() const;
    static BitTape from_string(std::string_view text);

private:
    std::vector<bool> bits_;
    std::size_t cursor_ = 0;
};

// Elias gamma code: floor(log2 n) zeros, then the binary expansion of n,
// most significant bit first. Defined for n >= 1.
void gamma_encode(std::uint64_t value, BitTape& tape);
std::string gamma_encode_string(std::uint64_t value);
std::uint64_t gamma_decode(BitTape& tape); // MalformedCode on truncated input
std::size_t gamma_bit_length(std::uint64_t value);

// PropPack advice payload: the classes of the big items of the chosen
// optimal solution, in order of appearance.
struct ClassTuple {
    std::vector<int> classes; // each in 1..K

    std::size_t count() const { return classes.size(); }
    bool operator==(const ClassTuple&) const = default;
};

// Bits per class field: ceil(log2 K), or 0 when K == 1.
int class_field_width(int num_classes);

// gamma(m+1) followed by m fixed-width fields holding class-1. The code is
// self-delimiting: decoding consumes exactly the encoded prefix.
void encode_class_tuple(const ClassTuple& tuple, int num_classes, BitTape& tape);
std::string encode_class_tuple_string(const ClassTuple& tuple, int num_classes);
ClassTuple decode_class_tuple(BitTape& tape, int num_classes);

} // namespace remknap
