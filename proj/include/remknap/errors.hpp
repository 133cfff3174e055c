#pragma once

#include <stdexcept>

namespace remknap {

// A policy decision broke the packing rules: the filling would exceed the
// capacity tolerance, or a removal names an item that is not packed.
// Signals a buggy policy; the run is aborted.
struct RuleViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A policy read past the end of the advice tape. Missing bits are an error,
// never implicit zeros.
struct AdviceExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exhaustive-search precondition was exceeded (instance too long, family
// too large, advice budget too big).
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter lies outside its documented range.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bit string does not decode: truncated input or an out-of-range field.
struct MalformedCode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two instances of a family are identical item for item.
struct DuplicateInstance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An instance or result file does not parse.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace remknap
