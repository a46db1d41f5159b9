#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cycode {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Configuration problems: malformed input, reducible "minimal" polynomials,
// unverifiable pinned roots. The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated mathematical preconditions (division by zero, tower mismatch, ...).
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A checked internal identity failed; signals a bug, not bad data.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// height(p/q) = max(|p|, q); search budgets are expressed in this measure.
Int rat_height(const Rat& q);

std::string rat_to_string(const Rat& q);

// Accepts "p", "-p", "p/q" with arbitrary-precision parts.
Rat rat_from_string(std::string_view s);

// Accepts the forms of rat_from_string plus decimal literals ("-2.645751");
// decimals are converted exactly.
Rat rat_from_decimal(std::string_view s);

bool rat_is_square(const Rat& q);

uint64_t fnv1a64(std::string_view data);

}  // namespace cycode
