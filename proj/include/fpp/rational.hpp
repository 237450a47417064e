#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fpp {

/// Exact rational scalar used throughout the library. No floating point anywhere.
using Rat = mpq_class;
using QVec = std::vector<Rat>;

/// Thrown on malformed user input (CLI arguments, weight strings, unknown cases).
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal invariant is violated (these indicate bugs, not bad input).
class internal_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Parses "p", "-p" or "p/q" with q > 0 after canonicalization.
Rat parse_rational(std::string_view text);

/// Renders "p" or "p/q" in lowest terms.
std::string rat_str(const Rat& value);

/// Parses a comma-separated list of rationals, e.g. "1/2,0,-3,2".
QVec parse_rational_vector(std::string_view csv);

std::string qvec_str(const QVec& coords);

inline bool is_integer(const Rat& value) { return value.get_den() == 1; }

}  // namespace fpp
