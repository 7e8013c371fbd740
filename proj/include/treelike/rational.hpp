#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace treelike {

// All arithmetic in this library is exact. Rat is an arbitrary-precision
// rational, always kept in lowest terms with positive denominator.
using Rat = mpq_class;

/// Parses "p", "-p", "p/q" or a decimal literal like "0.5" / "-1.25".
/// Decimals are converted exactly (d.ddd -> p / 10^m).
/// Throws std::invalid_argument on malformed input or zero denominator.
Rat rat_from_string(std::string_view text);

/// Canonical rendering: "p" when the value is integral, else "p/q" in
/// lowest terms with q > 0.
std::string rat_to_string(const Rat& value);

}  // namespace treelike
