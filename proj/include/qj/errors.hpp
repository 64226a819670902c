#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qj {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A value could not be determined at the available precision.
/// Recoverable: recompute with a deeper precision floor.
struct precision_error : error {
    using error::error;
};

/// Invalid argument or mathematically undefined request
/// (division by zero, eps >= 1, degenerate matrix, ...).
struct domain_error : error {
    using error::error;
};

/// Text input rejected by one of the grammars; carries the offset
/// of the offending character.
struct parse_error : error {
    std::size_t pos;
    parse_error(const std::string& msg, std::size_t at)
        : error(msg + " at position " + std::to_string(at)), pos(at) {}
};

} // namespace qj
