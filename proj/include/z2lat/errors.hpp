#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace z2lat {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two operands live in different ambient dimensions.
struct dimension_mismatch : error {
    using error::error;
};

/// A coordinate left the 64-bit signed range. Results are never wrapped.
struct coordinate_overflow : error {
    using error::error;
};

/// A size or enumeration guard was hit before doing the work.
struct budget_exceeded : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

struct invalid_argument_error : error {
    using error::error;
};

/// The pinned parity system has no solution.
struct infeasible_system : error {
    using error::error;
};

/// A log-log fit was asked to take ln of a zero count.
struct degenerate_input : error {
    using error::error;
};

/// A walk needed a cross that is not fully visible inside the trusted region.
struct region_too_small : error {
    using error::error;
};

/// A cross met the set in exactly one arm point: the set is not supportive
/// there. Carries the center of the offending cross.
struct supportiveness_breach : error {
    std::vector<std::int64_t> witness;
    supportiveness_breach(std::vector<std::int64_t> w, const std::string& msg)
        : error(msg), witness(std::move(w)) {}
};

} // namespace z2lat
