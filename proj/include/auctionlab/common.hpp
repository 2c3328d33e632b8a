#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace auctionlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Raised when an input object (distribution, environment, instance file) fails
// validation or an argument is outside an operation's domain.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a request is well formed but exceeds what the exact algorithms
// can handle (e.g. too many buyers for an exact subset enumeration).
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a quantity that must be finite for the requested computation
// turns out to be infinite (e.g. the mean of a heavy-tailed distribution).
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool close_rel(double a, double b, double rtol, double atol = 1e-12) {
    return std::fabs(a - b) <= atol + rtol * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace auctionlab
