#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>
#include <string>

namespace coklab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 50 decimal digits (~166 bits of significand), comfortably past the 64
// fractional bits every certified value is required to carry.
using Real = boost::multiprecision::cpp_bin_float_50;

inline Real to_real(const Rational& q) {
    return Real(boost::multiprecision::numerator(q)) /
           Real(boost::multiprecision::denominator(q));
}

inline double to_double(const Rational& q) { return static_cast<double>(to_real(q)); }

/// Parse "num/den" or a plain integer string into an exact rational.
Rational parse_rational(const std::string& s);

/// Serialize as "num/den" ("num" when the denominator is 1).
std::string rational_to_string(const Rational& q);

/// A nonnegative value known to lie in [value, value + bound].  Truncated
/// series report their partial sum as `value` and the certified tail as
/// `bound`; exact quantities carry bound == 0.
struct Bounded {
    Real value{0};
    Real bound{0};

    static Bounded exact(Real v) { return {v, Real(0)}; }
    static Bounded exact(const Rational& q) { return {to_real(q), Real(0)}; }

    Bounded operator*(const Bounded& o) const {
        // [v1,v1+b1]*[v2,v2+b2] for nonnegative intervals
        Real v = value * o.value;
        Real hi = (value + bound) * (o.value + o.bound);
        return {v, hi - v};
    }
    Bounded operator+(const Bounded& o) const { return {value + o.value, bound + o.bound}; }

    /// Divide by an exact positive value.
    Bounded div_exact(const Real& d) const { return {value / d, bound / d}; }

    /// x / y with both in their certified intervals (y.value > 0).
    Bounded operator/(const Bounded& o) const {
        Real lo = value / (o.value + o.bound);
        Real hi = (value + bound) / o.value;
        return {lo, hi - lo};
    }

    double value_d() const { return static_cast<double>(value); }
    double bound_d() const { return static_cast<double>(bound); }
};

/// Raised when a computation would exceed a configured enumeration bound.
struct BoundExceeded : std::runtime_error {
    explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an entry distribution fails the balance requirement.
struct DegenerateDistribution : std::runtime_error {
    explicit DegenerateDistribution(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration bound shared by the census / chain-count / sequence modules.
/// Overridable through the COKLAB_MAX_ENUM environment variable.
std::size_t max_enum_bound(std::size_t fallback = 256);

}  // namespace coklab
