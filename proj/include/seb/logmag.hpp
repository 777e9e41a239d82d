#pragma once

// Certified upper bounds on natural logarithms of positive reals.
//
// A LogMagnitude holds a dyadic rational U with U >= ln(x) for the real x it
// stands for. Every constructor and combinator rounds toward +infinity, so a
// chain of operations stays an upper bound. Absolute slack per operation is
// far below 2^-64 at the default precision.

#include "seb/exact.hpp"

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace seb {

inline constexpr unsigned kDefaultPrecision = 128;
inline constexpr unsigned kMinPrecision = 96;

/// mantissa * 2^exponent, kept with an odd mantissa (or zero).
class Dyadic {
  public:
    Dyadic() = default;
    Dyadic(Integer mantissa, long exponent);
    explicit Dyadic(long value) : Dyadic(Integer(value), 0) {}

    /// Smallest k * 2^-frac_bits that is >= x.
    static Dyadic ceil(const Rational& x, unsigned frac_bits);
    /// Largest k * 2^-frac_bits that is <= x.
    static Dyadic floor(const Rational& x, unsigned frac_bits);

    const Integer& mantissa() const noexcept { return mantissa_; }
    long exponent() const noexcept { return exponent_; }
    int sign() const noexcept { return sgn(mantissa_); }

    Rational to_rational() const;
    double to_double() const;

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

    friend int compare(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) { return compare(a, b) == 0; }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }

  private:
    void normalize();

    Integer mantissa_{0};
    long exponent_ = 0;
};

class LogMagnitude {
  public:
    /// ln(1) = 0 exactly.
    LogMagnitude() = default;
    LogMagnitude(Dyadic upper, unsigned precision_bits);

    const Dyadic& upper() const noexcept { return upper_; }
    unsigned precision_bits() const noexcept { return precision_; }
    Rational upper_rational() const { return upper_.to_rational(); }
    double approx() const { return upper_.to_double(); }

    friend bool operator==(const LogMagnitude& a, const LogMagnitude& b) {
        return a.upper_ == b.upper_ && a.precision_ == b.precision_;
    }

  private:
    Dyadic upper_;
    unsigned precision_ = kDefaultPrecision;
};

struct LogTerm {
    LogMagnitude base;
    Rational exponent;
};

/// U >= ln x for x > 0; exact 0 when x = 1.
LogMagnitude ln_upper(const Rational& x, unsigned precision = kDefaultPrecision);

/// Upper bound on ln prod base_i^{exponent_i} = sum exponent_i * U_i,
/// each product rounded up. Exponents must be non-negative. `precision`
/// of 0 takes the largest precision among the terms.
LogMagnitude combine(std::span<const LogTerm> terms, unsigned precision = 0);
LogMagnitude combine(std::initializer_list<LogTerm> terms, unsigned precision = 0);

/// Upper bound on log*(x) = max(1, ln x).
LogMagnitude log_star_upper(const Rational& x, unsigned precision = kDefaultPrecision);
LogMagnitude log_star_upper(const LogMagnitude& l);

/// Upper bound on ln(U) for U > 0; bounds ln ln x since U >= ln x.
LogMagnitude ln_of(const LogMagnitude& l);

/// Upper bound on ln(sum_i e^{U_i}); one addend is returned unchanged.
LogMagnitude log_sum(std::span<const LogMagnitude> addends);
LogMagnitude log_sum(std::initializer_list<LogMagnitude> addends);

/// Upper bound on e^t.
Rational exp_upper(const Dyadic& t, unsigned precision = kDefaultPrecision);

struct Rendering {
    std::string decimal;  // U to 10 significant digits, rounded up
    long digits10;        // floor(U / ln 10) + 1 for U >= 0, else 0
};

Rendering render(const LogMagnitude& l);

/// Decimal rendering of a rational, rounded toward +infinity.
std::string decimal_upper(const Rational& value, int significant = 10);

namespace detail {

struct Enclosure {
    Dyadic lo;
    Dyadic hi;
};

/// lo <= ln x <= hi at 2^-precision resolution.
Enclosure ln_enclosure(const Rational& x, unsigned precision);

inline Dyadic ln_lower(const Rational& x, unsigned precision) { return ln_enclosure(x, precision).lo; }

}  // namespace detail

}  // namespace seb
