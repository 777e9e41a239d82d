#pragma once

// Exact integers, rationals and univariate polynomials over Q.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seb {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for malformed or out-of-contract user input.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Canonical num/den; rejects a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// Accepts "p", "-p", "p/q" with decimal digits only.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
/// Also accepts a terminating decimal such as "-4.605".
Rational parse_decimal(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// Dense polynomial over Q. Coefficients are stored leading first:
/// f = a_0 X^n + a_1 X^{n-1} + ... + a_n.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> leading_first);

    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, std::size_t power);
    /// X - root
    static Polynomial linear(const Rational& root);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    const Rational& leading() const;
    /// Coefficient of X^power (zero above the degree).
    Rational coefficient(std::size_t power) const;

    Rational operator()(const Rational& x) const;

    Polynomial derivative() const;
    /// Zero stays zero.
    Polynomial monic() const;
    Polynomial pow(unsigned exponent) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    std::string to_string(char variable = 'X') const;

  private:
    void trim();

    std::vector<Rational> coeffs_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

/// Euclidean division; throws on a zero divisor.
DivMod divmod(const Polynomial& a, const Polynomial& b);
/// Exact quotient; throws when b does not divide a.
Polynomial exact_quotient(const Polynomial& a, const Polynomial& b);

/// Monic gcd over Q; the zero polynomial when both inputs are zero.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

struct SquarefreePart {
    long multiplicity;
    Polynomial factor;  // monic, squarefree
};

struct SquarefreeDecomposition {
    Rational content;
    std::vector<SquarefreePart> parts;  // increasing multiplicity
};

/// Yun's algorithm: f = content * prod factor^multiplicity.
SquarefreeDecomposition yun_squarefree(const Polynomial& f);

/// Determinant of the Sylvester matrix of a and b.
Rational resultant(const Polynomial& a, const Polynomial& b);

/// D(f) = (-1)^{n(n-1)/2} Res(f, f') / a_0, for deg f >= 2.
Rational discriminant(const Polynomial& f);

struct NthRoot {
    Integer root;
    bool exact;
};

/// floor(a^{1/k}) for a >= 0, k >= 1.
NthRoot integer_nth_root(const Integer& a, unsigned long k);

/// lcm(1, ..., k)
Integer lcm_upto(unsigned long k);

/// Deterministic Miller-Rabin below 2^64; above, trial division by small
/// factors then a 50-round probabilistic test.
bool is_prime(const Integer& n);

/// ord_p(x) for x != 0 and p prime.
long p_valuation(const Rational& x, const Integer& p);

/// Largest power of p dividing |n|, n != 0, p >= 2 (p need not be prime).
long multiplicity_of(const Integer& n, const Integer& p);

}  // namespace seb
