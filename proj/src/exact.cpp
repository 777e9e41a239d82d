#include "seb/exact.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <utility>

namespace seb {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
}

Integer parse_signed_digits(std::string_view text, std::string_view whole) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (!all_digits(text)) {
        throw InputError("malformed number \"" + std::string(whole) + "\"");
    }
    Integer value(std::string(text), 10);
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw InputError("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_signed_digits(text, text));
    }
    const Integer num = parse_signed_digits(text.substr(0, slash), text);
    const std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
        throw InputError("malformed number \"" + std::string(text) + "\"");
    }
    const Integer den(std::string(den_text), 10);
    if (den == 0) {
        throw InputError("zero denominator in \"" + std::string(text) + "\"");
    }
    return make_rational(num, den);
}

Integer parse_integer(std::string_view text) { return parse_signed_digits(text, text); }

Rational parse_decimal(std::string_view text) {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        return parse_rational(text);
    }
    std::string whole(text.substr(0, dot));
    const std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) {
        throw InputError("malformed number \"" + std::string(text) + "\"");
    }
    const bool negative = !whole.empty() && whole.front() == '-';
    if (whole.empty() || whole == "-" || whole == "+") {
        whole += "0";
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const Rational part = make_rational(Integer(std::string(frac), 10), scale);
    const Rational head(parse_signed_digits(whole, text));
    return negative ? Rational(head - part) : Rational(head + part);
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) {
        return value.get_num().get_str(10);
    }
    return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Rational> leading_first) : coeffs_(std::move(leading_first)) {
    for (auto& c : coeffs_) {
        c.canonicalize();
    }
    trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> coeffs(power + 1, Rational(0));
    coeffs.front() = c;
    return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::linear(const Rational& root) { return Polynomial({Rational(1), Rational(-root)}); }

void Polynomial::trim() {
    const auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; });
    coeffs_.erase(coeffs_.begin(), first);
}

const Rational& Polynomial::leading() const {
    if (is_zero()) {
        throw std::domain_error("zero polynomial has no leading coefficient");
    }
    return coeffs_.front();
}

Rational Polynomial::coefficient(std::size_t power) const {
    if (is_zero() || power > static_cast<std::size_t>(degree())) {
        return Rational(0);
    }
    return coeffs_[static_cast<std::size_t>(degree()) - power];
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc(0);
    for (const auto& c : coeffs_) {
        acc = acc * x + c;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() <= 0) {
        return {};
    }
    const auto n = static_cast<std::size_t>(degree());
    std::vector<Rational> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(coeffs_[i] * static_cast<unsigned long>(n - i));
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) {
        return {};
    }
    const Rational lead = coeffs_.front();
    std::vector<Rational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.emplace_back(c / lead);
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result = constant(Rational(1));
    Polynomial base = *this;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            result = result * base;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            base = base * base;
        }
    }
    return result;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const std::size_t size = std::max(a.coeffs_.size(), b.coeffs_.size());
    std::vector<Rational> out(size, Rational(0));
    // align at the constant term
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        out[size - a.coeffs_.size() + i] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
        out[size - b.coeffs_.size() + i] += b.coeffs_[i];
    }
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
    std::vector<Rational> out;
    out.reserve(p.coeffs_.size());
    for (const auto& x : p.coeffs_) {
        out.emplace_back(c * x);
    }
    return Polynomial(std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

std::string Polynomial::to_string(char variable) const {
    if (is_zero()) {
        return "0";
    }
    std::ostringstream os;
    const long n = degree();
    bool first = true;
    for (long i = 0; i <= n; ++i) {
        const Rational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) {
            continue;
        }
        const long power = n - i;
        const Rational magnitude = abs(c);
        if (first) {
            if (c < 0) {
                os << '-';
            }
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (magnitude != 1 || power == 0) {
            os << seb::to_string(magnitude);
            if (power != 0) {
                os << '*';
            }
        }
        if (power >= 1) {
            os << variable;
        }
        if (power >= 2) {
            os << '^' << power;
        }
    }
    return os.str();
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    if (a.degree() < b.degree()) {
        return {Polynomial(), a};
    }
    const auto n = static_cast<std::size_t>(a.degree());
    const auto m = static_cast<std::size_t>(b.degree());
    std::vector<Rational> rem = a.coefficients();
    std::vector<Rational> quot(n - m + 1, Rational(0));
    const Rational& lead = b.leading();
    const auto& bc = b.coefficients();
    for (std::size_t i = 0; i + m <= n; ++i) {
        if (rem[i] == 0) {
            continue;
        }
        const Rational q = rem[i] / lead;
        quot[i] = q;
        for (std::size_t j = 0; j <= m; ++j) {
            rem[i + j] -= q * bc[j];
        }
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
    DivMod qr = divmod(a, b);
    if (!qr.remainder.is_zero()) {
        throw std::domain_error("inexact polynomial division");
    }
    return std::move(qr.quotient);
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a.monic();
    Polynomial y = b.monic();
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).remainder.monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

SquarefreeDecomposition yun_squarefree(const Polynomial& f) {
    if (f.degree() < 1) {
        throw InputError("squarefree decomposition needs degree >= 1");
    }
    SquarefreeDecomposition out{f.leading(), {}};
    const Polynomial g = f.monic();
    const Polynomial dg = g.derivative();
    const Polynomial a0 = poly_gcd(g, dg);
    Polynomial b = exact_quotient(g, a0);
    Polynomial c = exact_quotient(dg, a0);
    Polynomial d = c - b.derivative();
    long i = 1;
    while (b.degree() > 0) {
        const Polynomial a = poly_gcd(b, d);
        b = exact_quotient(b, a);
        c = exact_quotient(d, a);
        d = c - b.derivative();
        if (a.degree() > 0) {
            out.parts.push_back({i, a});
        }
        ++i;
    }
    return out;
}

Rational resultant(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return Rational(0);
    }
    const auto n = static_cast<std::size_t>(a.degree());
    const auto m = static_cast<std::size_t>(b.degree());
    const std::size_t size = n + m;
    if (size == 0) {
        return Rational(1);
    }
    std::vector<std::vector<Rational>> mat(size, std::vector<Rational>(size, Rational(0)));
    for (std::size_t row = 0; row < m; ++row) {
        for (std::size_t j = 0; j <= n; ++j) {
            mat[row][row + j] = a.coefficients()[j];
        }
    }
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t j = 0; j <= m; ++j) {
            mat[m + row][row + j] = b.coefficients()[j];
        }
    }
    // Gaussian elimination over Q.
    Rational det(1);
    for (std::size_t col = 0; col < size; ++col) {
        std::size_t pivot = col;
        while (pivot < size && mat[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == size) {
            return Rational(0);
        }
        if (pivot != col) {
            std::swap(mat[pivot], mat[col]);
            det = -det;
        }
        det *= mat[col][col];
        for (std::size_t row = col + 1; row < size; ++row) {
            if (mat[row][col] == 0) {
                continue;
            }
            const Rational factor = mat[row][col] / mat[col][col];
            for (std::size_t k = col; k < size; ++k) {
                mat[row][k] -= factor * mat[col][k];
            }
        }
    }
    return det;
}

Rational discriminant(const Polynomial& f) {
    if (f.degree() < 2) {
        throw InputError("discriminant needs degree >= 2");
    }
    const long n = f.degree();
    Rational d = resultant(f, f.derivative()) / f.leading();
    if (((n * (n - 1) / 2) & 1L) != 0) {
        d = -d;
    }
    return d;
}

NthRoot integer_nth_root(const Integer& a, unsigned long k) {
    if (a < 0) {
        throw InputError("integer_nth_root of a negative number");
    }
    if (k == 0) {
        throw InputError("integer_nth_root with k = 0");
    }
    NthRoot out{Integer(0), false};
    const int exact = mpz_root(out.root.get_mpz_t(), a.get_mpz_t(), k);
    out.exact = exact != 0;
    return out;
}

Integer lcm_upto(unsigned long k) {
    if (k == 0) {
        throw InputError("lcm_upto needs k >= 1");
    }
    Integer acc(1);
    for (unsigned long j = 2; j <= k; ++j) {
        mpz_lcm_ui(acc.get_mpz_t(), acc.get_mpz_t(), j);
    }
    return acc;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp != 0) {
        if ((exp & 1U) != 0) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

bool miller_rabin_u64(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : bases) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++r;
    }
    for (auto a : bases) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool is_prime(const Integer& n) {
    if (n < 2) {
        return false;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        std::uint64_t v = 0;
        mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
        return miller_rabin_u64(v);
    }
    // Above 64 bits: trial division by small odd numbers, then 50 rounds of
    // GMP's probabilistic test (error below 4^-50).
    if (mpz_even_p(n.get_mpz_t()) != 0) {
        return false;
    }
    for (unsigned long q = 3; q < 100000; q += 2) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) {
            return false;
        }
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 50) != 0;
}

long multiplicity_of(const Integer& n, const Integer& p) {
    if (n == 0 || p < 2) {
        throw InputError("multiplicity_of needs n != 0 and p >= 2");
    }
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long p_valuation(const Rational& x, const Integer& p) {
    if (x == 0) {
        throw InputError("valuation of zero");
    }
    if (!is_prime(p)) {
        throw InputError("p_valuation: " + p.get_str() + " is not prime");
    }
    return multiplicity_of(x.get_num(), p) - multiplicity_of(x.get_den(), p);
}

}  // namespace seb
