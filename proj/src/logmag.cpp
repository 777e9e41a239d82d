#include "seb/logmag.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace seb {

// ---------------------------------------------------------------------------
// Dyadic

Dyadic::Dyadic(Integer mantissa, long exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
}

void Dyadic::normalize() {
    if (mantissa_ == 0) {
        exponent_ = 0;
        return;
    }
    const auto shift = mpz_scan1(mantissa_.get_mpz_t(), 0);
    if (shift != 0) {
        mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), shift);
        exponent_ += static_cast<long>(shift);
    }
}

Dyadic Dyadic::ceil(const Rational& x, unsigned frac_bits) {
    Integer scaled = x.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), frac_bits);
    mpz_cdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    return {std::move(scaled), -static_cast<long>(frac_bits)};
}

Dyadic Dyadic::floor(const Rational& x, unsigned frac_bits) {
    Integer scaled = x.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), frac_bits);
    mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    return {std::move(scaled), -static_cast<long>(frac_bits)};
}

Rational Dyadic::to_rational() const {
    Rational out(mantissa_);
    if (exponent_ >= 0) {
        mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent_));
    } else {
        mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent_));
    }
    return out;
}

double Dyadic::to_double() const {
    long exp2 = 0;
    const double frac = mpz_get_d_2exp(&exp2, mantissa_.get_mpz_t());
    return std::ldexp(frac, static_cast<int>(exp2 + exponent_));
}

namespace {

Integer shifted(const Integer& m, long by) {
    Integer out = m;
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(by));
    return out;
}

}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.mantissa_ == 0) {
        return b;
    }
    if (b.mantissa_ == 0) {
        return a;
    }
    const long e = std::min(a.exponent_, b.exponent_);
    return {shifted(a.mantissa_, a.exponent_ - e) + shifted(b.mantissa_, b.exponent_ - e), e};
}

Dyadic operator-(const Dyadic& a) { return {Integer(-a.mantissa_), a.exponent_}; }

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return {Integer(a.mantissa_ * b.mantissa_), a.exponent_ + b.exponent_};
}

int compare(const Dyadic& a, const Dyadic& b) { return (a - b).sign(); }

// ---------------------------------------------------------------------------
// LogMagnitude

LogMagnitude::LogMagnitude(Dyadic upper, unsigned precision_bits)
    : upper_(std::move(upper)), precision_(precision_bits) {
    if (precision_bits < kMinPrecision) {
        throw InputError("precision below " + std::to_string(kMinPrecision) + " bits");
    }
}

namespace {

constexpr unsigned kGuardBits = 64;

struct FixedPair {
    Integer lo;
    Integer hi;
};

Integer floor_shift(const Integer& v, unsigned long bits) {
    Integer out;
    mpz_fdiv_q_2exp(out.get_mpz_t(), v.get_mpz_t(), bits);
    return out;
}

Integer ceil_shift(const Integer& v, unsigned long bits) {
    Integer out;
    mpz_cdiv_q_2exp(out.get_mpz_t(), v.get_mpz_t(), bits);
    return out;
}

Integer floor_scaled(const Rational& x, unsigned long bits) {
    Integer out = x.get_num();
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), bits);
    mpz_fdiv_q(out.get_mpz_t(), out.get_mpz_t(), x.get_den().get_mpz_t());
    return out;
}

Integer ceil_scaled(const Rational& x, unsigned long bits) {
    Integer out = x.get_num();
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), bits);
    mpz_cdiv_q(out.get_mpz_t(), out.get_mpz_t(), x.get_den().get_mpz_t());
    return out;
}

// atanh(z) for 0 <= z <= 1/3 in fixed point with w fractional bits.
FixedPair atanh_fixed(const Rational& z, unsigned w) {
    const Integer zl = floor_scaled(z, w);
    const Integer zh = ceil_scaled(z, w);
    if (zh == 0) {
        return {Integer(0), Integer(0)};
    }
    const Integer z2l = floor_shift(zl * zl, w);
    const Integer z2h = ceil_shift(zh * zh, w);
    Integer pl = zl;
    Integer ph = zh;
    FixedPair sum{Integer(0), Integer(0)};
    Integer q;
    for (unsigned long j = 0;; ++j) {
        const unsigned long odd = 2 * j + 1;
        mpz_fdiv_q_ui(q.get_mpz_t(), pl.get_mpz_t(), odd);
        sum.lo += q;
        mpz_cdiv_q_ui(q.get_mpz_t(), ph.get_mpz_t(), odd);
        sum.hi += q;
        pl = floor_shift(pl * z2l, w);
        ph = ceil_shift(ph * z2h, w);
        if (ph <= 1) {
            // Tail: sum_{k>j} z^{2k+1}/(2k+1) <= z^{2j+3} * (9/8) / (2j+3) < ph.
            sum.hi += ph + 1;
            break;
        }
    }
    return sum;
}

FixedPair ln2_fixed(unsigned w) {
    static std::mutex mutex;
    static std::map<unsigned, FixedPair> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(w); it != cache.end()) {
            return it->second;
        }
    }
    FixedPair a = atanh_fixed(Rational(1, 3), w);
    FixedPair out{Integer(2 * a.lo), Integer(2 * a.hi)};
    std::lock_guard lock(mutex);
    cache.emplace(w, out);
    return out;
}

// ln x in fixed point with w fractional bits.
FixedPair ln_fixed(const Rational& x, unsigned w) {
    if (x <= 0) {
        throw InputError("logarithm of a non-positive number");
    }
    if (x == 1) {
        return {Integer(0), Integer(0)};
    }
    long k = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    Rational y = x;
    if (k >= 0) {
        mpq_div_2exp(y.get_mpq_t(), y.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpq_mul_2exp(y.get_mpq_t(), y.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    }
    if (y < 1) {
        mpq_mul_2exp(y.get_mpq_t(), y.get_mpq_t(), 1);
        --k;
    }
    // y in [1, 2): ln y = 2 atanh((y-1)/(y+1)) with argument below 1/3.
    const Rational z = (y - 1) / (y + 1);
    const FixedPair a = atanh_fixed(z, w);
    FixedPair out{Integer(2 * a.lo), Integer(2 * a.hi)};
    if (k != 0) {
        const FixedPair l2 = ln2_fixed(w);
        if (k > 0) {
            out.lo += l2.lo * k;
            out.hi += l2.hi * k;
        } else {
            out.lo += l2.hi * k;
            out.hi += l2.lo * k;
        }
    }
    return out;
}

}  // namespace

namespace detail {

Enclosure ln_enclosure(const Rational& x, unsigned precision) {
    const unsigned w = precision + kGuardBits;
    const FixedPair f = ln_fixed(x, w);
    return {Dyadic(floor_shift(f.lo, kGuardBits), -static_cast<long>(precision)),
            Dyadic(ceil_shift(f.hi, kGuardBits), -static_cast<long>(precision))};
}

}  // namespace detail

LogMagnitude ln_upper(const Rational& x, unsigned precision) {
    if (precision < kMinPrecision) {
        throw InputError("precision below " + std::to_string(kMinPrecision) + " bits");
    }
    return {detail::ln_enclosure(x, precision).hi, precision};
}

LogMagnitude combine(std::span<const LogTerm> terms, unsigned precision) {
    if (precision == 0) {
        precision = kDefaultPrecision;
        if (!terms.empty()) {
            precision = 0;
            for (const auto& t : terms) {
                precision = std::max(precision, t.base.precision_bits());
            }
        }
    }
    Dyadic total;
    for (const auto& t : terms) {
        if (t.exponent < 0) {
            throw InputError("combine: negative exponent");
        }
        if (t.exponent == 0 || t.base.upper().sign() == 0) {
            continue;
        }
        total = total + Dyadic::ceil(t.exponent * t.base.upper_rational(), precision);
    }
    return {total, precision};
}

LogMagnitude combine(std::initializer_list<LogTerm> terms, unsigned precision) {
    return combine(std::span<const LogTerm>(terms.begin(), terms.size()), precision);
}

LogMagnitude log_star_upper(const LogMagnitude& l) {
    const Dyadic one(1);
    return {std::max(one, l.upper()), l.precision_bits()};
}

LogMagnitude log_star_upper(const Rational& x, unsigned precision) {
    return log_star_upper(ln_upper(x, precision));
}

LogMagnitude ln_of(const LogMagnitude& l) {
    if (l.upper().sign() <= 0) {
        throw InputError("ln_of needs a positive upper bound");
    }
    return ln_upper(l.upper_rational(), l.precision_bits());
}

Rational exp_upper(const Dyadic& t, unsigned precision) {
    if (t.sign() == 0) {
        return Rational(1);
    }
    const long floor_exp = static_cast<long>(precision) + 16;
    if (t <= Dyadic(-floor_exp)) {
        // e^t <= e^{-(p+16)} < 2^{-(p+16)}
        Rational tiny(1);
        mpq_div_2exp(tiny.get_mpq_t(), tiny.get_mpq_t(), static_cast<mp_bitcnt_t>(floor_exp));
        return tiny;
    }
    Rational u = abs(t.to_rational());
    unsigned long halvings = 0;
    while (u > Rational(1, 2)) {
        mpq_div_2exp(u.get_mpq_t(), u.get_mpq_t(), 1);
        ++halvings;
    }
    const auto w = static_cast<unsigned long>(precision + kGuardBits + 2 * halvings);
    const Integer ul = floor_scaled(u, w);
    const Integer uh = ceil_scaled(u, w);
    Integer one(1);
    mpz_mul_2exp(one.get_mpz_t(), one.get_mpz_t(), w);
    Integer term_lo = one;
    Integer term_hi = one;
    Integer sum_lo(0);
    Integer sum_hi(0);
    for (unsigned long i = 1;; ++i) {
        sum_lo += term_lo;
        sum_hi += term_hi;
        term_lo = floor_shift(term_lo * ul, w);
        mpz_fdiv_q_ui(term_lo.get_mpz_t(), term_lo.get_mpz_t(), i);
        term_hi = ceil_shift(term_hi * uh, w);
        mpz_cdiv_q_ui(term_hi.get_mpz_t(), term_hi.get_mpz_t(), i);
        if (term_hi <= 1) {
            // successive term ratios are at most 1/4 from here on
            sum_hi += 2 * term_hi + 1;
            break;
        }
    }
    Integer value;
    if (t.sign() > 0) {
        value = sum_hi;
    } else {
        // e^{-u} <= 2^{2w} / lower(e^u)
        Integer num = one * one;
        mpz_cdiv_q(value.get_mpz_t(), num.get_mpz_t(), sum_lo.get_mpz_t());
    }
    for (unsigned long i = 0; i < halvings; ++i) {
        value = ceil_shift(value * value, w);
    }
    Rational out(value);
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), w);
    return out;
}

LogMagnitude log_sum(std::span<const LogMagnitude> addends) {
    if (addends.empty()) {
        throw InputError("log_sum of an empty sum");
    }
    LogMagnitude acc = addends.front();
    for (std::size_t i = 1; i < addends.size(); ++i) {
        const LogMagnitude& next = addends[i];
        const unsigned p = std::max(acc.precision_bits(), next.precision_bits());
        const Dyadic& hi = std::max(acc.upper(), next.upper());
        const Dyadic& lo = std::min(acc.upper(), next.upper());
        // ln(e^hi + e^lo) = hi + ln(1 + e^{lo - hi})
        const Rational e = exp_upper(lo - hi, p);
        const LogMagnitude bump = ln_upper(Rational(1 + e), p);
        acc = LogMagnitude(hi + bump.upper(), p);
    }
    return acc;
}

LogMagnitude log_sum(std::initializer_list<LogMagnitude> addends) {
    return log_sum(std::span<const LogMagnitude>(addends.begin(), addends.size()));
}

namespace {

Integer pow10(unsigned long e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
    return out;
}

// e with 10^e <= a < 10^{e+1}, a > 0
long decimal_exponent(const Rational& a) {
    long e = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
    auto power = [](long k) {
        return k >= 0 ? Rational(pow10(static_cast<unsigned long>(k)))
                      : Rational(Integer(1), pow10(static_cast<unsigned long>(-k)));
    };
    while (power(e) > a) {
        --e;
    }
    while (power(e + 1) <= a) {
        ++e;
    }
    return e;
}

}  // namespace

std::string decimal_upper(const Rational& value, int significant) {
    if (significant < 1) {
        significant = 1;
    }
    if (value == 0) {
        return significant == 1 ? "0" : "0." + std::string(static_cast<std::size_t>(significant - 1), '0');
    }
    const bool negative = value < 0;
    const Rational a = abs(value);
    long e = decimal_exponent(a);
    auto scaled_digits = [&](long exp10) {
        const long shift = significant - 1 - exp10;
        Rational scaled = a;
        if (shift >= 0) {
            scaled *= Rational(pow10(static_cast<unsigned long>(shift)));
        } else {
            scaled /= Rational(pow10(static_cast<unsigned long>(-shift)));
        }
        Integer out;
        if (negative) {
            mpz_fdiv_q(out.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
        } else {
            mpz_cdiv_q(out.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
        }
        return out;
    };
    Integer digits = scaled_digits(e);
    if (digits == pow10(static_cast<unsigned long>(significant))) {
        ++e;
        digits = scaled_digits(e);
    }
    const std::string d = digits.get_str(10);
    std::string out = negative ? "-" : "";
    const auto sig = static_cast<long>(d.size());
    if (e >= 0 && e < 10) {
        if (e + 1 >= sig) {
            out += d + std::string(static_cast<std::size_t>(e + 1 - sig), '0');
        } else {
            out += d.substr(0, static_cast<std::size_t>(e + 1)) + "." + d.substr(static_cast<std::size_t>(e + 1));
        }
    } else if (e < 0 && e >= -5) {
        out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + d;
    } else {
        out += d.substr(0, 1);
        if (sig > 1) {
            out += "." + d.substr(1);
        }
        out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
    }
    return out;
}

Rendering render(const LogMagnitude& l) {
    Rendering out{decimal_upper(l.upper_rational(), 10), 0};
    if (l.upper().sign() >= 0) {
        const Dyadic ln10 = detail::ln_lower(Rational(10), l.precision_bits());
        const Rational ratio = l.upper_rational() / ln10.to_rational();
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
        out.digits10 = q.get_si() + 1;
    }
    return out;
}

}  // namespace seb
