#include "seb/heights.hpp"

#include <algorithm>
#include <numeric>

namespace seb {

PlaceSet::PlaceSet(std::vector<Integer> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i])) {
            throw InputError("S contains non-prime " + to_string(primes_[i]));
        }
        if (i > 0 && primes_[i] == primes_[i - 1]) {
            throw InputError("S lists prime " + to_string(primes_[i]) + " twice");
        }
    }
}

bool PlaceSet::contains(const Integer& p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

Integer PlaceSet::strip(const Integer& n) const {
    Integer out = abs(n);
    if (out == 0) {
        return out;
    }
    for (const auto& p : primes_) {
        mpz_remove(out.get_mpz_t(), out.get_mpz_t(), p.get_mpz_t());
    }
    return out;
}

bool PlaceSet::is_s_integer(const Rational& x) const { return strip(x.get_den()) == 1; }

bool PlaceSet::is_s_unit(const Rational& x) const {
    return x != 0 && strip(x.get_num()) == 1 && strip(x.get_den()) == 1;
}

Integer PlaceSet::P() const { return primes_.empty() ? Integer(1) : primes_.back(); }

Integer PlaceSet::Q() const {
    Integer q(1);
    for (const auto& p : primes_) {
        q *= p;
    }
    return q;
}

Rational height_of_rational(const Rational& x) {
    if (x == 0) {
        throw InputError("height of zero is undefined here");
    }
    const Integer num = abs(x.get_num());
    return Rational(num > x.get_den() ? num : x.get_den());
}

Rational height_of_polynomial(const Polynomial& f, bool homogeneous) {
    if (f.is_zero()) {
        throw InputError("height of the zero polynomial");
    }
    Rational arch(homogeneous ? 0 : 1);
    Integer den_lcm(1);
    Integer num_gcd(0);
    for (const auto& a : f.coefficients()) {
        if (a == 0) {
            continue;
        }
        arch = std::max(arch, Rational(abs(a)));
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), a.get_num().get_mpz_t());
    }
    // Finite places: p^{max(0, -min ord_p a_i)} multiply to the lcm of the
    // denominators; homogeneously p^{-min ord_p a_i} gives lcm(den)/gcd(num).
    Rational finite(den_lcm);
    if (homogeneous) {
        finite /= Rational(num_gcd);
    }
    return arch * finite;
}

Rational s_norm(const Rational& x, const PlaceSet& S) {
    if (x == 0) {
        throw InputError("S-norm of zero");
    }
    return Rational(S.strip(x.get_num()), S.strip(x.get_den()));
}

ShapeSummary shape_of(const Polynomial& f) {
    if (f.degree() < 2) {
        throw InputError("shape needs deg f >= 2");
    }
    const SquarefreeDecomposition sqf = yun_squarefree(f);
    ShapeSummary out;
    out.n = f.degree();
    Polynomial radical = Polynomial::constant(f.leading());
    for (const auto& part : sqf.parts) {
        out.r += part.factor.degree();
        for (long i = 0; i < part.factor.degree(); ++i) {
            out.multiplicities.push_back(part.multiplicity);
        }
        radical = radical * part.factor;
    }
    std::sort(out.multiplicities.begin(), out.multiplicities.end(), std::greater<>());
    out.f_star = radical;
    out.H_f = height_of_polynomial(f);
    out.H_fstar = height_of_polynomial(radical);
    // D of a linear polynomial: empty product, 1.
    out.disc_fstar = radical.degree() >= 2 ? discriminant(radical) : Rational(1);
    return out;
}

Rational radical_height_bound(long n, const Rational& H_f) {
    Integer two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
    return Rational(two_n) * H_f * H_f;
}

namespace {

long to_long(const Integer& v, const char* name) {
    if (!v.fits_slong_p()) {
        throw InputError(std::string(name) + " out of range");
    }
    return v.get_si();
}

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw InputError(what);
    }
}

InvariantSet from_rational(const RationalInstance& in) {
    require(!in.f.is_zero() && in.f.degree() >= 2, "deg f must be at least 2");
    for (const auto& a : in.f.coefficients()) {
        require(in.places.is_s_integer(a), "coefficient " + to_string(a) + " is not an S-integer");
    }
    require(in.b != 0, "b must be nonzero");
    require(in.places.is_s_integer(in.b), "b = " + to_string(in.b) + " is not an S-integer");
    require(in.m >= 2, "m must be at least 2");

    InvariantSet inv;
    ShapeSummary shape = shape_of(in.f);
    inv.n = shape.n;
    inv.r = shape.r;
    inv.m = in.m;
    inv.d = 1;
    inv.s = in.places.s();
    inv.multiplicities = shape.multiplicities;
    inv.abs_disc = 1;
    inv.P_S = in.places.P();
    inv.Q_S = in.places.Q();
    inv.N_S_b = s_norm(in.b, in.places);
    inv.H_f = shape.H_f;
    inv.H_fstar = shape.H_fstar;
    inv.shape = std::move(shape);
    return inv;
}

InvariantSet from_invariants(const InvariantInstance& in) {
    InvariantSet inv;
    inv.n = to_long(in.n, "n");
    inv.r = to_long(in.r, "r");
    inv.m = to_long(in.m, "m");
    inv.d = to_long(in.d, "d");
    inv.s = to_long(in.s, "s");
    require(inv.n >= 2, "n must be at least 2");
    require(inv.r >= 1, "r must be at least 1");
    require(inv.r <= inv.n, "r " + std::to_string(inv.r) + " exceeds n " + std::to_string(inv.n));
    require(inv.m >= 2, "m must be at least 2");
    require(inv.d >= 1, "d must be at least 1");
    require(inv.s >= 1, "s must be at least 1");
    // K has at least d/2 infinite places, all of them in S.
    require(2 * inv.s >= inv.d, "s " + std::to_string(inv.s) + " is below d/2 for d " + std::to_string(inv.d));
    require(in.abs_disc >= 1, "abs_disc must be at least 1");
    require(in.P_S >= 1, "P_S must be at least 1");
    require(in.P_S <= in.Q_S, "P_S " + to_string(in.P_S) + " exceeds Q_S " + to_string(in.Q_S));
    require(in.N_S_b >= 1, "N_S_b " + to_string(in.N_S_b) + " is below 1");
    require(in.H_f >= 1, "H_f " + to_string(in.H_f) + " is below 1");
    if (in.H_fstar) {
        require(*in.H_fstar >= 1, "H_fstar " + to_string(*in.H_fstar) + " is below 1");
    }
    require(static_cast<long>(in.multiplicities.size()) == inv.r,
            "multiplicities count " + std::to_string(in.multiplicities.size()) + " ≠ r " + std::to_string(inv.r));
    Integer sum(0);
    for (const auto& e : in.multiplicities) {
        require(e >= 1, "multiplicity " + to_string(e) + " is below 1");
        sum += e;
    }
    require(sum == in.n, "multiplicities sum " + to_string(sum) + " ≠ n " + to_string(in.n));
    for (const auto& e : in.multiplicities) {
        inv.multiplicities.push_back(e.get_si());
    }
    std::sort(inv.multiplicities.begin(), inv.multiplicities.end(), std::greater<>());
    inv.abs_disc = in.abs_disc;
    inv.P_S = in.P_S;
    inv.Q_S = in.Q_S;
    inv.N_S_b = in.N_S_b;
    inv.H_f = in.H_f;
    if (in.H_fstar) {
        inv.H_fstar = *in.H_fstar;
    } else {
        inv.H_fstar = radical_height_bound(inv.n, inv.H_f);
        inv.derived_bound = true;
    }
    return inv;
}

}  // namespace

InvariantSet build_invariants(const ProblemInstance& input) {
    if (const auto* r = std::get_if<RationalInstance>(&input)) {
        return from_rational(*r);
    }
    return from_invariants(std::get<InvariantInstance>(input));
}

}  // namespace seb
