#include "seb/bounds.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace seb {

namespace {

Integer ipow(long base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), Integer(base).get_mpz_t(), e);
    return out;
}

Rational Q(long v) { return Rational(v); }

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw HypothesisError(what);
    }
}

// Running upper bound on a sum of logs, on the 2^-precision grid.
class LogSum {
  public:
    explicit LogSum(unsigned precision) : precision_(precision) {}

    // exponent * ln(x), x >= 1 or exponent = 0
    LogSum& ln(const Rational& x, const Rational& exponent = Rational(1)) {
        if (exponent != 0 && x != 1) {
            add(ln_upper(x, precision_), exponent);
        }
        return *this;
    }
    LogSum& ln(const Integer& x, const Rational& exponent = Rational(1)) { return ln(Rational(x), exponent); }

    // exponent * ln(log* x)
    LogSum& ln_log_star(const Rational& x, const Rational& exponent = Rational(1)) {
        if (exponent != 0) {
            add(ln_of(log_star_upper(x, precision_)), exponent);
        }
        return *this;
    }

    LogSum& add(const LogMagnitude& l, const Rational& exponent = Rational(1)) {
        if (exponent < 0) {
            throw InputError("negative exponent in a bound formula");
        }
        total_ = total_ + Dyadic::ceil(exponent * l.upper_rational(), precision_);
        return *this;
    }

    LogSum& value(const Rational& v) {
        total_ = total_ + Dyadic::ceil(v, precision_);
        return *this;
    }

    LogMagnitude result() const { return {total_, precision_}; }

  private:
    unsigned precision_;
    Dyadic total_;
};

}  // namespace

Dyadic voutier_floor(long d, unsigned precision) {
    require(d >= 1, "d >= 1");
    if (d == 1) {
        return detail::ln_lower(Rational(2), precision);
    }
    const Rational u = ln_upper(Q(3 * d), precision).upper_rational();
    return Dyadic::floor(Rational(2) / (Q(d) * u * u * u), precision);
}

LogMagnitude baker_c1(long n, long d, unsigned precision) {
    require(n >= 2, "n >= 2");
    require(d >= 1, "d >= 1");
    const Rational e = Q(3 * n + 2);
    return LogSum(precision).ln(Q(12)).ln(Q(16 * d), e).value(e).ln_log_star(Q(d), Q(2)).result();
}

LogMagnitude decomposable_c2(long s, long d, unsigned precision) {
    require(s >= 1, "s >= 1");
    require(d >= 1, "d >= 1");
    return LogSum(precision).ln(Q(s), Q(2 * s + 4)).ln(Q(2), Q(7 * s + 60)).ln(Q(d), Q(2 * s + d + 2)).result();
}

namespace aux {

LogMagnitude hr_product(const Integer& abs_disc, long d, unsigned precision) {
    require(abs_disc >= 1, "abs_disc >= 1");
    require(d >= 1, "d >= 1");
    return LogSum(precision).ln(abs_disc, Rational(1, 2)).ln_log_star(Rational(abs_disc), Q(d - 1)).result();
}

LogMagnitude disc_root_field(const DiscRootParams& p, unsigned precision) {
    require(p.n >= 1, "n >= 1");
    require(p.d >= 1, "d >= 1");
    require(p.k >= 1 && p.k <= p.n, "1 <= k <= n");
    require(p.H_f >= 1, "H_f >= 1");
    require(p.abs_disc >= 1, "abs_disc >= 1");
    LogSum acc(precision);
    const long n = p.n;
    const long d = p.d;
    if (p.sharp_k1) {
        require(p.k == 1, "sharp form needs k = 1");
        if (p.with_2n_factor) {
            acc.ln(Q(2), Q((2 * n - 2) * n * d));
        }
        return acc.ln(Q(n), Q((2 * n - 1) * d)).ln(p.H_f, Q((2 * n - 2) * d)).ln(p.abs_disc, Q(n)).result();
    }
    const Integer nk = ipow(n, static_cast<unsigned long>(p.k));
    const Rational outer(Integer(2 * d * p.k) * nk);
    if (p.with_2n_factor) {
        acc.ln(Q(2), outer * n);
    }
    return acc.ln(Q(n), outer).ln(p.H_f, outer).ln(p.abs_disc, Rational(nk)).result();
}

LogMagnitude radical_height(long n, const Rational& H_f, unsigned precision) {
    require(n >= 1, "n >= 1");
    require(H_f >= 1, "H_f >= 1");
    return LogSum(precision).ln(Q(2), Q(n)).ln(H_f, Q(2)).result();
}

LogMagnitude disc_height(long n, const LogMagnitude& h_f) {
    require(n >= 1, "n >= 1");
    return LogSum(h_f.precision_bits()).ln(Q(n), Q(2 * n - 1)).add(h_f, Q(2 * n - 2)).result();
}

Integer ramification(long k, long ord_u) {
    require(k >= 1, "k >= 1");
    require(ord_u >= 0, "ord_u >= 0");
    return Integer(k) * (1 + ord_u);
}

LogMagnitude eta_twist(const EtaTwistParams& p, unsigned precision) {
    require(p.d >= 1, "d >= 1");
    require(p.k >= 0, "k >= 0");
    require(p.N_S_alpha >= 1, "N_S_alpha >= 1");
    require(p.R_K > 0, "R_K > 0");
    require(p.h_K >= 1, "h_K >= 1");
    require(p.Q_S >= 1, "Q_S >= 1");
    const Rational c = Rational(39 * ipow(p.d, static_cast<unsigned long>(p.d + 2)));
    return LogSum(precision)
        .ln(p.N_S_alpha, Rational(1, p.d))
        .value(Q(p.k) * c * p.R_K)
        .ln(p.Q_S, Q(p.k) * p.h_K / Q(p.d))
        .result();
}

LogMagnitude regulator_upper(const Integer& abs_disc_L, long d_L, const Integer& P, long t, unsigned precision) {
    require(abs_disc_L >= 1, "abs_disc_L >= 1");
    require(d_L >= 1, "d_L >= 1");
    require(P >= 1, "P >= 1");
    require(t >= 1, "t >= 1");
    return LogSum(precision)
        .ln(abs_disc_L, Rational(1, 2))
        .ln_log_star(Rational(abs_disc_L), Q(d_L - 1))
        .ln_log_star(Rational(P), Q(t - 1))
        .result();
}

}  // namespace aux

LogMagnitude field_disc_bound(FieldDiscCase which, const FieldParams& p, unsigned precision) {
    require(p.d >= 1, "d >= 1");
    require(p.H_fstar >= 1 && p.abs_disc >= 1 && p.Q_S >= 1 && p.N_S_b >= 1,
            "H_fstar, abs_disc, Q_S, N_S_b >= 1");
    const Integer d(p.d);
    const Integer r(p.r);
    LogSum acc(precision);
    switch (which) {
        case FieldDiscCase::I: {
            require(p.m >= 3, "m >= 3");
            require(p.r >= 2, "r >= 2");
            const Integer m(p.m);
            const Rational common(m * m * r * r);
            return acc.ln(Q(10), Rational(d * m * m * m * r * r))
                .ln(Q(p.r), Rational(4 * d * m * m * r * r * r))
                .ln(p.abs_disc, common)
                .ln(p.H_fstar, Rational(4 * d * m * m * r * r * r))
                .ln(p.Q_S, common)
                .ln(p.N_S_b, common)
                .result();
        }
        case FieldDiscCase::II: {
            require(p.r >= 3, "r >= 3");
            const Integer r3 = r * r * r;
            return acc.ln(Q(p.r), Rational(40 * d * r3 * r))
                .ln(p.abs_disc, Rational(4 * r3))
                .ln(p.H_fstar, Rational(25 * d * r3 * r))
                .ln(p.Q_S, Rational(8 * r3))
                .ln(p.N_S_b, Rational(8 * r3))
                .result();
        }
        case FieldDiscCase::III: {
            require(p.m >= 3, "m >= 3");
            require(p.r >= 2, "r >= 2");
            const Integer m(p.m);
            const Integer m4 = m * m * m * m;
            return acc.ln(Q(2), Rational(10 * d * m4 * m * r * r))
                .ln(Q(p.r), Rational(8 * d * m4 * r * r * r))
                .ln(p.abs_disc, Rational(m4 * r * r))
                .ln(p.H_fstar, Rational(8 * d * m4 * r * r * r))
                .ln(p.Q_S, Rational(2 * m4 * r * r))
                .ln(p.N_S_b, Rational(2 * m4 * r * r))
                .result();
        }
    }
    throw InputError("unknown field discriminant case");
}

LogMagnitude crucial_delta_bound(long m_i, long d, long r, const Rational& H_fstar, const Integer& abs_disc,
                                 const Integer& Q_S, const Rational& N_S_b, unsigned precision) {
    require(m_i >= 1, "m_i >= 1");
    require(d >= 1, "d >= 1");
    require(r >= 2, "r >= 2");
    require(H_fstar >= 1 && abs_disc >= 1 && Q_S >= 1 && N_S_b >= 1, "H_fstar, abs_disc, Q_S, N_S_b >= 1");
    const long dr = d * r;
    // ln of the common prefix m_i (d r^3 H*^2)^{dr} |D|^r
    LogSum prefix(precision);
    prefix.ln(Q(m_i)).ln(Q(d * r * r * r), Q(dr)).ln(H_fstar, Q(2 * dr)).ln(abs_disc, Q(r));
    const LogMagnitude head = prefix.result();

    std::vector<LogMagnitude> addends;
    addends.push_back(LogSum(precision).add(head).ln(Q(80)).ln(Q(dr), Q(dr + 2)).result());
    if (Q_S > 1) {
        addends.push_back(LogSum(precision).add(head).add(ln_of(ln_upper(Rational(Q_S), precision))).result());
    }
    if (N_S_b > 1) {
        addends.push_back(LogSum(precision).ln(Q(m_i)).add(ln_of(ln_upper(N_S_b, precision))).result());
    }
    return log_sum(addends);
}

LogMagnitude simple_roots_bound(const SimpleRootsParams& p, unsigned precision) {
    require(p.m >= 3, "m >= 3");
    require(p.n >= 2, "n >= 2");
    require(p.d >= 1 && p.s >= 1, "d, s >= 1");
    require(p.H_f >= 1 && p.abs_disc >= 1 && p.Q_S >= 1 && p.N_S_b >= 1, "H_f, abs_disc, Q_S, N_S_b >= 1");
    const Integer m(p.m);
    const Integer n(p.n);
    const Integer m2n2 = m * m * n * n;
    return LogSum(precision)
        .ln(Q(6 * p.n * p.s), Rational(14 * m * m * m * n * n * n * p.s))
        .ln(p.abs_disc, Rational(2 * m2n2))
        .ln(p.H_f, Rational(8 * p.d * m2n2 * n))
        .ln(p.Q_S, Rational(3 * m2n2))
        .ln(p.N_S_b, Rational(2 * m2n2))
        .result();
}

LogMagnitude main_bound(LeVequeClass cls, const InvariantSet& inv, unsigned precision) {
    const LeVequeClass actual = classify(exponent_tuple(inv.m, inv.multiplicities), inv.m);
    require(actual == cls, "instance has class " + to_string(actual) + ", not " + to_string(cls));
    require(!is_excluded(cls), "no bound for class " + to_string(cls));
    const Integer r(inv.r);
    const Integer s(inv.s);
    const Integer d(inv.d);
    const Integer r3 = r * r * r;
    LogSum acc(precision);
    switch (cls) {
        case LeVequeClass::CaseI:
            return acc.ln(Rational(16 * r3 * s), Rational(80 * r3 * r * s))
                .ln(inv.abs_disc, Rational(8 * r3))
                .ln(inv.H_fstar, Rational(50 * d * r3 * r))
                .ln(inv.Q_S, Rational(20 * r3))
                .ln(inv.N_S_b, Rational(16 * r3))
                .result();
        case LeVequeClass::CaseII: {
            require(inv.m >= 3, "m >= 3");
            const Integer m(inv.m);
            const Integer m2r2 = m * m * r * r;
            return acc.ln(Rational(6 * r * s), Rational(14 * m * m * m * r3 * s))
                .ln(inv.abs_disc, Rational(2 * m2r2))
                .ln(inv.H_fstar, Rational(8 * d * m2r2 * r))
                .ln(inv.Q_S, Rational(3 * m2r2))
                .ln(inv.N_S_b, Rational(2 * m2r2))
                .result();
        }
        case LeVequeClass::CaseIII: {
            require(inv.m >= 3, "m >= 3");
            const Integer m(inv.m);
            const Integer m4 = m * m * m * m;
            const Integer m5 = m4 * m;
            const Integer m8 = m4 * m4;
            const Integer m9 = m8 * m;
            return acc.ln(Rational(2 * r), Rational(16 * d * m9 * r3))
                .ln(Rational(12 * m5 * s), Rational(28 * m9 * m * s))
                .ln(inv.abs_disc, Rational(2 * m8 * r * r))
                .ln(inv.H_fstar, Rational(32 * d * m9 * r3))
                .ln(inv.Q_S, Rational(6 * m8 * r * r))
                .ln(inv.N_S_b, Rational(4 * m8 * r * r))
                .result();
        }
        default:
            break;
    }
    throw HypothesisError("no bound for class " + to_string(cls));
}

namespace {

void check_exponent_params(const ExponentParams& p) {
    require(p.n >= 2, "n >= 2");
    require(p.d >= 1 && p.s >= 1, "d, s >= 1");
    require(p.H_f >= 1 && p.abs_disc >= 1 && p.P_S >= 1 && p.N_S_b >= 1, "H_f, abs_disc, P_S, N_S_b >= 1");
}

}  // namespace

ExponentBound exponent_bound(const ExponentParams& p, const LogMagnitude& h_f) {
    check_exponent_params(p);
    const unsigned precision = h_f.precision_bits();
    const long n = p.n;
    const long s = p.s;
    const LogMagnitude ln_C = LogSum(precision)
                                  .ln(Q(4), Q(12 * n * n * s))
                                  .ln(Q(10 * n * n * s), Q(38 * n * s))
                                  .add(h_f, Q(12 * n * p.d))
                                  .ln(p.abs_disc, Q(6 * n))
                                  .ln(p.P_S, Q(n * n))
                                  .ln_log_star(Rational(p.P_S), Q(3 * n * s))
                                  .ln_log_star(p.N_S_b)
                                  .result();
    const LogMagnitude ln_m_max = LogSum(precision).ln(Q(2)).add(ln_C).add(ln_of(ln_C)).result();
    return {ln_C, ln_m_max};
}

ExponentBound exponent_bound(const ExponentParams& p, unsigned precision) {
    check_exponent_params(p);
    return exponent_bound(p, ln_upper(p.H_f, precision));
}

std::map<std::string, LogMagnitude> proof_constants(const ProofParams& p, unsigned precision) {
    require(p.n >= 2, "n >= 2");
    require(p.d >= 1 && p.s >= 1, "d, s >= 1");
    require(p.abs_disc >= 1 && p.P_S >= 1 && p.N_S_b >= 1, "abs_disc, P_S, N_S_b >= 1");
    require(p.h_f.upper().sign() >= 0, "h_f >= 0");
    const long n = p.n;
    const long s = p.s;
    const long d = p.d;
    const long ns = n * s;
    const Integer n4 = ipow(n, 4);
    const Rational log_star_P_pow = Q(ns - 1);
    const LogMagnitude& h = p.h_f;

    std::map<std::string, LogMagnitude> out;
    out["C0"] = LogSum(precision)
                    .ln(Rational(ipow(4, n) * ipow(n, 3) * s), Q(2 * ns))
                    .add(h, Q((2 * n - 2) * d))
                    .ln(p.abs_disc, Q(n))
                    .result();
    out["C1"] = LogSum(precision)
                    .ln(Q(1200))
                    .ln(Rational(ipow(4, 2 * n) * ipow(n, 9) * ipow(s, 4)), Q(ns))
                    .add(h, Q((2 * n - 2) * d))
                    .ln(p.abs_disc, Q(n))
                    .ln_log_star(Rational(p.P_S), log_star_P_pow)
                    .result();
    out["C2"] = LogSum(precision)
                    .ln(Rational(ipow(4, n) * n4 * s), Q(4 * ns))
                    .add(h, Q(4 * d * n))
                    .ln(p.abs_disc, Q(2 * n))
                    .ln_log_star(Rational(p.P_S))
                    .ln_log_star(p.N_S_b)
                    .result();
    out["C3"] = LogSum(precision)
                    .ln(Q(4), Q(4 * n * n * s))
                    .ln(Q(10 * n * n * s), Q(37 * ns))
                    .add(h, Q(11 * n * d))
                    .ln(p.abs_disc, Q(6 * n))
                    .ln(p.P_S, Q(n * n))
                    .ln_log_star(p.N_S_b)
                    .result();
    out["C4"] = LogSum(precision)
                    .ln(Rational(ipow(4, n) * n4 * s), Q(4 * ns))
                    .add(h, Q(4 * n * d))
                    .ln(p.abs_disc, Q(2 * n))
                    .ln_log_star(Rational(p.P_S), log_star_P_pow)
                    .result();
    out["C5"] = LogSum(precision)
                    .ln(Q(2 * 1200 * 1200))
                    .ln(Rational(ipow(4, 6 * n) * ipow(n, 25) * ipow(s, 8)), Q(2 * ns))
                    .add(h, Q(12 * n * d))
                    .ln(p.abs_disc, Q(6 * n))
                    .ln_log_star(Rational(p.P_S), Q(3 * ns))
                    .ln_log_star(p.N_S_b)
                    .result();
    // (32 e n^2 s)^{6ns+3}
    const Rational c6_exp = Q(6 * ns + 3);
    out["C6"] = LogSum(precision).ln(Q(32 * n * n * s), c6_exp).value(c6_exp).result();
    out["assembly_lhs"] = LogSum(precision)
                              .ln(Q(6 * n * n * s))
                              .add(out["C5"])
                              .add(out["C6"])
                              .ln(p.P_S, Q(n * n))
                              .result();
    const ExponentParams ep{n, d, s, Rational(1), p.abs_disc, p.P_S, p.N_S_b};
    out["assembly_rhs"] = exponent_bound(ep, LogMagnitude(h.upper(), precision)).ln_C;
    return out;
}

LogMagnitude thue_pell_bound(ThuePellKind kind, const ThuePellParams& p, unsigned precision) {
    const bool thue = kind == ThuePellKind::Thue;
    require(p.s >= 1 && p.d >= 1, "s, d >= 1");
    if (thue) {
        require(p.n >= 3, "n >= 3");
    }
    require(p.P_S > 0 && p.R_S > 0 && p.R_K > 0 && p.h_K > 0 && p.Q_S > 0 && p.A > 0 && p.B > 0,
            "all parameters > 0");
    require(p.P_S >= 1 && p.Q_S >= 1, "P_S, Q_S >= 1");
    LogSum acc(precision);
    acc.add(decomposable_c2(p.s, p.d, precision));
    if (thue) {
        acc.ln(Q(p.n), Q(6));
    }
    acc.add(ln_upper(p.P_S, precision)).add(ln_upper(p.R_S, precision));
    // 1 + log* R_S / log* P_S: upper numerator over lower denominator
    const Rational star_R = log_star_upper(p.R_S, precision).upper_rational();
    const Rational ln_P_lo = detail::ln_lower(p.P_S, precision).to_rational();
    const Rational star_P_lo = std::max(Rational(1), ln_P_lo);
    acc.ln(Rational(1) + star_R / star_P_lo);
    const Rational ln_Q = ln_upper(Rational(p.Q_S), precision).upper_rational();
    Rational bracket = p.R_K + p.h_K / Q(p.d) * ln_Q + p.B;
    bracket += thue ? Q(p.n * p.d) * p.A : Q(p.d) * p.A;
    acc.add(ln_upper(bracket, precision));
    return acc.result();
}

LogMagnitude baker_lower_exponent(long n, long d, const Integer& N_v, const LogMagnitude& ln_theta, const Rational& B,
                                  unsigned precision) {
    require(B >= 3, "B >= 3");
    require(N_v >= 2, "N_v >= 2");
    const LogMagnitude c1 = baker_c1(n, d, precision);
    const detail::Enclosure ln_N = detail::ln_enclosure(Rational(N_v), precision);
    // ln ln N from below, through a lower bound on ln N
    const Dyadic ln_ln_N_lo = detail::ln_lower(ln_N.lo.to_rational(), precision);
    const LogMagnitude ln_ln_B = ln_of(ln_upper(B, precision));
    return LogMagnitude(c1.upper() + ln_N.hi - ln_ln_N_lo + ln_theta.upper() + ln_ln_B.upper(), precision);
}

LogMagnitude baker_lower_exponent(long n, long d, const Integer& N_v, const Rational& theta, const Rational& B,
                                  unsigned precision) {
    require(theta > 0, "Theta > 0");
    return baker_lower_exponent(n, d, N_v, ln_upper(theta, precision), B, precision);
}

BoundReport analyze(const InvariantSet& inv, unsigned precision) {
    BoundReport rep;
    rep.tuple = exponent_tuple(inv.m, inv.multiplicities);
    rep.cls = classify(rep.tuple, inv.m);
    if (!is_excluded(rep.cls)) {
        rep.ln_height_bound = main_bound(rep.cls, inv, precision);
    }
    const LogMagnitude h_f = ln_upper(inv.H_f, precision);
    const ExponentParams ep{inv.n, inv.d, inv.s, inv.H_f, inv.abs_disc, inv.P_S, inv.N_S_b};
    const ExponentBound eb = exponent_bound(ep, h_f);
    rep.ln_exponent_C = eb.ln_C;
    rep.ln_exponent_bound = eb.ln_m_max;

    rep.constants["c1"] = baker_c1(inv.n, inv.d, precision);
    rep.constants["c2"] = decomposable_c2(inv.s, inv.d, precision);
    for (auto& [name, value] : proof_constants({inv.n, inv.d, inv.s, h_f, inv.abs_disc, inv.P_S, inv.N_S_b}, precision)) {
        rep.constants[name] = value;
    }
    rep.constants["hr_product"] = aux::hr_product(inv.abs_disc, inv.d, precision);
    rep.constants["radical_height"] = aux::radical_height(inv.n, inv.H_f, precision);
    rep.constants["disc_height"] = aux::disc_height(inv.n, h_f);
    if (inv.m >= 3) {
        rep.constants["simple_roots"] =
            simple_roots_bound({inv.n, inv.m, inv.d, inv.s, inv.abs_disc, inv.H_f, inv.Q_S, inv.N_S_b}, precision);
    }
    rep.voutier = voutier_floor(inv.d, precision);

    if (inv.derived_bound) {
        rep.flags.emplace_back("H_fstar derived as 2^n H_f^2");
    }
    if (rep.ln_height_bound) {
        rep.flags.emplace_back("height bound stated for solutions with y != 0; y = 0 gives the rational roots of f");
    } else {
        rep.flags.emplace_back("no finiteness bound available for this exponent tuple");
    }
    rep.flags.emplace_back("exponent bound assumes y != 0 and y not an S-unit");
    return rep;
}

}  // namespace seb
