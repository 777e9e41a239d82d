#pragma once

// Explicit height and exponent bounds for f(x) = b y^m, evaluated in log space.
// Every function returns a certified upper bound on the natural log of the
// stated right-hand side unless noted otherwise.

#include "seb/heights.hpp"
#include "seb/leveque.hpp"
#include "seb/logmag.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace seb {

/// Parameters outside a formula's hypotheses. The message names the condition.
class HypothesisError : public InputError {
  public:
    using InputError::InputError;
};

/// Lower bound for V(d): ln 2 at d = 1, 2 / (d (ln 3d)^3) above.
Dyadic voutier_floor(long d, unsigned precision = kDefaultPrecision);

/// ln c1 with c1 = 12 (16 e d)^{3n+2} (log* d)^2.
LogMagnitude baker_c1(long n, long d, unsigned precision = kDefaultPrecision);

/// ln c2 with c2 = s^{2s+4} 2^{7s+60} d^{2s+d+2}.
LogMagnitude decomposable_c2(long s, long d, unsigned precision = kDefaultPrecision);

namespace aux {

/// h_K R_K <= |D|^{1/2} (log* |D|)^{d-1}
LogMagnitude hr_product(const Integer& abs_disc, long d, unsigned precision = kDefaultPrecision);

struct DiscRootParams {
    long n = 2;
    Rational H_f{1};
    Integer abs_disc{1};
    long d = 1;
    long k = 1;
    /// k = 1 only: n^{(2n-1)d} H^{(2n-2)d} |D|^n instead of the general form.
    bool sharp_k1 = false;
    /// Roots of a non-monic f: (2^n n H)^{2dkn^k}, or the extra 2^{(2n-2)nd} when sharp.
    bool with_2n_factor = false;
};

/// Discriminant of the field generated by k roots of f.
LogMagnitude disc_root_field(const DiscRootParams& p, unsigned precision = kDefaultPrecision);

/// ln(2^n H(f)^2), bounding ln H(f*).
LogMagnitude radical_height(long n, const Rational& H_f, unsigned precision = kDefaultPrecision);

/// Upper bound on h(D(f)): (2n-1) ln n + (2n-2) h(f).
LogMagnitude disc_height(long n, const LogMagnitude& h_f);

/// k (1 + ord_p u(k)); a plain integer.
Integer ramification(long k, long ord_u);

struct EtaTwistParams {
    long d = 1;
    Rational N_S_alpha{1};
    long k = 1;
    Rational R_K{1};
    Rational h_K{1};
    Integer Q_S{1};
};

/// Upper bound on the height (1/d) ln N + k (39 d^{d+2} R_K + (h_K / d) ln Q).
LogMagnitude eta_twist(const EtaTwistParams& p, unsigned precision = kDefaultPrecision);

/// ln of |D_L|^{1/2} (log* |D_L|)^{d_L - 1} (log* P)^{t-1}.
LogMagnitude regulator_upper(const Integer& abs_disc_L, long d_L, const Integer& P, long t,
                             unsigned precision = kDefaultPrecision);

}  // namespace aux

enum class FieldDiscCase { I, II, III };

struct FieldParams {
    long d = 1;
    long r = 2;
    long m = 3;
    Rational H_fstar{1};
    Integer abs_disc{1};
    Integer Q_S{1};
    Rational N_S_b{1};
};

LogMagnitude field_disc_bound(FieldDiscCase which, const FieldParams& p, unsigned precision = kDefaultPrecision);

/// m_i (d r^3 H*^2)^{dr} |D|^r (80 (dr)^{dr+2} + ln Q) + m_i ln N, as a log.
LogMagnitude crucial_delta_bound(long m_i, long d, long r, const Rational& H_fstar, const Integer& abs_disc,
                                 const Integer& Q_S, const Rational& N_S_b, unsigned precision = kDefaultPrecision);

struct SimpleRootsParams {
    long n = 2;
    long m = 3;
    long d = 1;
    long s = 1;
    Integer abs_disc{1};
    Rational H_f{1};
    Integer Q_S{1};
    Rational N_S_b{1};
};

LogMagnitude simple_roots_bound(const SimpleRootsParams& p, unsigned precision = kDefaultPrecision);

/// ln of the bound on h(x) for the class's case.
/// Throws HypothesisError if `cls` is not the class of `inv`.
LogMagnitude main_bound(LeVequeClass cls, const InvariantSet& inv, unsigned precision = kDefaultPrecision);

struct ExponentParams {
    long n = 2;
    long d = 1;
    long s = 1;
    Rational H_f{1};
    Integer abs_disc{1};
    Integer P_S{1};
    Rational N_S_b{1};
};

struct ExponentBound {
    LogMagnitude ln_C;
    LogMagnitude ln_m_max;  // ln(2 C ln C)
};

ExponentBound exponent_bound(const ExponentParams& p, unsigned precision = kDefaultPrecision);
/// Same with h(f) given directly, H(f)^{12nd} read as e^{12nd h(f)}.
ExponentBound exponent_bound(const ExponentParams& p, const LogMagnitude& h_f);

struct ProofParams {
    long n = 2;
    long d = 1;
    long s = 1;
    LogMagnitude h_f;
    Integer abs_disc{1};
    Integer P_S{1};
    Rational N_S_b{1};
};

/// C0 ... C6, assembly_lhs = ln(6 n^2 s C5 C6 P^{n^2}), assembly_rhs = ln C.
std::map<std::string, LogMagnitude> proof_constants(const ProofParams& p, unsigned precision = kDefaultPrecision);

enum class ThuePellKind { Thue, Pell };

struct ThuePellParams {
    long s = 1;
    long d = 1;
    long n = 3;  // Thue only
    Rational P_S{1};
    Rational R_S{1};
    Rational R_K{1};
    Rational h_K{1};
    Integer Q_S{1};
    Rational A{1};
    Rational B{1};
};

LogMagnitude thue_pell_bound(ThuePellKind kind, const ThuePellParams& p, unsigned precision = kDefaultPrecision);

/// ln X for X >= c1 (N / ln N) Theta ln B, so |Lambda|_v > exp(-X).
LogMagnitude baker_lower_exponent(long n, long d, const Integer& N_v, const LogMagnitude& ln_theta,
                                  const Rational& B, unsigned precision = kDefaultPrecision);
LogMagnitude baker_lower_exponent(long n, long d, const Integer& N_v, const Rational& theta, const Rational& B,
                                  unsigned precision = kDefaultPrecision);

struct BoundReport {
    LeVequeClass cls = LeVequeClass::ExcludedTrailingOnes;
    ExponentTuple tuple;
    std::optional<LogMagnitude> ln_height_bound;
    LogMagnitude ln_exponent_C;
    LogMagnitude ln_exponent_bound;
    std::map<std::string, LogMagnitude> constants;
    Dyadic voutier;
    std::vector<std::string> flags;
};

BoundReport analyze(const InvariantSet& inv, unsigned precision = kDefaultPrecision);

}  // namespace seb
