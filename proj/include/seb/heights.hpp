#pragma once

// Weil heights over Q, S-norms, and the invariants the bound formulas consume.

#include "seb/exact.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace seb {

/// Finite primes of S over Q. The infinite place is always included.
class PlaceSet {
  public:
    PlaceSet() = default;
    /// Sorts and validates; rejects duplicates and non-primes.
    explicit PlaceSet(std::vector<Integer> primes);

    const std::vector<Integer>& primes() const noexcept { return primes_; }
    long s() const noexcept { return 1 + finite_count(); }
    long finite_count() const noexcept { return static_cast<long>(primes_.size()); }

    bool contains(const Integer& p) const;
    /// Denominator supported on S.
    bool is_s_integer(const Rational& x) const;
    /// x != 0 and num * den supported on S.
    bool is_s_unit(const Rational& x) const;
    /// |n| with every S-prime removed.
    Integer strip(const Integer& n) const;

    /// Largest prime, or 1.
    Integer P() const;
    /// Product of the primes, or 1.
    Integer Q() const;

    friend bool operator==(const PlaceSet& a, const PlaceSet& b) { return a.primes_ == b.primes_; }

  private:
    std::vector<Integer> primes_;
};

/// H(x) = max(|num|, den).
Rational height_of_rational(const Rational& x);

/// H(f), or the homogeneous height when `homogeneous` is set.
Rational height_of_polynomial(const Polynomial& f, bool homogeneous = false);

/// N_S(x) = |x| * prod_{p in S} p^{-ord_p x}.
Rational s_norm(const Rational& x, const PlaceSet& S);

struct ShapeSummary {
    long n = 0;
    long r = 0;
    std::vector<long> multiplicities;  // non-increasing
    Polynomial f_star;
    Rational H_f;
    Rational H_fstar;
    Rational disc_fstar;
};

ShapeSummary shape_of(const Polynomial& f);

struct RationalInstance {
    Polynomial f;
    Rational b;
    long m = 0;
    PlaceSet places;
};

/// General number field data, supplied by the caller.
struct InvariantInstance {
    Integer n, r, m, d, s, abs_disc, P_S, Q_S;
    Rational N_S_b;
    Rational H_f;
    std::optional<Rational> H_fstar;
    std::vector<Integer> multiplicities;
};

using ProblemInstance = std::variant<RationalInstance, InvariantInstance>;

struct InvariantSet {
    long n = 0, r = 0, m = 0, d = 1, s = 1;
    std::vector<long> multiplicities;
    Integer abs_disc{1};
    Integer P_S{1};
    Integer Q_S{1};
    Rational N_S_b{1};
    Rational H_f{1};
    Rational H_fstar{1};
    /// H_fstar was not supplied and was replaced by 2^n H_f^2.
    bool derived_bound = false;
    std::optional<ShapeSummary> shape;
};

/// Validates the instance and fills every invariant. Throws InputError
/// naming the violated condition.
InvariantSet build_invariants(const ProblemInstance& input);

/// 2^n H^2
Rational radical_height_bound(long n, const Rational& H_f);

}  // namespace seb
