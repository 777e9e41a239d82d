#include "audits.hpp"
#include "seb/heights.hpp"

#include <doctest.h>

#include <random>

using namespace seb;
using audits::integer_poly;

namespace {

RationalInstance rational_instance(std::vector<long> f, long b, long m, std::vector<long> primes) {
    std::vector<Integer> ps(primes.begin(), primes.end());
    return {integer_poly(f), Rational(b), m, PlaceSet(ps)};
}

InvariantInstance invariant_instance() {
    InvariantInstance in;
    in.n = 2;
    in.r = 2;
    in.m = 3;
    in.d = 2;
    in.s = 2;
    in.abs_disc = 5;
    in.P_S = 1;
    in.Q_S = 1;
    in.N_S_b = 1;
    in.H_f = 1;
    in.multiplicities = {Integer(1), Integer(1)};
    return in;
}

}  // namespace

TEST_CASE("place sets") {
    const PlaceSet S({Integer(5), Integer(2)});
    CHECK(S.primes() == std::vector<Integer>{Integer(2), Integer(5)});
    CHECK(S.s() == 3);
    CHECK(S.P() == 5);
    CHECK(S.Q() == 10);
    CHECK(PlaceSet().P() == 1);
    CHECK(PlaceSet().Q() == 1);
    CHECK(S.is_s_integer(Rational(3, 20)));
    CHECK_FALSE(S.is_s_integer(Rational(1, 3)));
    CHECK(S.is_s_unit(Rational(8, 5)));
    CHECK_FALSE(S.is_s_unit(Rational(6)));
    CHECK_FALSE(S.is_s_unit(Rational(0)));
    CHECK(S.strip(Integer(-120)) == 3);
    CHECK_THROWS_AS(PlaceSet({Integer(4)}), InputError);
    CHECK_THROWS_AS(PlaceSet({Integer(3), Integer(3)}), InputError);
}

TEST_CASE("height_of_rational") {
    CHECK(height_of_rational(Rational(1)) == 1);
    CHECK(height_of_rational(Rational(3, 2)) == 3);
    CHECK(height_of_rational(Rational(-10)) == 10);
    CHECK(height_of_rational(Rational(-2, 7)) == 7);
    CHECK_THROWS_AS(height_of_rational(Rational(0)), InputError);
}

TEST_CASE("height_of_polynomial") {
    CHECK(height_of_polynomial(integer_poly({1, 0, 1})) == 1);
    CHECK(height_of_polynomial(integer_poly({2, 4, -6})) == 6);
    CHECK(height_of_polynomial(Polynomial({Rational(1, 2), Rational(0)})) == 2);
    CHECK(height_of_polynomial(integer_poly({2, 4, -6}), true) == 3);
    CHECK_THROWS_AS(height_of_polynomial(Polynomial()), InputError);
}

TEST_CASE("heights are invariant under sign and homogeneous scaling") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> coef(-40, 40);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Rational> c;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i <= n; ++i) {
            c.emplace_back(coef(rng), 1 + rng() % 12);
            c.back().canonicalize();
        }
        if (c[0] == 0) {
            c[0] = 1;
        }
        const Polynomial f(c);
        const Polynomial neg = Polynomial::constant(Rational(-1)) * f;
        CHECK(height_of_polynomial(neg) == height_of_polynomial(f));
        Rational lambda(coef(rng), 1 + rng() % 30);
        lambda.canonicalize();
        if (lambda == 0) {
            lambda = Rational(7, 3);
        }
        const Polynomial scaled = Polynomial::constant(lambda) * f;
        CHECK(height_of_polynomial(scaled, true) == height_of_polynomial(f, true));
        CHECK(height_of_polynomial(f) >= 1);
    }
}

TEST_CASE("s_norm") {
    CHECK(s_norm(Rational(12), PlaceSet({Integer(2), Integer(3)})) == 1);
    CHECK(s_norm(Rational(10), PlaceSet({Integer(2)})) == 5);
    CHECK(s_norm(Rational(7), PlaceSet()) == 7);
    CHECK(s_norm(Rational(-5, 4), PlaceSet({Integer(2)})) == 5);
    CHECK_THROWS_AS(s_norm(Rational(0), PlaceSet()), InputError);
}

TEST_CASE("shape_of examples") {
    const ShapeSummary a = shape_of(integer_poly({2, 2, -10, 6}));
    CHECK(a.n == 3);
    CHECK(a.r == 2);
    CHECK(a.multiplicities == std::vector<long>{2, 1});
    CHECK(a.f_star == integer_poly({2, 4, -6}));
    CHECK(a.H_f == 10);
    CHECK(a.H_fstar == 6);
    CHECK(a.disc_fstar == 64);

    const ShapeSummary b = shape_of(integer_poly({1, 0, 1}));
    CHECK(b.n == 2);
    CHECK(b.r == 2);
    CHECK(b.f_star == integer_poly({1, 0, 1}));
    CHECK(b.disc_fstar == -4);

    const ShapeSummary c = shape_of(integer_poly({1, 0, 0, 0}));
    CHECK(c.r == 1);
    CHECK(c.multiplicities == std::vector<long>{3});
    CHECK(c.f_star == integer_poly({1, 0}));
    CHECK(c.H_fstar == 1);

    CHECK_THROWS_AS(shape_of(integer_poly({1, 1})), InputError);
}

TEST_CASE("build_invariants in rational mode") {
    const InvariantSet a = build_invariants(rational_instance({2, 2, -10, 6}, 1, 2, {}));
    CHECK(a.n == 3);
    CHECK(a.r == 2);
    CHECK(a.m == 2);
    CHECK(a.d == 1);
    CHECK(a.s == 1);
    CHECK(a.abs_disc == 1);
    CHECK(a.P_S == 1);
    CHECK(a.Q_S == 1);
    CHECK(a.N_S_b == 1);
    CHECK(a.H_f == 10);
    CHECK(a.H_fstar == 6);
    CHECK(a.multiplicities == std::vector<long>{2, 1});
    CHECK_FALSE(a.derived_bound);

    const InvariantSet b = build_invariants(rational_instance({1, 0, 1}, 12, 5, {2, 3}));
    CHECK(b.s == 3);
    CHECK(b.P_S == 3);
    CHECK(b.Q_S == 6);
    CHECK(b.N_S_b == 1);

    CHECK_THROWS_AS(build_invariants(rational_instance({1, 0, 1}, 0, 5, {})), InputError);
    CHECK_THROWS_AS(build_invariants(rational_instance({1, 0, 1}, 1, 1, {})), InputError);
    CHECK_THROWS_AS(build_invariants(rational_instance({1, 1}, 1, 2, {})), InputError);
    RationalInstance frac = rational_instance({1, 0, 1}, 1, 2, {});
    frac.f = Polynomial({Rational(1), Rational(0), Rational(1, 3)});
    CHECK_THROWS_AS(build_invariants(frac), InputError);
    frac.places = PlaceSet({Integer(3)});
    CHECK_NOTHROW(build_invariants(frac));
    RationalInstance bad_b = rational_instance({1, 0, 1}, 1, 2, {});
    bad_b.b = Rational(1, 2);
    CHECK_THROWS_AS(build_invariants(bad_b), InputError);
}

TEST_CASE("build_invariants in invariant mode") {
    const InvariantSet v = build_invariants(invariant_instance());
    CHECK(v.n == 2);
    CHECK(v.d == 2);
    CHECK(v.s == 2);
    CHECK(v.abs_disc == 5);
    CHECK(v.H_fstar == 4);
    CHECK(v.derived_bound);
    CHECK_FALSE(v.shape.has_value());

    InvariantInstance given = invariant_instance();
    given.H_fstar = Rational(3);
    const InvariantSet w = build_invariants(given);
    CHECK(w.H_fstar == 3);
    CHECK_FALSE(w.derived_bound);

    InvariantInstance bad = invariant_instance();
    bad.n = 4;
    bad.multiplicities = {Integer(3), Integer(2)};
    try {
        build_invariants(bad);
        FAIL("expected an InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("multiplicities sum 5") != std::string::npos);
    }
    bad = invariant_instance();
    bad.N_S_b = Rational(1, 2);
    CHECK_THROWS_AS(build_invariants(bad), InputError);
    bad = invariant_instance();
    bad.P_S = 7;
    bad.Q_S = 3;
    CHECK_THROWS_AS(build_invariants(bad), InputError);
    bad = invariant_instance();
    bad.m = 1;
    CHECK_THROWS_AS(build_invariants(bad), InputError);
}

TEST_CASE("radical height bound on random polynomials with repeated factors") {
    const audits::Tally t = audits::radical_height(1000, 101);
    CHECK_MESSAGE(t.violations == 0, t.first_failure);
}

TEST_CASE("discriminant height bound") {
    const audits::Tally t = audits::discriminant_height(1000, 202);
    CHECK_MESSAGE(t.violations == 0, t.first_failure);
}

TEST_CASE("root height window on integer-rooted monics") {
    const audits::Tally t = audits::root_height_window(1000, 303);
    CHECK_MESSAGE(t.violations == 0, t.first_failure);
}

TEST_CASE("S-norm of an S-integer never exceeds its height") {
    const audits::Tally t = audits::s_norm_vs_height(10000, 404);
    CHECK_MESSAGE(t.violations == 0, t.first_failure);
}

TEST_CASE("lcm growth") {
    const audits::Tally t = audits::lcm_growth(2000);
    CHECK_MESSAGE(t.violations == 0, t.first_failure);
}
