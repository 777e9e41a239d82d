#include "seb/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

namespace seb {

BudgetExceeded::BudgetExceeded(std::uint64_t needed_nodes, std::uint64_t budget_nodes)
    : std::runtime_error("search needs " + std::to_string(needed_nodes) + " candidates, budget is " +
                         std::to_string(budget_nodes)),
      needed(needed_nodes),
      budget(budget_nodes) {}

std::optional<Rational> mth_power_s_root(const Rational& t, long m, const PlaceSet& S) {
    if (m < 2) {
        throw InputError("m must be at least 2");
    }
    if (t == 0) {
        return Rational(0);
    }
    const bool negative = t < 0;
    if (negative && m % 2 == 0) {
        return std::nullopt;
    }
    const Integer& den = t.get_den();
    if (den != 1 && S.strip(den) != 1) {
        return std::nullopt;
    }
    const Integer num = abs(t.get_num());
    if (m == 2 && mpz_perfect_square_p(num.get_mpz_t()) == 0) {
        return std::nullopt;
    }
    const NthRoot rn = integer_nth_root(num, static_cast<unsigned long>(m));
    if (!rn.exact) {
        return std::nullopt;
    }
    const NthRoot rd = integer_nth_root(den, static_cast<unsigned long>(m));
    if (!rd.exact) {
        return std::nullopt;
    }
    Rational y(negative ? Integer(-rn.root) : rn.root, rd.root);
    y.canonicalize();
    return y;
}

HeightCap::HeightCap(Integer max_height) : max_(std::move(max_height)) {
    if (max_ < 1) {
        throw InputError("height cap must be at least 1");
    }
}

HeightCap HeightCap::from_log(const Rational& ln_cap) {
    if (ln_cap < 0) {
        throw InputError("cap must be non-negative");
    }
    const Rational slack = ln_cap * Rational(1, 1000000000);
    const Rational bound = exp_upper(Dyadic::ceil(ln_cap + slack, kDefaultPrecision));
    Integer h;
    mpz_fdiv_q(h.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
    return HeightCap(h < 1 ? Integer(1) : h);
}

HeightCap HeightCap::parse(std::string_view text) {
    if (text.size() > 4 && text.substr(0, 3) == "ln(" && text.back() == ')') {
        return HeightCap(parse_integer(text.substr(3, text.size() - 4)));
    }
    return from_log(parse_decimal(text));
}

std::uint64_t default_node_budget() {
    if (const char* env = std::getenv("SEB_NODE_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') {
            return v;
        }
    }
    return 100000000ULL;
}

namespace {

void check_instance(const RationalInstance& inst) {
    if (inst.f.is_zero()) {
        throw InputError("f must be nonzero");
    }
    for (const auto& a : inst.f.coefficients()) {
        if (!inst.places.is_s_integer(a)) {
            throw InputError("coefficient " + to_string(a) + " is not an S-integer");
        }
    }
    if (inst.b == 0) {
        throw InputError("b must be nonzero");
    }
    if (!inst.places.is_s_integer(inst.b)) {
        throw InputError("b = " + to_string(inst.b) + " is not an S-integer");
    }
}

// Products of S-primes up to `limit`, increasing.
std::vector<Integer> s_denominators(const PlaceSet& S, const Integer& limit) {
    std::vector<Integer> out{Integer(1)};
    for (const auto& p : S.primes()) {
        const std::size_t base = out.size();
        for (std::size_t i = 0; i < base; ++i) {
            Integer v = out[i] * p;
            while (v <= limit) {
                out.push_back(v);
                v *= p;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct WorkItem {
    std::size_t den_index;
    long lo;
    long hi;  // inclusive
};

constexpr long kBlock = 4096;

// Per-m result lists for every x in the cap.
std::vector<std::vector<Solution>> scan(const RationalInstance& inst, const std::vector<long>& ms,
                                        const HeightCap& cap, const SearchOptions& opts) {
    check_instance(inst);
    const std::uint64_t budget = opts.node_budget ? *opts.node_budget : default_node_budget();
    const Integer& H = cap.max_height();
    const Integer width = 2 * H + 1;
    if (!width.fits_slong_p() || width.get_ui() > budget) {
        throw BudgetExceeded(width.fits_ulong_p() ? width.get_ui() : UINT64_MAX, budget);
    }
    const std::vector<Integer> dens = s_denominators(inst.places, H);
    const std::uint64_t needed = dens.size() * width.get_ui();
    if (needed > budget) {
        throw BudgetExceeded(needed, budget);
    }
    const long N = H.get_si();

    // f(a/q) = F(a, q) / (L q^n) with F homogeneous, integer coefficients.
    Integer L(1);
    for (const auto& c : inst.f.coefficients()) {
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den().get_mpz_t());
    }
    std::vector<Integer> coeffs;
    for (const auto& c : inst.f.coefficients()) {
        coeffs.push_back(Integer(c * L));
    }
    const long n = inst.f.degree();

    std::vector<WorkItem> items;
    for (std::size_t i = 0; i < dens.size(); ++i) {
        for (long lo = -N; lo <= N; lo += kBlock) {
            items.push_back({i, lo, std::min(N, lo + kBlock - 1)});
        }
    }

    std::vector<std::vector<std::vector<Solution>>> results(items.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        Integer value, g;
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= items.size()) {
                return;
            }
            const WorkItem& item = items[idx];
            const Integer& q = dens[item.den_index];
            std::vector<std::vector<Solution>> local(ms.size());
            std::vector<Integer> qpows{Integer(1)};
            for (long i = 0; i < n; ++i) {
                qpows.push_back(qpows.back() * q);
            }
            const Integer& qn = qpows.back();
            const Rational scale = Rational(1) / (Rational(L * qn) * inst.b);
            for (long a = item.lo; a <= item.hi; ++a) {
                const Integer A(a);
                mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), q.get_mpz_t());
                if (g != 1) {
                    continue;
                }
                // F(a, q) = sum c_i a^{n-i} q^i by Horner in a
                value = 0;
                for (std::size_t i = 0; i < coeffs.size(); ++i) {
                    value = value * A + coeffs[i] * qpows[i];
                }
                const Rational t = Rational(value) * scale;
                Rational x(A, q);
                x.canonicalize();
                for (std::size_t k = 0; k < ms.size(); ++k) {
                    const auto root = mth_power_s_root(t, ms[k], inst.places);
                    if (!root) {
                        continue;
                    }
                    const Integer hx = std::max(Integer(abs(A)), q);
                    Solution sol{x, *root, ms[k], inst.places.is_s_unit(*root), *root == 0,
                                 ln_upper(Rational(hx)).upper()};
                    local[k].push_back(sol);
                    if (*root != 0 && ms[k] % 2 == 0) {
                        sol.y = -*root;
                        local[k].push_back(std::move(sol));
                    }
                }
            }
            results[idx] = std::move(local);
        }
    };

    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::vector<std::vector<Solution>> out(ms.size());
    for (auto& r : results) {
        for (std::size_t k = 0; k < ms.size(); ++k) {
            for (auto& s : r[k]) {
                out[k].push_back(std::move(s));
            }
        }
    }
    for (auto& list : out) {
        std::sort(list.begin(), list.end(), [](const Solution& u, const Solution& v) {
            return u.x != v.x ? u.x < v.x : u.y < v.y;
        });
    }
    return out;
}

}  // namespace

std::vector<Solution> solve(const RationalInstance& inst, const HeightCap& cap, const SearchOptions& opts) {
    if (inst.m < 2) {
        throw InputError("m must be at least 2");
    }
    return scan(inst, {inst.m}, cap, opts).front();
}

std::vector<SweepEntry> exponent_sweep(const RationalInstance& inst, long max_m, const HeightCap& cap,
                                       const SearchOptions& opts) {
    if (max_m < 2) {
        throw InputError("exponent range [2, " + std::to_string(max_m) + "] is empty");
    }
    std::vector<long> ms;
    for (long m = 2; m <= max_m; ++m) {
        ms.push_back(m);
    }
    auto lists = scan(inst, ms, cap, opts);
    std::vector<SweepEntry> out;
    for (std::size_t k = 0; k < ms.size(); ++k) {
        out.push_back({ms[k], std::move(lists[k])});
    }
    return out;
}

Verdict verify_solution(const RationalInstance& inst, const Rational& x, const Rational& y) {
    if (inst.m < 1) {
        return {false, "exponent m " + std::to_string(inst.m) + " is not positive"};
    }
    if (!inst.places.is_s_integer(x)) {
        return {false, "x = " + to_string(x) + " is not an S-integer"};
    }
    if (!inst.places.is_s_integer(y)) {
        return {false, "y = " + to_string(y) + " is not an S-integer"};
    }
    const Rational lhs = inst.f(x);
    Rational power(1);
    for (long i = 0; i < inst.m; ++i) {
        power *= y;
    }
    const Rational rhs = inst.b * power;
    if (lhs != rhs) {
        return {false, "equation fails: lhs " + to_string(lhs) + " ≠ rhs " + to_string(rhs)};
    }
    return {true, "ok"};
}

}  // namespace seb
