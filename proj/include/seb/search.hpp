#pragma once

// Brute-force search and verification for f(x) = b y^m over S-integers of Q.

#include "seb/heights.hpp"
#include "seb/logmag.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seb {

struct Solution {
    Rational x;
    Rational y;
    long m = 0;
    bool y_is_unit = false;
    bool y_is_zero = false;
    Dyadic ln_height_x;  // upper bound on h(x)
};

class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(std::uint64_t needed, std::uint64_t budget);
    std::uint64_t needed;
    std::uint64_t budget;
};

/// y in O_S with y^m = t, if any. For even m the non-negative root.
std::optional<Rational> mth_power_s_root(const Rational& t, long m, const PlaceSet& S);

/// Largest admissible H(x) = max(|num|, den).
class HeightCap {
  public:
    explicit HeightCap(Integer max_height);
    /// H <= e^{ln_cap}, with a relative slack of 1e-9 so that a decimal
    /// rendering of ln N still admits N.
    static HeightCap from_log(const Rational& ln_cap);
    /// Decimal ("4.6052"), rational ("3/2") or "ln(N)" for an exact integer cap.
    static HeightCap parse(std::string_view text);

    const Integer& max_height() const noexcept { return max_; }

  private:
    Integer max_;
};

struct SearchOptions {
    unsigned threads = 1;
    /// Falls back to SEB_NODE_BUDGET, then 1e8.
    std::optional<std::uint64_t> node_budget;
};

std::uint64_t default_node_budget();

/// All solutions with H(x) within the cap, sorted by x then y.
std::vector<Solution> solve(const RationalInstance& inst, const HeightCap& cap, const SearchOptions& opts = {});

struct SweepEntry {
    long m;
    std::vector<Solution> solutions;
};

/// solve for every m in [2, max_m], enumerating x once; inst.m is ignored.
std::vector<SweepEntry> exponent_sweep(const RationalInstance& inst, long max_m, const HeightCap& cap,
                                       const SearchOptions& opts = {});

struct Verdict {
    bool valid;
    std::string diagnostic;
};

Verdict verify_solution(const RationalInstance& inst, const Rational& x, const Rational& y);

}  // namespace seb
