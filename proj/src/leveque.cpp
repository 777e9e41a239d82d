#include "seb/leveque.hpp"

#include "seb/exact.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace seb {

ExponentTuple exponent_tuple(long m, const std::vector<long>& multiplicities) {
    if (m < 2) {
        throw InputError("m must be at least 2");
    }
    if (multiplicities.empty()) {
        throw InputError("empty multiplicity list");
    }
    ExponentTuple t;
    for (long e : multiplicities) {
        if (e < 1) {
            throw InputError("multiplicity " + std::to_string(e) + " is below 1");
        }
        t.values.push_back(m / std::gcd(m, e));
    }
    std::sort(t.values.begin(), t.values.end(), std::greater<>());
    return t;
}

LeVequeClass classify(const ExponentTuple& t, long m) {
    (void)m;
    const auto& v = t.values;
    if (v.empty()) {
        throw InputError("empty exponent tuple");
    }
    const bool tail_ones = std::all_of(v.begin() + 1, v.end(), [](long x) { return x == 1; });
    if (tail_ones) {
        return LeVequeClass::ExcludedTrailingOnes;
    }
    if (v[0] == 2 && v[1] == 2 && std::all_of(v.begin() + 2, v.end(), [](long x) { return x == 1; })) {
        return LeVequeClass::ExcludedTwoTwos;
    }
    if (v.size() >= 3 && v[0] == 2 && v[1] == 2 && v[2] == 2) {
        return LeVequeClass::CaseI;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (std::gcd(v[i], v[j]) >= 3) {
                return LeVequeClass::CaseII;
            }
        }
    }
    return LeVequeClass::CaseIII;
}

bool is_excluded(LeVequeClass c) {
    return c == LeVequeClass::ExcludedTrailingOnes || c == LeVequeClass::ExcludedTwoTwos;
}

std::string to_string(LeVequeClass c) {
    switch (c) {
        case LeVequeClass::ExcludedTrailingOnes: return "ExcludedTrailingOnes";
        case LeVequeClass::ExcludedTwoTwos: return "ExcludedTwoTwos";
        case LeVequeClass::CaseI: return "CaseI";
        case LeVequeClass::CaseII: return "CaseII";
        case LeVequeClass::CaseIII: return "CaseIII";
    }
    return "unknown";
}

std::string to_string(const ExponentTuple& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        out += (i ? "," : "") + std::to_string(t.values[i]);
    }
    return out + ")";
}

}  // namespace seb
