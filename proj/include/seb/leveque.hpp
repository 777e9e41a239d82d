#pragma once

// Exponent tuples m_i = m / gcd(m, e_i) and their classification.

#include <string>
#include <vector>

namespace seb {

struct ExponentTuple {
    std::vector<long> values;  // non-increasing, each >= 1
};

enum class LeVequeClass { ExcludedTrailingOnes, ExcludedTwoTwos, CaseI, CaseII, CaseIII };

ExponentTuple exponent_tuple(long m, const std::vector<long>& multiplicities);

/// Exclusions first, then CaseI, CaseII, CaseIII.
LeVequeClass classify(const ExponentTuple& t, long m);

bool is_excluded(LeVequeClass c);

std::string to_string(LeVequeClass c);
std::string to_string(const ExponentTuple& t);

}  // namespace seb
