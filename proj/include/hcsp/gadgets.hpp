#pragma once

#include <array>
#include <string>
#include <vector>

#include "hcsp/relation.hpp"

namespace hcsp {

/// The 6-ary hardness relation on henson(n): three blocks (1,2),(3,4),(5,6),
/// all cross-block pairs N, exactly one block E.
OrbitRelation relation_H(int henson_n);

/// Quantifier-free defining formula of the same relation, for cross-checks
/// against the formula compiler.
std::string relation_H_formula();

struct OneInThreeFormula {
    std::vector<std::string> variables;
    std::vector<std::array<std::string, 3>> clauses;  // distinct members each

    void validate() const;
};

/// Two CSP variables per formula variable, one H-constraint per clause;
/// satisfiable over henson(n) iff the formula is positive-1-in-3 satisfiable.
Instance reduce_1in3(const OneInThreeFormula& f);

/// Direct exponential check, the oracle for equisatisfiability tests.
bool brute_force_1in3(const OneInThreeFormula& f);

}  // namespace hcsp
