#pragma once

#include <optional>
#include <string>

#include "hcsp/affine.hpp"
#include "hcsp/classify.hpp"
#include "hcsp/horn.hpp"

namespace hcsp {

struct SolveOptions {
    std::string solver = "auto";  // auto | oracle | horn | c2w_minority | cw2_parity | trivial
    int oracle_cap = kDefaultOracleCap;
    int cap = kDefaultArityCap;
    bool want_gf2 = false;
};

struct Solved {
    SolveResult result;
    std::string solver_used;
    std::optional<Verdict> verdict;   // present when classification ran
    std::optional<Gf2System> system;  // present when want_gf2 and a GF(2) solver ran
};

/// Classifies (unless a solver is forced) and dispatches. NPC and delegated
/// structures fall back to the oracle when the instance fits under the cap.
Solved dispatch_solve(const Signature& sig, const Instance& inst, const SolveOptions& opts = {});

/// The all-Equal assignment solver for constant-preserved signatures.
SolveResult solve_trivial(const Signature& sig, const Instance& inst);

}  // namespace hcsp
