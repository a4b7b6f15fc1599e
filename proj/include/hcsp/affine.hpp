#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcsp/gf2.hpp"
#include "hcsp/oracle.hpp"
#include "hcsp/relation.hpp"

namespace hcsp {

// --------------------------------------------------------------------------
// equiv(2,omega): contraction, injectivization, Boolean minority pipeline

struct InjectivizeResult {
    bool rejected = false;            // a constraint became false
    Instance contracted;              // distinct-variable constraints over representatives
    std::vector<TypeSet> constraint_types;  // injectivized type set per contracted constraint
    std::vector<int> var_rep;         // original variable index -> contracted index
};

/// Contracts variables that every remaining type forces Equal, to a global
/// fixpoint, then restricts each constraint to its injective types.
InjectivizeResult injectivize(const Signature& sig, const Instance& inst);

/// Class-indicator reduction: one Boolean per contracted variable, each
/// constraint contributes the affine hull of its class patterns.
SolveResult solve_c2w_minority(const Signature& sig, const Instance& inst,
                               Gf2System* emit_system = nullptr);

// --------------------------------------------------------------------------
// equiv(omega,2): parity normal form and component-fixpoint solver

/// Clause  N(p_1) v ... v N(p_m) v head, where head is either Eq(q) for a
/// pair q outside the body, or a parity condition on a subset of the body
/// pairs: |{i in sel : pair_i is E}| = parity_bit (mod 2).
struct ParityClause {
    enum class Head : std::uint8_t { Eq, Parity };
    std::vector<std::pair<int, int>> body;  // position pairs, ascending
    Head head = Head::Parity;
    std::pair<int, int> eq_pair{-1, -1};
    std::vector<int> sel;  // indices into body
    int parity_bit = 0;

    bool satisfied_by(const TypeMatrix& m) const;
};

struct ParityCompilation {
    bool exact = false;
    std::vector<ParityClause> clauses;
    std::optional<TypeMatrix> separating;
};

/// Compiles a relation over equiv(omega,2) into parity clauses; exact iff
/// the type set is closed under the N-dominated {E,=}-minority.
ParityCompilation compile_parity(const OrbitRelation& r, const BaseStructure& base,
                                 int cap = kDefaultArityCap);

struct ParitySignature {
    Signature sig;
    std::vector<ParityCompilation> compiled;

    std::optional<std::string> inexact_relation() const;
};

ParitySignature compile_parity_signature(const Signature& sig, int cap = kDefaultArityCap);

/// Component fixpoint over the Eq-head clauses, then a GF(2) system over
/// pair variables (with the triangle equations xy+yz=xz for all triples) for
/// small instances, or the equivalent per-variable bit encoding above
/// `pair_mode_threshold` variables.
SolveResult solve_cw2_parity(const ParitySignature& psig, const Instance& inst,
                             Gf2System* emit_system = nullptr,
                             int pair_mode_threshold = 25);

}  // namespace hcsp
