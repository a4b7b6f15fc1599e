#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hcsp/oracle.hpp"
#include "hcsp/relation.hpp"

namespace hcsp {

/// Body literals are value tests on a position pair, each true of N so that
/// assigning N to underived pairs keeps unfired clauses satisfied:
///   IsN: value is N;  IsNeq: value is not Equal;  NotE: value is not E.
enum class LitForm : std::uint8_t { IsN, IsNeq, NotE };

struct HornLiteral {
    int p = 0, q = 0;  // positions, p < q
    LitForm form = LitForm::IsN;
};

/// Disjunction  l_1 v ... v l_m v head  with head one of E(p,q),
/// Equal(p,q), or false.
struct HornClause {
    enum class Head : std::uint8_t { E, Equal, False };
    std::vector<HornLiteral> body;
    Head head = Head::False;
    int hp = -1, hq = -1;

    bool satisfied_by(const TypeMatrix& m) const;
};

struct HornCompilation {
    bool exact = false;
    std::vector<HornClause> clauses;
    std::optional<TypeMatrix> separating;  // valid type witnessing inexactness
};

/// Compiles a relation into Horn clauses whose joint models among the valid
/// types are exactly the relation's type set. Exactness holds precisely when
/// the set is closed under the pointwise meet (the min behaviour); otherwise
/// the result is inexact and carries a separating type.
/// Bases: henson, equiv(omega,2), equality.
HornCompilation compile_horn(const OrbitRelation& r, const BaseStructure& base,
                             int cap = kDefaultArityCap);

/// Signature with every relation horn-compiled.
struct HornSignature {
    Signature sig;
    std::vector<HornCompilation> compiled;

    /// nullopt when fully exact, else the name of an inexact relation.
    std::optional<std::string> inexact_relation() const;
};

HornSignature compile_horn_signature(const Signature& sig, int cap = kDefaultArityCap);

/// Union-find over variables plus forced-E edges between class
/// representatives; the conflict flag records a reflexive E derivation.
class FactState {
public:
    explicit FactState(int vars);

    int find(int x) const;
    bool same(int x, int y) const { return find(x) == find(y); }

    /// Derive Equal(x,y). False on conflict (a forced E becomes reflexive).
    bool merge(int x, int y);
    /// Derive E(x,y). False on conflict (x and y already identified).
    bool add_edge(int x, int y);
    bool has_edge(int x, int y) const;

    bool conflict() const { return conflict_; }
    void set_conflict() { conflict_ = true; }
    std::uint64_t revision() const { return revision_; }
    int vars() const { return static_cast<int>(parent_.size()); }

    /// Forced-E edges as representative pairs, each listed once.
    std::vector<std::pair<int, int>> edges() const;
    const std::vector<int>& neighbours(int rep) const;
    const std::vector<int>& members(int rep) const;

private:
    mutable std::vector<int> parent_;
    std::vector<std::vector<int>> members_;
    std::vector<std::vector<int>> adj_;  // E-facts between reps
    std::unordered_set<std::uint64_t> edge_keys_;
    bool conflict_ = false;
    std::uint64_t revision_ = 0;
};

struct CheckResult {
    bool ok = true;
    std::string reason;
};

/// Base-specific closing conditions on a propagation fixpoint. For henson:
/// conflict, reflexive E, or a forced-E clique of size n. For
/// equiv(omega,2): saturates the matching rule (E(x,y) and E(x,z) identify
/// y and z, classes have two members) and reports merge conflicts; the
/// caller re-propagates while the state keeps changing. For the equality
/// base: the conflict flag alone.
CheckResult final_check(FactState& facts, const BaseStructure& base);

/// Unit propagation over the instantiated clause sets to a fixpoint,
/// interleaved with final_check, witness by N-completion.
SolveResult horn_solve(const HornSignature& hsig, const Instance& inst);

/// Decides CSP(E, Ehat, NEQ) over henson(n) or equiv(omega,2) directly:
/// reflexive E or NEQ constraints, an E/Ehat clash on a pair, a forced-E
/// K_n (henson), or a failed matching saturation (equiv) are the only
/// obstructions.
Status solve_hat(const BaseStructure& base, const Instance& inst);

}  // namespace hcsp
