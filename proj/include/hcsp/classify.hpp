#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcsp/behaviour.hpp"
#include "hcsp/relation.hpp"

namespace hcsp {

struct TrailEntry {
    std::string test;
    std::string outcome;
};

/// Finite quotient structure emitted with a Delegated verdict: the image of
/// the signature under a finite-image collapse, patterns over the equality
/// alphabet on a domain of `domain_size` elements.
struct Residual {
    int domain_size = 0;
    std::vector<OrbitRelation> relations;
};

struct Verdict {
    enum class Outcome { P, NPC, Delegated };

    Outcome outcome = Outcome::NPC;
    std::string solver;     // P: one of horn, c2w_minority, cw2_parity, trivial
    std::string behaviour;  // P: witnessing behaviour name
    std::string label;      // NPC hardness label, or the delegation reason
    std::vector<TrailEntry> trail;

    // for P verdicts obtained through a unary collapse
    std::string collapse_behaviour;        // empty when no collapse involved
    std::optional<Signature> collapsed;    // equality signature the solver runs on
    std::optional<Residual> residual;      // Delegated: the finite quotient

    bool is_p() const { return outcome == Outcome::P; }
};

const char* outcome_name(Verdict::Outcome o);

struct ClassifyOptions {
    bool deep = false;  // sweep all unary behaviour tables, report extras in the trail
    int cap = kDefaultArityCap;
};

/// The executable dichotomy. Solver-backed behaviours are tested before
/// collapse tests; any consistent order yields the same P/NPC outcome.
Verdict classify(const Signature& sig, const ClassifyOptions& opts = {});

/// Replaces every relation by the skeletons of its types; requires the
/// collapse behaviour to be realizable and to preserve every relation.
Signature collapse_equality(const Signature& sig, const Behaviour& b);

/// Classification of equality-base signatures: constant, meet-closed Horn,
/// or hard.
Verdict classify_equality(const Signature& sig, const ClassifyOptions& opts = {});

}  // namespace hcsp
