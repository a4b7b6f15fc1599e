#include "hcsp/classify.hpp"

namespace hcsp {

const char* outcome_name(Verdict::Outcome o) {
    switch (o) {
        case Verdict::Outcome::P: return "P";
        case Verdict::Outcome::NPC: return "NPC";
        case Verdict::Outcome::Delegated: return "DELEGATED";
    }
    return "?";
}

namespace {

bool preserves_all(const Behaviour& b, const Signature& sig, std::vector<TrailEntry>& trail,
                   bool nonempty_only = false) {
    for (const auto& r : sig.relations) {
        if (nonempty_only && r.types.empty()) continue;
        std::string diag;
        if (!preserves(b, r, sig.base, &diag)) {
            trail.push_back({"preserves(" + b.name + ", " + r.name + ")", "false: " + diag});
            return false;
        }
    }
    trail.push_back({"preserves(" + b.name + ", all)", "true"});
    return true;
}

Verdict p_verdict(std::string solver, std::string behaviour, std::vector<TrailEntry> trail) {
    Verdict v;
    v.outcome = Verdict::Outcome::P;
    v.solver = std::move(solver);
    v.behaviour = std::move(behaviour);
    v.trail = std::move(trail);
    return v;
}

Verdict npc_verdict(std::string label, std::vector<TrailEntry> trail) {
    Verdict v;
    v.outcome = Verdict::Outcome::NPC;
    v.label = std::move(label);
    v.trail = std::move(trail);
    return v;
}

/// Equality classification applied to a collapsed signature; keeps the
/// collapse recorded on the verdict so the solve dispatcher can reproduce it.
Verdict classify_collapsed(const Signature& original, const Behaviour& collapse,
                           std::vector<TrailEntry> trail, const ClassifyOptions& opts) {
    Signature collapsed = collapse_equality(original, collapse);
    trail.push_back({"collapse(" + collapse.name + ")",
                     "collapsed to the equality base; a preserved collapse keeps the "
                     "all-distinct completion of every skeleton inside its relation"});
    Verdict inner = classify_equality(collapsed, opts);
    for (auto& t : inner.trail) trail.push_back(std::move(t));
    inner.trail = std::move(trail);
    inner.collapse_behaviour = collapse.name;
    if (inner.is_p()) inner.collapsed = std::move(collapsed);
    return inner;
}

void deep_unary_sweep(const Signature& sig, std::vector<TrailEntry>& trail) {
    // every unary behaviour table: images of E and N (Equal is fixed)
    const PairValue vals[] = {PairValue::E, PairValue::N, PairValue::Equal};
    for (PairValue ie : vals)
        for (PairValue in : vals) {
            Behaviour b = Behaviour::make(
                std::string("unary(E->") + pair_value_char(ie) + ",N->" + pair_value_char(in) +
                    ")",
                1, [&](std::span<const PairValue> v) {
                    if (v[0] == PairValue::E) return ie;
                    if (v[0] == PairValue::N) return in;
                    return PairValue::Equal;
                });
            if (!realizable(b, sig.base)) continue;
            bool all = true;
            for (const auto& r : sig.relations)
                if (!preserves(b, r, sig.base)) {
                    all = false;
                    break;
                }
            if (all) trail.push_back({"deep:" + b.name, "realizable and preserves all relations"});
        }
    trail.push_back({"deep", "order-free unary sweep complete; order-dependent unary "
                             "behaviours are not covered by this check"});
}

Verdict classify_henson(const Signature& sig, const ClassifyOptions& opts) {
    std::vector<TrailEntry> trail;
    if (preserves_all(behaviour_min(), sig, trail))
        return p_verdict("horn", "B_min", std::move(trail));
    Behaviour edgedel = behaviour_edgedel();
    bool edgedel_all = preserves_all(edgedel, sig, trail);
    if (edgedel_all) return classify_collapsed(sig, edgedel, std::move(trail), opts);
    if (preserves_all(behaviour_const(), sig, trail, /*nonempty_only=*/true))
        return p_verdict("trivial", "B_const", std::move(trail));
    if (opts.deep) deep_unary_sweep(sig, trail);
    trail.push_back({"hardness", "no min polymorphism and no unary collapse: the 6-ary "
                                 "one-in-three block relation is pp-definable"});
    return npc_verdict("henson-H-hard", std::move(trail));
}

Verdict classify_equiv_2_omega(const Signature& sig, const ClassifyOptions& opts) {
    std::vector<TrailEntry> trail;
    if (preserves_all(behaviour_xnor3(), sig, trail))
        return p_verdict("c2w_minority", "B_xnor3", std::move(trail));
    Behaviour cliquecol = behaviour_cliquecol();
    trail.push_back({"realizable(B_edgedel)", "false over equiv(2,omega), skipped"});
    if (preserves_all(cliquecol, sig, trail))
        return classify_collapsed(sig, cliquecol, std::move(trail), opts);
    if (preserves_all(behaviour_const(), sig, trail, /*nonempty_only=*/true))
        return p_verdict("trivial", "B_const", std::move(trail));
    if (opts.deep) deep_unary_sweep(sig, trail);
    trail.push_back({"hardness", "no xnor-hyperplane minority and no collapse: both the "
                                 "class action and the two-class quotient stay essential"});
    return npc_verdict("two-class-hard", std::move(trail));
}

Verdict classify_equiv_omega_2(const Signature& sig, const ClassifyOptions& opts) {
    std::vector<TrailEntry> trail;
    if (preserves_all(behaviour_min(), sig, trail))
        return p_verdict("horn", "B_min", std::move(trail));
    if (preserves_all(behaviour_h3(), sig, trail))
        return p_verdict("cw2_parity", "B_H3", std::move(trail));
    Behaviour edgedel = behaviour_edgedel();
    if (preserves_all(edgedel, sig, trail))
        return classify_collapsed(sig, edgedel, std::move(trail), opts);
    if (preserves_all(behaviour_const(), sig, trail, /*nonempty_only=*/true))
        return p_verdict("trivial", "B_const", std::move(trail));
    if (opts.deep) deep_unary_sweep(sig, trail);
    trail.push_back({"hardness", "no min polymorphism, no {E,=}-minority, no collapse"});
    return npc_verdict("two-element-class-hard", std::move(trail));
}

Verdict classify_equiv_other(const Signature& sig, const ClassifyOptions& opts) {
    // equiv with a finite parameter >= 3 on one side
    std::vector<TrailEntry> trail;
    if (preserves_all(behaviour_const(), sig, trail, /*nonempty_only=*/true))
        return p_verdict("trivial", "B_const", std::move(trail));

    // infinite-image collapses give the full equality classification
    for (Behaviour b : {behaviour_cliquecol(), behaviour_edgedel()}) {
        if (!realizable(b, sig.base)) {
            trail.push_back({"realizable(" + b.name + ")", "false"});
            continue;
        }
        if (preserves_all(b, sig, trail)) return classify_collapsed(sig, b, std::move(trail), opts);
    }

    // finite-image collapse: emit the quotient structure, delegated
    if (!is_omega(sig.base.n)) {
        Behaviour quot = behaviour_quotient();
        if (realizable(quot, sig.base) && preserves_all(quot, sig, trail)) {
            Verdict v;
            v.outcome = Verdict::Outcome::Delegated;
            v.label = "finite-quotient";
            Residual res;
            res.domain_size = sig.base.n;
            for (const auto& r : sig.relations) {
                std::vector<TypeMatrix> image;
                for (const auto& t : r.types) {
                    TypeMatrix q(t.arity());
                    for (int idx = 0; idx < t.pair_count(); ++idx)
                        q.set_cell(idx, t.cell(idx) == PairValue::N ? PairValue::N
                                                                    : PairValue::Equal);
                    image.push_back(q);
                }
                res.relations.push_back({r.name, r.arity, TypeSet(std::move(image))});
            }
            v.residual = std::move(res);
            trail.push_back({"quotient", "class quotient is a structure on " +
                                             std::to_string(sig.base.n) +
                                             " elements; its classification is delegated"});
            v.trail = std::move(trail);
            return v;
        }
    }
    if (opts.deep) deep_unary_sweep(sig, trail);
    trail.push_back({"hardness", "no collapse applies; the class action or the quotient "
                                 "action is essential on a finite domain of size >= 3"});
    return npc_verdict("finite-parameter-hard", std::move(trail));
}

}  // namespace

Signature collapse_equality(const Signature& sig, const Behaviour& b) {
    if (b.arity != 1) throw InputError("collapse_equality needs a unary behaviour");
    if (!realizable(b, sig.base))
        throw InputError("collapse behaviour " + b.name + " is not realizable over " +
                         sig.base.describe());
    for (const auto& r : sig.relations) {
        std::string diag;
        if (!preserves(b, r, sig.base, &diag))
            throw InputError("collapse behaviour does not preserve " + r.name + ": " + diag);
    }
    Signature out;
    out.base = BaseStructure::equality();
    for (const auto& r : sig.relations) {
        std::vector<TypeMatrix> sk;
        for (const auto& t : r.types) sk.push_back(skeleton(t));
        out.relations.push_back({r.name, r.arity, TypeSet(std::move(sk))});
    }
    return out;
}

Verdict classify_equality(const Signature& sig, const ClassifyOptions& opts) {
    if (!sig.base.is_equality())
        throw InputError("classify_equality expects the equality base");
    std::vector<TrailEntry> trail;

    bool all_const = true;
    for (const auto& r : sig.relations) {
        if (r.types.empty()) continue;
        if (!r.types.contains(TypeMatrix(r.arity, PairValue::Equal))) {
            all_const = false;
            break;
        }
    }
    trail.push_back({"constant", all_const ? "every nonempty relation contains the all-Equal type"
                                           : "some relation misses the all-Equal type"});
    if (all_const) return p_verdict("trivial", "B_const", std::move(trail));

    if (preserves_all(behaviour_eqmeet(), sig, trail))
        return p_verdict("horn", "B_eqmeet", std::move(trail));
    if (opts.deep) deep_unary_sweep(sig, trail);
    trail.push_back({"hardness", "neither constant nor meet-closed over equality"});
    return npc_verdict("equality-hard", std::move(trail));
}

Verdict classify(const Signature& sig, const ClassifyOptions& opts) {
    sig.validate();
    for (const auto& r : sig.relations)
        if (r.arity > opts.cap)
            throw InputError("relation " + r.name + " exceeds the arity cap");

    if (sig.base.is_henson()) return classify_henson(sig, opts);
    if (sig.base.is_equality()) return classify_equality(sig, opts);
    if (sig.base.n == 2 && is_omega(sig.base.s)) return classify_equiv_2_omega(sig, opts);
    if (is_omega(sig.base.n) && sig.base.s == 2) return classify_equiv_omega_2(sig, opts);
    return classify_equiv_other(sig, opts);
}

}  // namespace hcsp
