#include "hcsp/solve.hpp"

#include <cstdio>

namespace hcsp {

SolveResult solve_trivial(const Signature& sig, const Instance& inst) {
    auto resolved = resolve(inst, sig);
    for (const auto& rc : resolved) {
        const auto& rel = sig.relations[static_cast<std::size_t>(rc.relation)];
        if (!rel.types.contains(TypeMatrix(rel.arity, PairValue::Equal)))
            return SolveResult::unsat();
    }
    const int n = static_cast<int>(inst.variables.size());
    return SolveResult::sat(Witness{inst.variables, TypeMatrix(std::max(n, 1), PairValue::Equal)});
}

namespace {

// lift an equality-base witness back to the original base after a collapse
Witness lift_witness(const Witness& w, const std::string& collapse_behaviour) {
    if (collapse_behaviour != "B_cliquecol") return w;  // edge deletion lifts as-is
    Witness out = w;
    for (int idx = 0; idx < out.type.pair_count(); ++idx)
        if (out.type.cell(idx) == PairValue::N) out.type.set_cell(idx, PairValue::E);
    return out;
}

Solved run_named(const std::string& solver, const Signature& sig, const Instance& inst,
                 const SolveOptions& opts, std::optional<Verdict> verdict) {
    Solved out;
    out.verdict = std::move(verdict);
    out.solver_used = solver;

    const Signature* use_sig = &sig;
    std::string collapse;
    if (out.verdict && out.verdict->collapsed) {
        use_sig = &*out.verdict->collapsed;
        collapse = out.verdict->collapse_behaviour;
    }

    if (solver == "oracle") {
        out.result = oracle_solve(sig, inst, opts.oracle_cap);
        return out;
    }
    if (solver == "trivial") {
        out.result = solve_trivial(sig, inst);
        return out;
    }
    if (solver == "horn") {
        HornSignature hs = compile_horn_signature(*use_sig, opts.cap);
        if (auto bad = hs.inexact_relation()) {
            // guarded fallback: a preserved relation should always compile
            std::fprintf(stderr,
                         "warning: relation %s failed exact horn compilation; "
                         "falling back to the bounded oracle\n",
                         bad->c_str());
            if (static_cast<int>(inst.variables.size()) <= opts.oracle_cap) {
                out.solver_used = "oracle";
                out.result = oracle_solve(sig, inst, opts.oracle_cap);
                return out;
            }
            throw InternalError("inexact horn compilation for " + *bad +
                                " and the instance exceeds the oracle cap");
        }
        out.result = horn_solve(hs, inst);
        if (out.result.status == Status::Sat && !collapse.empty())
            out.result.witness = lift_witness(*out.result.witness, collapse);
        return out;
    }
    if (solver == "c2w_minority") {
        Gf2System sys;
        out.result = solve_c2w_minority(sig, inst, opts.want_gf2 ? &sys : nullptr);
        if (opts.want_gf2) out.system = std::move(sys);
        return out;
    }
    if (solver == "cw2_parity") {
        ParitySignature ps = compile_parity_signature(*use_sig, opts.cap);
        if (auto bad = ps.inexact_relation()) {
            std::fprintf(stderr,
                         "warning: relation %s failed exact parity compilation; "
                         "falling back to the bounded oracle\n",
                         bad->c_str());
            if (static_cast<int>(inst.variables.size()) <= opts.oracle_cap) {
                out.solver_used = "oracle";
                out.result = oracle_solve(sig, inst, opts.oracle_cap);
                return out;
            }
            throw InternalError("inexact parity compilation for " + *bad +
                                " and the instance exceeds the oracle cap");
        }
        Gf2System sys;
        out.result = solve_cw2_parity(ps, inst, opts.want_gf2 ? &sys : nullptr);
        if (opts.want_gf2) out.system = std::move(sys);
        return out;
    }
    throw InputError("unknown solver: " + solver);
}

}  // namespace

Solved dispatch_solve(const Signature& sig, const Instance& inst, const SolveOptions& opts) {
    if (opts.solver != "auto") return run_named(opts.solver, sig, inst, opts, std::nullopt);
    Verdict v = classify(sig, {.deep = false, .cap = opts.cap});
    if (v.is_p()) {
        const std::string solver_name = v.solver;
        return run_named(solver_name, sig, inst, opts, std::move(v));
    }
    if (static_cast<int>(inst.variables.size()) <= opts.oracle_cap) {
        Solved out = run_named("oracle", sig, inst, opts, std::nullopt);
        out.verdict = std::move(v);
        return out;
    }
    throw InputError("classification is " + std::string(outcome_name(v.outcome)) +
                     " and the instance exceeds the oracle cap; no solver applies");
}

}  // namespace hcsp
