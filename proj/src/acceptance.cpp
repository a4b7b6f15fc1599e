#include "hcsp/acceptance.hpp"

#include <chrono>
#include <set>
#include <sstream>
#include <vector>

#include "hcsp/gadgets.hpp"
#include "hcsp/solve.hpp"

namespace hcsp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
    std::ostream& out;
    int number;
    std::string title;
    double budget_s;
    Clock::time_point t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;

    Criterion(std::ostream& o, int n, std::string t, double budget)
        : out(o), number(n), title(std::move(t)), budget_s(budget) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }

    bool finish() {
        const double elapsed = seconds_since(t0);
        if (elapsed > budget_s) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << "over budget (" << elapsed << "s > " << budget_s << "s)";
        }
        out << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << title << " ("
            << elapsed << "s)";
        if (!ok) out << " -- " << detail.str();
        out << "\n";
        return ok;
    }
};

const char* kImpFormula = "!E(1,2)|E(3,4)";
const char* kOrFormula = "E(1,2)|E(3,4)";
const char* kAFormula =
    "!(Eq(1,2)&Eq(3,4)&Eq(5,6))"
    " | (E(1,2)&E(3,4)&E(5,6))"
    " | (E(1,2)&eq(3,4)&eq(5,6))"
    " | (eq(1,2)&E(3,4)&eq(5,6))"
    " | (eq(1,2)&eq(3,4)&E(5,6))";

Signature henson_sig(int n, std::vector<std::pair<std::string, std::pair<std::string, int>>> rels) {
    Signature sig;
    sig.base = BaseStructure::henson(n);
    for (auto& [name, def] : rels)
        sig.relations.push_back(compile_formula(name, def.first, def.second, sig.base));
    return sig;
}

// shared witness-soundness counters for criteria 2-4
struct WitnessStats {
    long sat_runs = 0;
    long verified = 0;
};

bool criterion1(std::ostream& out) {
    Criterion c(out, 1, "classifier catalog", 10.0);

    auto check = [&](const Signature& sig, Verdict::Outcome want, const std::string& label) {
        Verdict v = classify(sig);
        c.require(v.outcome == want,
                  label + ": got " + outcome_name(v.outcome) + ", want " + outcome_name(want));
    };

    for (int n : {3, 4}) {
        Signature sig;
        sig.base = BaseStructure::henson(n);
        sig.relations.push_back(compile_formula("E", "E(1,2)", 2, sig.base));
        sig.relations.push_back(compile_formula("N", "N(1,2)", 2, sig.base));
        sig.relations.push_back(relation_H(n));
        check(sig, Verdict::Outcome::NPC, "(henson(" + std::to_string(n) + "); E,N,H)");
    }
    check(henson_sig(3, {{"E", {"E(1,2)", 2}}, {"IMP", {kImpFormula, 4}}}), Verdict::Outcome::P,
          "(henson(3); E, E=>E)");
    check(henson_sig(3, {{"OR", {kOrFormula, 4}}}), Verdict::Outcome::NPC, "(henson(3); EvE)");
    {
        Signature sig;
        sig.base = BaseStructure::equiv(kOmega, 2);
        sig.relations.push_back(compile_formula("Eq", "Eq(1,2)", 2, sig.base));
        sig.relations.push_back(compile_formula("A", kAFormula, 6, sig.base));
        check(sig, Verdict::Outcome::P, "(equiv(omega,2); Eq, A)");
    }
    check(henson_sig(3, {{"EQ", {"eq(1,2)", 2}}}), Verdict::Outcome::P, "(henson(3); x=y)");
    {
        Signature sig;
        sig.base = BaseStructure::equality();
        sig.relations.push_back(compile_formula(
            "XOR", "(eq(1,2)&neq(3,4))|(neq(1,2)&eq(3,4))", 4, sig.base));
        check(sig, Verdict::Outcome::NPC, "(equality; xor pattern)");
    }
    return c.finish();
}

bool criterion2(std::ostream& out, WitnessStats& stats) {
    Criterion c(out, 2, "oracle equivalence of the horn solver", 60.0);
    long done = 0;

    auto run_base = [&](const BaseStructure& base, std::uint64_t seed0, int count) {
        Signature sig;
        sig.base = base;
        sig.relations.push_back(compile_formula("E", "E(1,2)", 2, base));
        sig.relations.push_back(compile_formula("NEQ", "neq(1,2)", 2, base));
        sig.relations.push_back(compile_formula("EQ", "eq(1,2)", 2, base));
        sig.relations.push_back(compile_formula("IMP", kImpFormula, 4, base));
        Behaviour bmin = behaviour_min();
        OrbitRelation r3 = random_relation(base, 3, seed0 + 1, &bmin);
        r3.name = "R3";
        OrbitRelation r4 = random_relation(base, 4, seed0 + 2, &bmin);
        r4.name = "R4";
        sig.relations.push_back(r3);
        sig.relations.push_back(r4);

        for (const auto& r : sig.relations) {
            std::string diag;
            c.require(preserves(bmin, r, base, &diag), r.name + " not min-preserved: " + diag);
        }
        HornSignature hs = compile_horn_signature(sig);
        c.require(!hs.inexact_relation(), "inexact horn compilation over " + base.describe());
        if (!c.ok) return;

        Rng rng(seed0);
        for (int i = 0; i < count; ++i) {
            int vars = 2 + static_cast<int>(rng.below(5));
            int cons = 1 + static_cast<int>(rng.below(5));
            Instance inst = random_instance(sig, vars, cons, seed0 + 100 + static_cast<std::uint64_t>(i));
            auto horn = horn_solve(hs, inst);
            auto oracle = oracle_solve(sig, inst);
            ++done;
            if (horn.status != oracle.status) {
                c.require(false, base.describe() + " instance " + std::to_string(i) +
                                     ": horn=" + status_name(horn.status) +
                                     " oracle=" + status_name(oracle.status));
                return;
            }
            if (horn.status == Status::Sat) {
                ++stats.sat_runs;
                std::string why;
                if (verify_witness(sig, inst, *horn.witness, &why)) ++stats.verified;
                else c.require(false, "horn witness failed: " + why);
            }
        }
    };

    run_base(BaseStructure::henson(3), 1000, 170);
    run_base(BaseStructure::henson(4), 2000, 170);
    run_base(BaseStructure::equiv(kOmega, 2), 3000, 170);
    c.require(done >= 500, "only " + std::to_string(done) + " instances ran");
    return c.finish();
}

bool criterion3(std::ostream& out, WitnessStats& stats) {
    Criterion c(out, 3, "oracle equivalence of the affine solvers", 120.0);

    // equiv(2,omega): xnor-minority pipeline
    {
        BaseStructure base = BaseStructure::equiv(2, kOmega);
        Signature sig;
        sig.base = base;
        sig.relations.push_back(compile_formula("E", "E(1,2)", 2, base));
        sig.relations.push_back(compile_formula("N", "N(1,2)", 2, base));
        sig.relations.push_back(compile_formula("Eq", "Eq(1,2)", 2, base));
        sig.relations.push_back(compile_formula("EQ", "eq(1,2)", 2, base));
        Behaviour xnor3 = behaviour_xnor3();
        OrbitRelation r3 = random_relation(base, 3, 41, &xnor3);
        r3.name = "R3";
        OrbitRelation r4 = random_relation(base, 4, 42, &xnor3);
        r4.name = "R4";
        sig.relations.push_back(r3);
        sig.relations.push_back(r4);
        for (const auto& r : sig.relations) {
            std::string diag;
            c.require(preserves(xnor3, r, base, &diag), r.name + " not xnor-preserved: " + diag);
        }

        Rng rng(4000);
        for (int i = 0; i < 500 && c.ok; ++i) {
            int vars = 2 + static_cast<int>(rng.below(5));
            int cons = 1 + static_cast<int>(rng.below(5));
            Instance inst = random_instance(sig, vars, cons, 5000 + static_cast<std::uint64_t>(i));
            auto got = solve_c2w_minority(sig, inst);
            auto want = oracle_solve(sig, inst);
            if (got.status != want.status) {
                c.require(false, "c2w instance " + std::to_string(i) + ": got " +
                                     status_name(got.status) + ", oracle " +
                                     status_name(want.status));
                break;
            }
            if (got.status == Status::Sat) {
                ++stats.sat_runs;
                std::string why;
                if (verify_witness(sig, inst, *got.witness, &why)) ++stats.verified;
                else c.require(false, "c2w witness failed: " + why);
            }
        }
    }

    // equiv(omega,2): parity pipeline, including Eq, neq and the 6-ary A
    {
        BaseStructure base = BaseStructure::equiv(kOmega, 2);
        Signature sig;
        sig.base = base;
        sig.relations.push_back(compile_formula("Eq", "Eq(1,2)", 2, base));
        sig.relations.push_back(compile_formula("NEQ", "neq(1,2)", 2, base));
        sig.relations.push_back(compile_formula("A", kAFormula, 6, base));
        Behaviour h3 = behaviour_h3();
        OrbitRelation r3 = random_relation(base, 3, 43, &h3);
        r3.name = "R3";
        OrbitRelation r4 = random_relation(base, 4, 44, &h3);
        r4.name = "R4";
        sig.relations.push_back(r3);
        sig.relations.push_back(r4);
        for (const auto& r : sig.relations) {
            std::string diag;
            c.require(preserves(h3, r, base, &diag), r.name + " not h3-preserved: " + diag);
        }
        ParitySignature ps = compile_parity_signature(sig);
        c.require(!ps.inexact_relation(), "inexact parity compilation");

        Rng rng(6000);
        for (int i = 0; i < 500 && c.ok; ++i) {
            int vars = 2 + static_cast<int>(rng.below(5));
            int cons = 1 + static_cast<int>(rng.below(5));
            Instance inst = random_instance(sig, vars, cons, 7000 + static_cast<std::uint64_t>(i));
            auto got = solve_cw2_parity(ps, inst);
            auto want = oracle_solve(sig, inst);
            if (got.status != want.status) {
                c.require(false, "cw2 instance " + std::to_string(i) + ": got " +
                                     status_name(got.status) + ", oracle " +
                                     status_name(want.status));
                break;
            }
            if (got.status == Status::Sat) {
                ++stats.sat_runs;
                std::string why;
                if (verify_witness(sig, inst, *got.witness, &why)) ++stats.verified;
                else c.require(false, "cw2 witness failed: " + why);
            }
        }
    }
    return c.finish();
}

bool criterion4(std::ostream& out, WitnessStats& stats) {
    Criterion c(out, 4, "gadget equisatisfiability (exhaustive formulas)", 120.0);
    Signature sig;
    sig.base = BaseStructure::henson(3);
    sig.relations.push_back(relation_H(3));

    const std::vector<std::string> names = {"a", "b", "c", "d"};
    long checked = 0;
    for (int v = 0; v <= 4 && c.ok; ++v) {
        OneInThreeFormula base_f;
        for (int i = 0; i < v; ++i) base_f.variables.push_back(names[static_cast<std::size_t>(i)]);
        // all clause triples over v variables
        std::vector<std::array<std::string, 3>> triples;
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j)
                for (int k = j + 1; k < v; ++k)
                    triples.push_back({base_f.variables[static_cast<std::size_t>(i)],
                                       base_f.variables[static_cast<std::size_t>(j)],
                                       base_f.variables[static_cast<std::size_t>(k)]});
        const int t = static_cast<int>(triples.size());
        for (int mask = 0; mask < (1 << t) && c.ok; ++mask) {
            if (__builtin_popcount(static_cast<unsigned>(mask)) > 3) continue;
            OneInThreeFormula f = base_f;
            for (int i = 0; i < t; ++i)
                if (mask >> i & 1) f.clauses.push_back(triples[static_cast<std::size_t>(i)]);
            Instance inst = reduce_1in3(f);
            auto got = oracle_solve(sig, inst);
            bool want = brute_force_1in3(f);
            ++checked;
            if ((got.status == Status::Sat) != want) {
                c.require(false, "formula with " + std::to_string(v) + " vars, mask " +
                                     std::to_string(mask) + ": oracle " +
                                     status_name(got.status) + ", brute force " +
                                     (want ? "SAT" : "UNSAT"));
                break;
            }
            if (got.status == Status::Sat) {
                ++stats.sat_runs;
                std::string why;
                if (verify_witness(sig, inst, *got.witness, &why)) ++stats.verified;
                else c.require(false, "gadget witness failed: " + why);
            }
        }
    }
    c.require(checked >= 20, "too few formulas enumerated");
    return c.finish();
}

bool criterion5(std::ostream& out) {
    Criterion c(out, 5, "compiler exactness on the bundled corpus", 60.0);

    auto horn_corpus = [&](const BaseStructure& base, std::uint64_t seed) {
        Behaviour bmin = behaviour_min();
        std::vector<OrbitRelation> rels;
        rels.push_back(compile_formula("E", "E(1,2)", 2, base));
        rels.push_back(compile_formula("NEQ", "neq(1,2)", 2, base));
        rels.push_back(compile_formula("EQ", "eq(1,2)", 2, base));
        rels.push_back(compile_formula("IMP", kImpFormula, 4, base));
        rels.push_back(random_relation(base, 3, seed, &bmin));
        rels.push_back(random_relation(base, 4, seed + 1, &bmin));
        for (const auto& r : rels) {
            if (!preserves(bmin, r, base)) {
                c.require(false, r.name + " unexpectedly not preserved over " + base.describe());
                continue;
            }
            auto comp = compile_horn(r, base);
            c.require(comp.exact, "inexact horn compilation of " + r.name + " over " +
                                      base.describe());
        }
    };
    horn_corpus(BaseStructure::henson(3), 8001);
    horn_corpus(BaseStructure::henson(4), 8011);
    horn_corpus(BaseStructure::equiv(kOmega, 2), 8021);
    {
        BaseStructure eq = BaseStructure::equality();
        Behaviour meet = behaviour_eqmeet();
        std::vector<OrbitRelation> rels;
        rels.push_back(compile_formula("NEQ", "neq(1,2)", 2, eq));
        rels.push_back(compile_formula("EQ3", "eq(1,2)&eq(2,3)", 3, eq));
        rels.push_back(random_relation(eq, 3, 8031, &meet));
        for (const auto& r : rels) {
            auto comp = compile_horn(r, eq);
            c.require(comp.exact, "inexact equality-horn compilation of " + r.name);
        }
    }

    {
        BaseStructure base = BaseStructure::equiv(kOmega, 2);
        Behaviour h3 = behaviour_h3();
        std::vector<OrbitRelation> rels;
        rels.push_back(compile_formula("Eq", "Eq(1,2)", 2, base));
        rels.push_back(compile_formula("NEQ", "neq(1,2)", 2, base));
        rels.push_back(compile_formula("EQ", "eq(1,2)", 2, base));
        rels.push_back(compile_formula("E", "E(1,2)", 2, base));
        rels.push_back(compile_formula("A", kAFormula, 6, base));
        rels.push_back(random_relation(base, 3, 8041, &h3));
        rels.push_back(random_relation(base, 4, 8042, &h3));
        for (const auto& r : rels) {
            if (!preserves(h3, r, base)) {
                c.require(false, r.name + " unexpectedly not h3-preserved");
                continue;
            }
            auto comp = compile_parity(r, base);
            c.require(comp.exact, "inexact parity compilation of " + r.name);
        }
    }
    return c.finish();
}

bool criterion6(std::ostream& out) {
    Criterion c(out, 6, "behaviour realizability obstructions", 60.0);
    Behaviour maj = behaviour_majority();
    Behaviour frag = Behaviour::make("B_minorityfrag", 3, [](std::span<const PairValue> v) {
        int eqs = 0, es = 0;
        for (PairValue x : v) {
            eqs += x == PairValue::Equal;
            es += x == PairValue::E;
        }
        if (eqs == 3) return PairValue::Equal;
        if (eqs > 0) return PairValue::N;
        // exactly the two one-in-three conditions produce an edge
        if (v[0] == PairValue::N && v[1] == PairValue::N && v[2] == PairValue::E)
            return PairValue::E;
        if (v[0] == PairValue::E && v[1] == PairValue::N && v[2] == PairValue::N)
            return PairValue::E;
        return PairValue::N;
    });
    Behaviour bmin = behaviour_min();
    for (int n : {3, 4}) {
        BaseStructure h = BaseStructure::henson(n);
        c.require(!realizable(maj, h), "majority accepted over henson(" + std::to_string(n) + ")");
        c.require(!realizable(frag, h),
                  "minority fragment accepted over henson(" + std::to_string(n) + ")");
        c.require(realizable(bmin, h), "min rejected over henson(" + std::to_string(n) + ")");
    }
    c.require(!realizable(behaviour_cliquecol(), BaseStructure::equiv(kOmega, 2)),
              "clique collapse accepted over equiv(omega,2)");
    return c.finish();
}

bool criterion7(std::ostream& out) {
    Criterion c(out, 7, "GF(2) core verification", 60.0);
    Rng rng(12345);
    for (int run = 0; run < 1000 && c.ok; ++run) {
        int width = 1 + static_cast<int>(rng.below(30));
        int nrows = 1 + static_cast<int>(rng.below(40));
        Gf2System sys;
        sys.width = width;
        for (int r = 0; r < nrows; ++r) {
            BitVec row(width);
            for (int b = 0; b < width; ++b)
                if (rng.coin()) row.set(b);
            sys.add_row(std::move(row), rng.coin());
        }
        auto res = gf2_solve(sys);
        if (res.consistent)
            c.require(verify_solution(sys, res.solution), "solution failed re-verification");
        else
            c.require(verify_certificate(sys, res.certificate),
                      "certificate failed re-verification");
    }

    for (int run = 0; run < 300 && c.ok; ++run) {
        int width = 1 + static_cast<int>(rng.below(6));
        int count = 1 + static_cast<int>(rng.below(10));
        std::vector<BitVec> vecs;
        std::set<std::uint64_t> distinct;
        for (int i = 0; i < count; ++i) {
            BitVec v(width);
            std::uint64_t bits = rng.below(1ull << width);
            for (int b = 0; b < width; ++b)
                if (bits >> b & 1) v.set(b);
            vecs.push_back(v);
            distinct.insert(bits);
        }
        auto hull = affine_hull(vecs, width);
        for (const auto& v : vecs)
            c.require(verify_solution(hull.system, v), "hull misses an input vector");
        // direct closure under a+b+c
        std::set<std::uint64_t> closure = distinct;
        bool grew = true;
        auto to_bits = [&](const BitVec& v) {
            std::uint64_t out = 0;
            for (int b = 0; b < width; ++b)
                if (v.test(b)) out |= 1ull << b;
            return out;
        };
        (void)to_bits;
        while (grew) {
            grew = false;
            std::vector<std::uint64_t> items(closure.begin(), closure.end());
            for (std::uint64_t a : items)
                for (std::uint64_t b : items)
                    for (std::uint64_t d : items)
                        if (closure.insert(a ^ b ^ d).second) grew = true;
        }
        c.require(hull.exact == (closure.size() == distinct.size()),
                  "exactness flag disagrees with direct closure");
        // hull solution set equals the closure
        long sols = 0;
        for (std::uint64_t bits = 0; bits < (1ull << width); ++bits) {
            BitVec v(width);
            for (int b = 0; b < width; ++b)
                if (bits >> b & 1) v.set(b);
            bool in_sys = verify_solution(hull.system, v);
            bool in_closure = closure.count(bits) != 0;
            if (in_sys) ++sols;
            c.require(in_sys == in_closure, "hull solutions differ from the xor-closure");
            if (!c.ok) break;
        }
        (void)sols;
    }
    return c.finish();
}

bool criterion8(std::ostream& out, const WitnessStats& stats) {
    Criterion c(out, 8, "witness soundness across criteria 2-4", 1.0);
    c.require(stats.sat_runs > 0, "no SAT runs recorded");
    c.require(stats.verified == stats.sat_runs,
              std::to_string(stats.verified) + "/" + std::to_string(stats.sat_runs) +
                  " witnesses verified");
    return c.finish();
}

bool criterion9(std::ostream& out) {
    Criterion c(out, 9, "performance sanity at 200 variables / 300 constraints", 60.0);

    {
        BaseStructure base = BaseStructure::henson(3);
        Signature sig;
        sig.base = base;
        sig.relations.push_back(compile_formula("E", "E(1,2)", 2, base));
        sig.relations.push_back(compile_formula("NEQ", "neq(1,2)", 2, base));
        sig.relations.push_back(compile_formula("IMP", kImpFormula, 4, base));
        HornSignature hs = compile_horn_signature(sig);

        // long implication chain: one seed edge propagates through all 300
        // constraints before the final clique check
        Instance chain;
        for (int i = 0; i < 200; ++i) chain.variables.push_back("v" + std::to_string(i));
        chain.constraints.push_back({"E", {"v0", "v1"}});
        for (int i = 0; i < 299; ++i) {
            int a = i % 198, b = a + 1, d = (i + 1) % 198, e = d + 1;
            chain.constraints.push_back({"IMP",
                                         {chain.variables[static_cast<std::size_t>(a)],
                                          chain.variables[static_cast<std::size_t>(b)],
                                          chain.variables[static_cast<std::size_t>(d)],
                                          chain.variables[static_cast<std::size_t>(e)]}});
        }
        Instance rnd = random_instance(sig, 200, 300, 777);
        auto t0 = Clock::now();
        auto r1 = horn_solve(hs, chain);
        auto r2 = horn_solve(hs, rnd);
        double dt = seconds_since(t0);
        c.require(dt < 5.0, "horn_solve took " + std::to_string(dt) + "s");
        c.require(r1.status == Status::Sat, "implication chain should be satisfiable");
        std::string why;
        c.require(verify_witness(sig, chain, *r1.witness, &why), "chain witness: " + why);
        if (r2.status == Status::Sat)
            c.require(verify_witness(sig, rnd, *r2.witness, &why), "random witness: " + why);
    }
    {
        BaseStructure base = BaseStructure::equiv(kOmega, 2);
        Signature sig;
        sig.base = base;
        sig.relations.push_back(compile_formula("Eq", "Eq(1,2)", 2, base));
        sig.relations.push_back(compile_formula("NEQ", "neq(1,2)", 2, base));
        sig.relations.push_back(compile_formula("A", kAFormula, 6, base));
        ParitySignature ps = compile_parity_signature(sig);

        // equivalence chain plus A-constraints over it: the component
        // fixpoint merges everything and every parity clause becomes an
        // equation over pair variables
        Instance chain;
        for (int i = 0; i < 200; ++i) chain.variables.push_back("v" + std::to_string(i));
        for (int i = 0; i < 150; ++i)
            chain.constraints.push_back({"Eq",
                                         {chain.variables[static_cast<std::size_t>(i)],
                                          chain.variables[static_cast<std::size_t>(i + 1)]}});
        for (int i = 0; i < 150; ++i) {
            auto v = [&](int k) { return chain.variables[static_cast<std::size_t>(k % 151)]; };
            chain.constraints.push_back(
                {"A", {v(i), v(i + 1), v(i + 2), v(i + 3), v(i + 4), v(i + 5)}});
        }
        Instance rnd = random_instance(sig, 200, 300, 778);
        auto t0 = Clock::now();
        auto r1 = solve_cw2_parity(ps, chain);
        auto r2 = solve_cw2_parity(ps, rnd);
        double dt = seconds_since(t0);
        c.require(dt < 5.0, "solve_cw2_parity took " + std::to_string(dt) + "s");
        std::string why;
        if (r1.status == Status::Sat)
            c.require(verify_witness(sig, chain, *r1.witness, &why), "chain witness: " + why);
        if (r2.status == Status::Sat)
            c.require(verify_witness(sig, rnd, *r2.witness, &why), "random witness: " + why);
    }
    return c.finish();
}

// the CLI contract promises a dispatch spot-check inside selftest: auto and
// forced-oracle must agree on capped instances
bool dispatch_spot_check(std::ostream& out) {
    Criterion c(out, 0, "selftest extra: auto/oracle dispatch agreement", 60.0);
    std::vector<Signature> sigs;
    {
        Signature s;
        s.base = BaseStructure::henson(3);
        s.relations.push_back(compile_formula("E", "E(1,2)", 2, s.base));
        s.relations.push_back(compile_formula("IMP", kImpFormula, 4, s.base));
        sigs.push_back(s);
    }
    {
        Signature s;
        s.base = BaseStructure::henson(3);
        s.relations.push_back(compile_formula("OR", kOrFormula, 4, s.base));
        sigs.push_back(s);
    }
    {
        Signature s;
        s.base = BaseStructure::equiv(kOmega, 2);
        s.relations.push_back(compile_formula("Eq", "Eq(1,2)", 2, s.base));
        s.relations.push_back(compile_formula("NEQ", "neq(1,2)", 2, s.base));
        sigs.push_back(s);
    }
    for (std::size_t si = 0; si < sigs.size(); ++si)
        for (std::uint64_t seed = 0; seed < 25 && c.ok; ++seed) {
            Instance inst =
                random_instance(sigs[si], 2 + static_cast<int>(seed % 5),
                                1 + static_cast<int>(seed % 4), seed + 31 * si);
            SolveOptions forced;
            forced.solver = "oracle";
            auto a = dispatch_solve(sigs[si], inst);
            auto b = dispatch_solve(sigs[si], inst, forced);
            c.require(a.result.status == b.result.status,
                      "dispatch disagreement on sig " + std::to_string(si) + " seed " +
                          std::to_string(seed));
        }
    const double elapsed = seconds_since(c.t0);
    out << (c.ok ? "[PASS]" : "[FAIL]") << " " << c.title << " (" << elapsed << "s)";
    if (!c.ok) out << " -- " << c.detail.str();
    out << "\n";
    return c.ok;
}

}  // namespace

bool run_acceptance_suite(std::ostream& out) {
    bool ok = true;
    WitnessStats stats;
    ok &= criterion1(out);
    ok &= criterion2(out, stats);
    ok &= criterion3(out, stats);
    ok &= criterion4(out, stats);
    ok &= criterion5(out);
    ok &= criterion6(out);
    ok &= criterion7(out);
    ok &= criterion8(out, stats);
    ok &= criterion9(out);
    ok &= dispatch_spot_check(out);
    out << (ok ? "acceptance suite: all criteria passed\n"
               : "acceptance suite: FAILURES present\n");
    return ok;
}

}  // namespace hcsp
