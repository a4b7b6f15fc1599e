#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hcsp/acceptance.hpp"
#include "hcsp/json_io.hpp"

using namespace hcsp;

namespace {

int oracle_cap_default() {
    if (const char* env = std::getenv("HCSP_CAP")) {
        try {
            int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (...) {
        }
        std::cerr << "warning: ignoring malformed HCSP_CAP\n";
    }
    return kDefaultOracleCap;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// accept either a plain document or a gadget bundle {"signature":..., "instance":...}
Json unwrap(const Json& j, const char* key) {
    if (j.is_object() && j.contains(key)) return j.at(key);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSPs of reducts of homogeneous graphs: classify, solve, verify"};
    app.require_subcommand(1);

    // classify
    std::string sig_path, inst_path, formula_path, base_path;
    bool deep = false, want_witness = false, want_gf2 = false;
    int cap = kDefaultArityCap;
    int oracle_cap = oracle_cap_default();
    std::string solver = "auto";

    auto* c_classify = app.add_subcommand("classify", "decide P / NP-complete for a signature");
    c_classify->add_option("-s,--signature", sig_path, "signature JSON")->required();
    c_classify->add_flag("--deep", deep, "also sweep all order-free unary behaviours");
    c_classify->add_option("--cap", cap, "relation arity cap");

    auto* c_solve = app.add_subcommand("solve", "solve an instance, dispatching per classify");
    c_solve->add_option("-s,--signature", sig_path, "signature JSON")->required();
    c_solve->add_option("-i,--instance", inst_path, "instance JSON")->required();
    c_solve->add_option("--solver", solver,
                        "auto | oracle | horn | c2w_minority | cw2_parity | trivial");
    c_solve->add_flag("--witness", want_witness, "include the witness type in the output");
    c_solve->add_flag("--emit-gf2", want_gf2, "include the final GF(2) system");
    c_solve->add_option("--cap", cap, "relation arity cap");
    c_solve->add_option("--oracle-cap", oracle_cap, "variable cap for the oracle");

    auto* c_oracle = app.add_subcommand("oracle", "exhaustive ground-truth satisfiability");
    c_oracle->add_option("-s,--signature", sig_path, "signature JSON")->required();
    c_oracle->add_option("-i,--instance", inst_path, "instance JSON")->required();
    c_oracle->add_flag("--witness", want_witness, "include the witness type in the output");
    c_oracle->add_option("--oracle-cap", oracle_cap, "variable cap for the oracle");

    int gadget_n = 3;
    auto* c_gadget = app.add_subcommand("gadget", "positive 1-in-3 reduction to the H relation");
    c_gadget->add_option("--n", gadget_n, "henson clique bound")->required();
    c_gadget->add_option("--formula", formula_path, "positive 1-in-3 formula JSON")->required();

    std::uint64_t seed = 0;
    int gen_arity = 2, gen_vars = 4, gen_cons = 3;
    std::string close_under_name;
    auto* c_gen = app.add_subcommand("gen", "seeded random relations and instances");
    auto* g_rel = c_gen->add_subcommand("relation", "random relation over a base");
    g_rel->add_option("--base", base_path, "base JSON")->required();
    g_rel->add_option("--arity", gen_arity, "relation arity")->required();
    g_rel->add_option("--seed", seed, "seed")->required();
    g_rel->add_option("--close-under", close_under_name, "behaviour name to close under");
    g_rel->add_option("--cap", cap, "arity cap");
    auto* g_inst = c_gen->add_subcommand("instance", "random instance over a signature");
    g_inst->add_option("--sig", sig_path, "signature JSON")->required();
    g_inst->add_option("--vars", gen_vars, "variable count")->required();
    g_inst->add_option("--cons", gen_cons, "constraint count")->required();
    g_inst->add_option("--seed", seed, "seed")->required();
    c_gen->require_subcommand(1);

    auto* c_selftest = app.add_subcommand("selftest", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_classify->parsed()) {
            Signature sig = parse_signature(unwrap(load_json_file(sig_path), "signature"), cap);
            Verdict v = classify(sig, {.deep = deep, .cap = cap});
            emit(verdict_json(v));
            return 0;
        }
        if (c_solve->parsed()) {
            Signature sig = parse_signature(unwrap(load_json_file(sig_path), "signature"), cap);
            Instance inst = parse_instance(unwrap(load_json_file(inst_path), "instance"));
            SolveOptions opts;
            opts.solver = solver;
            opts.cap = cap;
            opts.oracle_cap = oracle_cap;
            opts.want_gf2 = want_gf2;
            Solved s = dispatch_solve(sig, inst, opts);
            Json j;
            j["status"] = status_name(s.result.status);
            j["solver"] = s.solver_used;
            if (want_witness && s.result.witness) j["witness"] = witness_json(*s.result.witness);
            if (s.system) j["gf2"] = gf2_json(*s.system);
            emit(j);
            return 0;
        }
        if (c_oracle->parsed()) {
            Signature sig = parse_signature(unwrap(load_json_file(sig_path), "signature"), cap);
            Instance inst = parse_instance(unwrap(load_json_file(inst_path), "instance"));
            SolveResult r = oracle_solve(sig, inst, oracle_cap);
            Json j;
            j["status"] = status_name(r.status);
            if (want_witness && r.witness) j["witness"] = witness_json(*r.witness);
            emit(j);
            return 0;
        }
        if (c_gadget->parsed()) {
            OneInThreeFormula f = parse_one_in_three(load_json_file(formula_path));
            Signature sig;
            sig.base = BaseStructure::henson(gadget_n);
            sig.relations.push_back(relation_H(gadget_n));
            Json j;
            j["signature"] = signature_json(sig);
            j["instance"] = instance_json(reduce_1in3(f));
            emit(j);
            return 0;
        }
        if (g_rel->parsed()) {
            BaseStructure base = parse_base(load_json_file(base_path));
            const Behaviour* close = nullptr;
            std::optional<Behaviour> b;
            if (!close_under_name.empty()) {
                b = behaviour_by_name(close_under_name);
                if (!b) throw InputError("unknown behaviour: " + close_under_name);
                close = &*b;
            }
            emit(relation_json(random_relation(base, gen_arity, seed, close, cap)));
            return 0;
        }
        if (g_inst->parsed()) {
            Signature sig = parse_signature(unwrap(load_json_file(sig_path), "signature"), cap);
            emit(instance_json(random_instance(sig, gen_vars, gen_cons, seed)));
            return 0;
        }
        if (c_selftest->parsed()) {
            return run_acceptance_suite(std::cout) ? 0 : 1;
        }
    } catch (const InputError& e) {
        Json j;
        j["error"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json j;
        j["error"] = std::string("internal: ") + e.what();
        std::cout << j.dump(2) << "\n";
        return 3;
    }
    return 2;
}
