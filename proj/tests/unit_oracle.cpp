#include <doctest.h>

#include "hcsp/oracle.hpp"

using namespace hcsp;

namespace {

Signature edge_sig(const BaseStructure& base) {
    Signature sig;
    sig.base = base;
    sig.relations.push_back(compile_formula("E", "E(1,2)", 2, base));
    sig.relations.push_back(compile_formula("Eq", "Eq(1,2)", 2, base));
    sig.relations.push_back(compile_formula("NEQ", "neq(1,2)", 2, base));
    return sig;
}

Instance triangle(const std::string& rel) {
    Instance inst;
    inst.variables = {"x", "y", "z"};
    inst.constraints.push_back({rel, {"x", "y"}});
    inst.constraints.push_back({rel, {"y", "z"}});
    inst.constraints.push_back({rel, {"x", "z"}});
    return inst;
}

}  // namespace

TEST_CASE("oracle: triangle over henson bases") {
    CHECK(oracle_solve(edge_sig(BaseStructure::henson(3)), triangle("E")).status == Status::Unsat);
    auto r4 = oracle_solve(edge_sig(BaseStructure::henson(4)), triangle("E"));
    CHECK(r4.status == Status::Sat);
    std::string why;
    CHECK_MESSAGE(verify_witness(edge_sig(BaseStructure::henson(4)), triangle("E"), *r4.witness, &why), why);
}

TEST_CASE("oracle: class size two rejects a 3-clique of distinct equivalent points") {
    auto sig = edge_sig(BaseStructure::equiv(kOmega, 2));
    Instance inst = triangle("Eq");
    for (auto pair : {std::pair{"x", "y"}, {"y", "z"}, {"x", "z"}})
        inst.constraints.push_back({"NEQ", {pair.first, pair.second}});
    CHECK(oracle_solve(sig, inst).status == Status::Unsat);
}

TEST_CASE("oracle: loops are forbidden") {
    auto sig = edge_sig(BaseStructure::henson(3));
    Instance inst;
    inst.variables = {"x"};
    inst.constraints.push_back({"E", {"x", "x"}});
    CHECK(oracle_solve(sig, inst).status == Status::Unsat);
}

TEST_CASE("oracle: cap and empty instance") {
    auto sig = edge_sig(BaseStructure::henson(3));
    Instance inst;
    for (int i = 0; i < 11; ++i) inst.variables.push_back("v" + std::to_string(i));
    CHECK_THROWS_AS(oracle_solve(sig, inst), InputError);
    Instance empty;
    CHECK(oracle_solve(sig, empty).status == Status::Sat);
}

TEST_CASE("random_instance determinism and shape") {
    auto sig = edge_sig(BaseStructure::henson(3));
    auto a = random_instance(sig, 4, 3, 1);
    auto b = random_instance(sig, 4, 3, 1);
    CHECK(a.variables == b.variables);
    REQUIRE(a.constraints.size() == b.constraints.size());
    for (std::size_t i = 0; i < a.constraints.size(); ++i) {
        CHECK(a.constraints[i].rel == b.constraints[i].rel);
        CHECK(a.constraints[i].vars == b.constraints[i].vars);
    }
    auto none = random_instance(sig, 3, 0, 5);
    CHECK(oracle_solve(sig, none).status == Status::Sat);
}

TEST_CASE("random_relation determinism and closure") {
    auto base = BaseStructure::henson(3);
    Behaviour bmin = behaviour_min();
    auto a = random_relation(base, 2, 9, nullptr);
    auto b = random_relation(base, 2, 9, nullptr);
    CHECK(a.types == b.types);
    CHECK(a.types.size() >= 1);
    CHECK(a.types.size() <= 3);
    auto closed = random_relation(base, 3, 10, &bmin);
    CHECK(preserves(bmin, closed, base));
}

TEST_CASE("oracle monotonicity: adding a constraint never turns UNSAT into SAT") {
    auto sig = edge_sig(BaseStructure::equiv(kOmega, 2));
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Instance inst = random_instance(sig, 4, 3, seed);
        auto before = oracle_solve(sig, inst);
        Instance more = inst;
        more.constraints.push_back(random_instance(sig, 4, 1, seed + 100).constraints[0]);
        auto after = oracle_solve(sig, more);
        if (before.status == Status::Unsat) CHECK(after.status == Status::Unsat);
    }
}

TEST_CASE("oracle status is invariant under renaming and constraint permutation") {
    auto sig = edge_sig(BaseStructure::henson(3));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = random_instance(sig, 5, 4, seed);
        auto base_res = oracle_solve(sig, inst);

        Instance renamed = inst;
        for (auto& v : renamed.variables) v = "w" + v;
        for (auto& c : renamed.constraints)
            for (auto& v : c.vars) v = "w" + v;
        std::reverse(renamed.constraints.begin(), renamed.constraints.end());
        CHECK(oracle_solve(sig, renamed).status == base_res.status);
    }
}

TEST_CASE("oracle witnesses re-verify") {
    auto sig = edge_sig(BaseStructure::equiv(2, kOmega));
    int sats = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Instance inst = random_instance(sig, 5, 4, seed);
        auto res = oracle_solve(sig, inst);
        if (res.status == Status::Sat) {
            ++sats;
            std::string why;
            CHECK_MESSAGE(verify_witness(sig, inst, *res.witness, &why), why);
        }
    }
    CHECK(sats > 0);
}
