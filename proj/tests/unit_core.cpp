#include <doctest.h>

#include <algorithm>
#include <set>

#include "hcsp/relation.hpp"

using namespace hcsp;

namespace {

TypeMatrix all_pairs(int k, PairValue v) { return TypeMatrix(k, v); }

std::vector<std::vector<int>> permutations(int k) {
    std::vector<int> p(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = i;
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

TEST_CASE("base structure parameter rules") {
    CHECK_THROWS_AS(BaseStructure::henson(2), InputError);
    CHECK_THROWS_AS(BaseStructure::henson(kOmega), InputError);
    CHECK_NOTHROW(BaseStructure::henson(3));
    CHECK_THROWS_AS(BaseStructure::equiv(kOmega, kOmega), DelegatedBaseError);
    CHECK_THROWS_AS(BaseStructure::equiv(1, kOmega), DelegatedBaseError);
    CHECK_THROWS_AS(BaseStructure::equiv(kOmega, 1), DelegatedBaseError);
    CHECK_THROWS_AS(BaseStructure::equiv(3, 2), InputError);
    CHECK_NOTHROW(BaseStructure::equiv(2, kOmega));
    CHECK_NOTHROW(BaseStructure::equiv(kOmega, 2));
}

TEST_CASE("validate_type on the named rules") {
    auto h3 = BaseStructure::henson(3);
    auto h4 = BaseStructure::henson(4);
    auto ew2 = BaseStructure::equiv(kOmega, 2);

    // triangle in the triangle-free graph
    CHECK_FALSE(validate_type(all_pairs(3, PairValue::E), h3).ok);
    CHECK(validate_type(all_pairs(3, PairValue::E), h3).reason.find("clique") == 0);
    // K_3 is allowed below clique bound 4
    CHECK(validate_type(all_pairs(3, PairValue::E), h4).ok);

    // Eq-block with three distinct members over class size 2
    TypeMatrix m(3);
    m.set(0, 1, PairValue::E);
    m.set(1, 2, PairValue::E);
    m.set(0, 2, PairValue::N);
    auto v = validate_type(m, ew2);
    CHECK_FALSE(v.ok);
    CHECK(v.reason.find("class-size") == 0);

    // congruence: merged points must carry identical rows
    TypeMatrix c(3);
    c.set(0, 1, PairValue::Equal);
    c.set(0, 2, PairValue::E);
    c.set(1, 2, PairValue::N);
    CHECK_FALSE(validate_type(c, h3).ok);
    CHECK(validate_type(c, h3).reason.find("congruence") == 0);

    // transitivity over an equivalence base with unconstrained class size
    auto e2w = BaseStructure::equiv(2, kOmega);
    TypeMatrix t(3);
    t.set(0, 1, PairValue::E);
    t.set(1, 2, PairValue::E);
    t.set(0, 2, PairValue::N);
    auto tv = validate_type(t, e2w);
    CHECK_FALSE(tv.ok);
    CHECK(tv.reason.find("transitivity") == 0);

    // class count: three blocks over two classes
    CHECK_FALSE(validate_type(all_pairs(3, PairValue::N), e2w).ok);
    CHECK(validate_type(all_pairs(3, PairValue::N), e2w).reason.find("class-count") == 0);

    // no E entries over the equality base
    CHECK_FALSE(validate_type(all_pairs(2, PairValue::E), BaseStructure::equality()).ok);
}

TEST_CASE("enumerate_types counts") {
    CHECK(enumerate_types(2, BaseStructure::henson(3)).size() == 3);
    CHECK(enumerate_types(3, BaseStructure::henson(3)).size() == 14);
    CHECK(enumerate_types(3, BaseStructure::equiv(kOmega, 2)).size() == 11);
    CHECK(enumerate_types(3, BaseStructure::equiv(2, kOmega)).size() == 11);
    CHECK(enumerate_types(3, BaseStructure::equality()).size() == 5);  // partitions of 3
    CHECK_THROWS_AS(enumerate_types(7, BaseStructure::henson(3)), InputError);
}

TEST_CASE("enumerate_types is deterministic, sorted and permutation-closed") {
    for (auto base : {BaseStructure::henson(3), BaseStructure::equiv(kOmega, 2)}) {
        auto types = enumerate_types(4, base);
        CHECK(std::is_sorted(types.begin(), types.end()));
        std::set<TypeMatrix> set(types.begin(), types.end());
        CHECK(set.size() == types.size());
        for (const auto& t : types)
            for (const auto& p : permutations(4)) CHECK(set.count(t.permuted(p)) == 1);
    }
}

TEST_CASE("validate accepts enumerated types and rejects single-cell corruptions") {
    for (auto base : {BaseStructure::henson(3), BaseStructure::equiv(kOmega, 2),
                      BaseStructure::equality()}) {
        auto types = enumerate_types(3, base);
        std::set<TypeMatrix> set(types.begin(), types.end());
        for (const auto& t : types) {
            CHECK(validate_type(t, base).ok);
            for (int idx = 0; idx < t.pair_count(); ++idx)
                for (PairValue v : {PairValue::E, PairValue::N, PairValue::Equal}) {
                    if (v == t.cell(idx)) continue;
                    TypeMatrix flipped = t;
                    flipped.set_cell(idx, v);
                    // a flip either breaks validity or lands on another type
                    if (validate_type(flipped, base).ok) CHECK(set.count(flipped) == 1);
                }
        }
    }
}

TEST_CASE("compile_formula basics") {
    auto h3 = BaseStructure::henson(3);
    auto r = compile_formula("E", "E(1,2)", 2, h3);
    CHECK(r.types.size() == 1);
    CHECK(r.types.items()[0].at(0, 1) == PairValue::E);

    auto ew2 = BaseStructure::equiv(kOmega, 2);
    auto eq = compile_formula("Eq", "Eq(1,2)", 2, ew2);
    CHECK(eq.types.size() == 2);  // E and Equal

    CHECK_THROWS_AS(compile_formula("bad", "E(1", 2, h3), InputError);
    CHECK_THROWS_AS(compile_formula("bad", "E(1,3)", 2, h3), InputError);
}

TEST_CASE("compile_formula splits the type space with its negation") {
    auto base = BaseStructure::equiv(kOmega, 2);
    const std::string phi = "Eq(1,2) & !eq(2,3)";
    auto pos = compile_formula("R", phi, 3, base);
    auto neg = compile_formula("Rn", "!(" + phi + ")", 3, base);
    auto all = enumerate_types(3, base);
    CHECK(pos.types.size() + neg.types.size() == all.size());
    for (const auto& t : all) CHECK(pos.types.contains(t) != neg.types.contains(t));
}

TEST_CASE("skeleton maps edges and non-edges to distinct") {
    TypeMatrix m(2);
    m.set(0, 1, PairValue::E);
    CHECK(skeleton(m).at(0, 1) == PairValue::N);
    TypeMatrix eq = all_pairs(3, PairValue::Equal);
    CHECK(skeleton(eq) == eq);
    // idempotent on every small henson type
    for (const auto& t : enumerate_types(3, BaseStructure::henson(3)))
        CHECK(skeleton(skeleton(t)) == skeleton(t));
}

TEST_CASE("cells strings round-trip and reject malformed input") {
    auto types = enumerate_types(3, BaseStructure::equiv(kOmega, 2));
    for (const auto& t : types) {
        auto back = TypeMatrix::from_cells_string(3, t.cells_string());
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
    CHECK_FALSE(TypeMatrix::from_cells_string(3, "EN").has_value());    // wrong length
    CHECK_FALSE(TypeMatrix::from_cells_string(3, "ENX").has_value());   // bad character
    CHECK_FALSE(TypeMatrix::from_cells_string(0, "").has_value());
}

TEST_CASE("signature validation rejects duplicates and foreign types") {
    Signature sig;
    sig.base = BaseStructure::henson(3);
    sig.relations.push_back(compile_formula("E", "E(1,2)", 2, sig.base));
    sig.relations.push_back(compile_formula("E", "N(1,2)", 2, sig.base));
    CHECK_THROWS_AS(sig.validate(), InputError);

    Signature bad;
    bad.base = BaseStructure::henson(3);
    // a triangle type is invalid over henson(3)
    bad.relations.push_back(
        OrbitRelation{"T", 3, TypeSet({TypeMatrix(3, PairValue::E)})});
    CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("resolve checks names and arities") {
    Signature sig;
    sig.base = BaseStructure::henson(3);
    sig.relations.push_back(compile_formula("E", "E(1,2)", 2, sig.base));
    Instance inst;
    inst.variables = {"x", "y"};
    inst.constraints.push_back({"E", {"x", "y"}});
    CHECK(resolve(inst, sig).size() == 1);
    inst.constraints.push_back({"Q", {"x", "y"}});
    CHECK_THROWS_AS(resolve(inst, sig), InputError);
    inst.constraints.pop_back();
    inst.constraints.push_back({"E", {"x"}});
    CHECK_THROWS_AS(resolve(inst, sig), InputError);
}
