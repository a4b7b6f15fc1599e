#include <doctest.h>

#include <algorithm>

#include "hcsp/behaviour.hpp"
#include "hcsp/gadgets.hpp"
#include "hcsp/oracle.hpp"

using namespace hcsp;

TEST_CASE("catalog tables match their defining conditions") {
    Behaviour bmin = behaviour_min();
    CHECK(bmin.apply2(PairValue::E, PairValue::E) == PairValue::E);
    CHECK(bmin.apply2(PairValue::E, PairValue::N) == PairValue::N);
    CHECK(bmin.apply2(PairValue::E, PairValue::Equal) == PairValue::N);
    CHECK(bmin.apply2(PairValue::Equal, PairValue::Equal) == PairValue::Equal);

    Behaviour x3 = behaviour_xnor3();
    CHECK(x3.apply3(PairValue::Equal, PairValue::E, PairValue::E) == PairValue::E);
    CHECK(x3.apply3(PairValue::Equal, PairValue::N, PairValue::N) == PairValue::E);
    CHECK(x3.apply3(PairValue::Equal, PairValue::E, PairValue::N) == PairValue::N);
    CHECK(x3.apply3(PairValue::Equal, PairValue::Equal, PairValue::N) == PairValue::N);
    CHECK(x3.apply3(PairValue::E, PairValue::E, PairValue::N) == PairValue::N);
    CHECK(x3.apply3(PairValue::E, PairValue::N, PairValue::N) == PairValue::E);

    Behaviour h3 = behaviour_h3();
    CHECK(h3.apply3(PairValue::E, PairValue::E, PairValue::Equal) == PairValue::Equal);
    CHECK(h3.apply3(PairValue::E, PairValue::Equal, PairValue::Equal) == PairValue::E);
    CHECK(h3.apply3(PairValue::N, PairValue::E, PairValue::E) == PairValue::N);

    CHECK(behaviour_edgedel().apply1(PairValue::E) == PairValue::N);
    CHECK(behaviour_cliquecol().apply1(PairValue::N) == PairValue::E);
    CHECK(behaviour_quotient().apply1(PairValue::E) == PairValue::Equal);
    CHECK(behaviour_const().apply1(PairValue::N) == PairValue::Equal);
}

TEST_CASE("apply_behaviour acts pointwise and reports invalid outputs") {
    auto h3 = BaseStructure::henson(3);
    TypeMatrix e(2), n(2);
    e.set(0, 1, PairValue::E);
    n.set(0, 1, PairValue::N);
    const TypeMatrix in[] = {e, n};
    auto out = apply_behaviour(behaviour_min(), in, h3);
    REQUIRE(out);
    CHECK(out->at(0, 1) == PairValue::N);

    // edge deletion sends the path to the all-N type
    TypeMatrix path(3);
    path.set(0, 1, PairValue::E);
    path.set(1, 2, PairValue::E);
    path.set(0, 2, PairValue::N);
    const TypeMatrix pin[] = {path};
    auto deleted = apply_behaviour(behaviour_edgedel(), pin, h3);
    REQUIRE(deleted);
    CHECK(*deleted == TypeMatrix(3, PairValue::N));

    // clique collapse violates class size 2
    const TypeMatrix nn[] = {TypeMatrix(3, PairValue::N)};
    CHECK_FALSE(apply_behaviour(behaviour_cliquecol(), nn, BaseStructure::equiv(kOmega, 2)));

    CHECK_THROWS_AS(apply_behaviour(behaviour_min(), pin, h3), InputError);
}

TEST_CASE("min application over henson(3) pairs never invalid") {
    auto base = BaseStructure::henson(3);
    auto types = enumerate_types(3, base);
    for (const auto& a : types)
        for (const auto& b : types) {
            const TypeMatrix in[] = {a, b};
            CHECK(apply_behaviour(behaviour_min(), in, base).has_value());
        }
}

TEST_CASE("preserves: spec examples") {
    auto h3 = BaseStructure::henson(3);
    auto e = compile_formula("E", "E(1,2)", 2, h3);
    CHECK(preserves(behaviour_min(), e, h3));
    CHECK_FALSE(preserves(behaviour_min(), relation_H(3), h3));
    auto imp = compile_formula("IMP", "!E(1,2)|E(3,4)", 4, h3);
    CHECK(preserves(behaviour_min(), imp, h3));
}

TEST_CASE("the full relation is preserved by every realizable behaviour") {
    for (auto base : {BaseStructure::henson(3), BaseStructure::equiv(kOmega, 2),
                      BaseStructure::equiv(2, kOmega)}) {
        OrbitRelation full{"full", 3, TypeSet(enumerate_types(3, base))};
        for (const auto& b : behaviour_catalog(base)) {
            if (!realizable(b, base)) continue;
            CHECK_MESSAGE(preserves(b, full, base), b.name, " over ", base.describe());
        }
    }
}

TEST_CASE("closing a random relation under a behaviour makes preserves true") {
    auto base = BaseStructure::henson(3);
    Behaviour bmin = behaviour_min();
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
        auto r = random_relation(base, 3, seed, &bmin);
        CHECK(preserves(bmin, r, base));
    }
    auto ew2 = BaseStructure::equiv(kOmega, 2);
    Behaviour h3b = behaviour_h3();
    for (std::uint64_t seed : {7ull, 8ull}) {
        auto r = random_relation(ew2, 3, seed, &h3b);
        CHECK(preserves(h3b, r, ew2));
    }
}

TEST_CASE("realizability: catalog facts") {
    CHECK(realizable(behaviour_min(), BaseStructure::henson(3)));
    CHECK(realizable(behaviour_min(), BaseStructure::equiv(kOmega, 2)));
    CHECK_FALSE(realizable(behaviour_min(), BaseStructure::equiv(2, kOmega)));
    CHECK(realizable(behaviour_edgedel(), BaseStructure::henson(3)));
    CHECK(realizable(behaviour_edgedel(), BaseStructure::equiv(kOmega, 2)));
    CHECK_FALSE(realizable(behaviour_edgedel(), BaseStructure::equiv(2, kOmega)));
    CHECK(realizable(behaviour_cliquecol(), BaseStructure::equiv(2, kOmega)));
    CHECK_FALSE(realizable(behaviour_cliquecol(), BaseStructure::henson(3)));
    CHECK(realizable(behaviour_const(), BaseStructure::henson(4)));
    CHECK(realizable(behaviour_xnor3(), BaseStructure::equiv(2, kOmega)));
    CHECK(realizable(behaviour_h3(), BaseStructure::equiv(kOmega, 2)));
}

TEST_CASE("henson rejects binary tables with clique-introducing entries") {
    auto h3 = BaseStructure::henson(3);
    // (E,Equal) -> E together with (Equal,E) -> E (balanced projection)
    CHECK_FALSE(realizable(behaviour_p1(), h3));
    CHECK_FALSE(realizable(behaviour_p2(), h3));

    // property: every total binary table with (N,N) -> E, or with both
    // (E,=) -> E and (=,E) -> E, is rejected over henson(3)
    const PairValue vals[] = {PairValue::E, PairValue::N, PairValue::Equal};
    int checked = 0;
    for (int code = 0; code < 6561; ++code) {  // 3^8 tables, diagonal fixed
        std::array<PairValue, 9> table{};
        int rest = code;
        for (int idx = 0; idx < 9; ++idx) {
            if (idx == Behaviour::tuple_index(std::array{PairValue::Equal, PairValue::Equal})) {
                table[static_cast<std::size_t>(idx)] = PairValue::Equal;
                continue;
            }
            table[static_cast<std::size_t>(idx)] = vals[rest % 3];
            rest /= 3;
        }
        auto at = [&](PairValue a, PairValue b) {
            return table[static_cast<std::size_t>(Behaviour::tuple_index(std::array{a, b}))];
        };
        const bool nn_edge = at(PairValue::N, PairValue::N) == PairValue::E;
        // the balanced obstruction builds its clique through preserved edges,
        // so it applies to tables with (E,E) -> E
        const bool balanced_edges = at(PairValue::E, PairValue::Equal) == PairValue::E &&
                                    at(PairValue::Equal, PairValue::E) == PairValue::E &&
                                    at(PairValue::E, PairValue::E) == PairValue::E;
        if (!nn_edge && !balanced_edges) continue;
        Behaviour b;
        b.name = "swept";
        b.arity = 2;
        for (int idx = 0; idx < 9; ++idx) b.table[static_cast<std::size_t>(idx)] = table[static_cast<std::size_t>(idx)];
        CHECK_FALSE(realizable(b, h3));
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("apply commutes with simultaneous index permutation") {
    auto base = BaseStructure::equiv(kOmega, 2);
    auto types = enumerate_types(3, base);
    Behaviour bmin = behaviour_min();
    std::vector<int> perm = {2, 0, 1};
    for (std::size_t i = 0; i < types.size(); i += 3)
        for (std::size_t j = 0; j < types.size(); j += 2) {
            const TypeMatrix in[] = {types[i], types[j]};
            auto direct = apply_behaviour(bmin, in, base);
            const TypeMatrix pin[] = {types[i].permuted(perm), types[j].permuted(perm)};
            auto permuted = apply_behaviour(bmin, pin, base);
            REQUIRE(direct.has_value());
            REQUIRE(permuted.has_value());
            CHECK(direct->permuted(perm) == *permuted);
        }
}

TEST_CASE("h3 closure fast path agrees with brute-force closure") {
    auto base = BaseStructure::equiv(kOmega, 2);
    Behaviour h3 = behaviour_h3();
    for (int arity : {2, 3, 4}) {
        for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
            auto all = enumerate_types(arity, base);
            Rng rng(seed);
            std::vector<TypeMatrix> picked;
            for (const auto& t : all)
                if (rng.coin()) picked.push_back(t);
            if (picked.empty()) picked.push_back(all[0]);
            TypeSet start(picked);

            // brute force: iterate pointwise applications to a fixpoint
            TypeSet brute = start;
            bool grew = true;
            while (grew) {
                grew = false;
                auto items = brute.items();
                for (const auto& a : items)
                    for (const auto& b : items)
                        for (const auto& d : items) {
                            const TypeMatrix in[] = {a, b, d};
                            auto r = apply_behaviour(h3, in, base);
                            REQUIRE(r.has_value());
                            if (!brute.contains(*r)) {
                                brute.insert(*r);
                                grew = true;
                            }
                        }
            }
            CHECK(close_under(h3, start, arity, base) == brute);
        }
    }
}

namespace {

bool brute_ternary_preserves(const Behaviour& b, const OrbitRelation& r,
                             const BaseStructure& base) {
    const auto& items = r.types.items();
    for (const auto& x : items)
        for (const auto& y : items)
            for (const auto& z : items) {
                const TypeMatrix in[] = {x, y, z};
                auto res = apply_behaviour(b, in, base);
                if (!res || !r.types.contains(*res)) return false;
            }
    return true;
}

}  // namespace

TEST_CASE("h3 preserves fast path agrees with the exhaustive sweep") {
    auto base = BaseStructure::equiv(kOmega, 2);
    Behaviour h3 = behaviour_h3();
    for (std::uint64_t seed : {21ull, 22ull, 23ull, 24ull}) {
        auto r = random_relation(base, 3, seed);
        CHECK(preserves(h3, r, base) == brute_ternary_preserves(h3, r, base));
    }
}

TEST_CASE("h3 preserves fast path agrees at sizes where it engages") {
    auto base = BaseStructure::equiv(kOmega, 2);
    Behaviour h3 = behaviour_h3();

    // a closed arity-5 relation large enough for the closure-based check
    auto closed = random_relation(base, 5, 31, &h3);
    REQUIRE(closed.types.size() > 220);
    CHECK(preserves(h3, closed, base));
    CHECK(brute_ternary_preserves(h3, closed, base));

    // removing a reachable type must flip both verdicts the same way
    auto items = closed.types.items();
    for (std::size_t drop : {std::size_t{0}, items.size() / 2, items.size() - 1}) {
        std::vector<TypeMatrix> rest;
        for (std::size_t i = 0; i < items.size(); ++i)
            if (i != drop) rest.push_back(items[i]);
        OrbitRelation pruned{"pruned", 5, TypeSet(std::move(rest))};
        if (pruned.types.size() <= 220) continue;
        CHECK(preserves(h3, pruned, base) == brute_ternary_preserves(h3, pruned, base));
    }
}
