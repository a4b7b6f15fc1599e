#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcsp/relation.hpp"

namespace hcsp {

/// Total table from r-tuples of pair values to a pair value, r in {1,2,3}.
/// The all-Equal input always maps to Equal.
struct Behaviour {
    std::string name;
    int arity = 1;
    std::array<PairValue, 27> table{};  // indexed base-3, first 3^arity used

    static int tuple_index(std::span<const PairValue> vs);

    PairValue apply(std::span<const PairValue> vs) const;
    PairValue apply1(PairValue a) const;
    PairValue apply2(PairValue a, PairValue b) const;
    PairValue apply3(PairValue a, PairValue b, PairValue c) const;

    /// Builds a behaviour from a function over input tuples; checks the
    /// diagonal identity.
    template <typename F>
    static Behaviour make(std::string name, int arity, F&& f);
};

// Named constructors for the catalog entries and the test behaviours.
Behaviour behaviour_min();        // binary meet; N-dominated min
Behaviour behaviour_p1();         // binary projection on 1, balanced
Behaviour behaviour_p2();         // binary projection on 2, balanced
Behaviour behaviour_edgedel();    // unary: E -> N
Behaviour behaviour_cliquecol();  // unary: N -> E
Behaviour behaviour_quotient();   // unary: E -> Equal
Behaviour behaviour_const();      // unary: everything -> Equal
Behaviour behaviour_eqmeet();     // binary meet over the equality base
Behaviour behaviour_xnor3();      // ternary minority, hyperplanely balanced xnor
Behaviour behaviour_h3();         // ternary N-dominated minority on {E,=}
Behaviour behaviour_majority();   // ternary majority (unrealizable over henson)
Behaviour behaviour_minority();   // ternary minority on {E,N}

/// The named behaviours applicable over the given base.
std::vector<Behaviour> behaviour_catalog(const BaseStructure& base);

/// Catalog entry by name, independent of base; nullopt when unknown.
std::optional<Behaviour> behaviour_by_name(const std::string& name);

/// Pointwise application to equal-arity matrices; nullopt when the result
/// violates validity over `base` (the behaviour is not realizable on these
/// inputs). Throws on arity mismatch.
std::optional<TypeMatrix> apply_behaviour(const Behaviour& b,
                                          std::span<const TypeMatrix> ms,
                                          const BaseStructure& base);

/// True iff every tuple of types from R stays in R under pointwise
/// application. An invalid application counts as not preserved; when `diag`
/// is given it receives a short description of the failure.
bool preserves(const Behaviour& b, const OrbitRelation& r, const BaseStructure& base,
               std::string* diag = nullptr);

/// Bounded realizability sweep: applies the behaviour to every tuple of
/// valid types of arity up to the base's obstruction size and checks that
/// all outputs are valid.
bool realizable(const Behaviour& b, const BaseStructure& base);

/// Obstruction size used by `realizable` (henson: n; equiv: 2s+1 or n+1,
/// capped at 7).
int obstruction_arity(const BaseStructure& base);

/// Least superset of `types` closed under pointwise application. Throws
/// InternalError if an application leaves the valid types.
TypeSet close_under(const Behaviour& b, const TypeSet& types, int arity,
                    const BaseStructure& base);

template <typename F>
Behaviour Behaviour::make(std::string name, int arity, F&& f) {
    Behaviour b;
    b.name = std::move(name);
    b.arity = arity;
    int total = 1;
    for (int i = 0; i < arity; ++i) total *= 3;
    for (int idx = 0; idx < total; ++idx) {
        std::array<PairValue, 3> in{};
        int rest = idx;
        for (int pos = arity - 1; pos >= 0; --pos) {
            in[static_cast<std::size_t>(pos)] = static_cast<PairValue>(rest % 3);
            rest /= 3;
        }
        b.table[static_cast<std::size_t>(idx)] = f(std::span<const PairValue>(in.data(), arity));
    }
    std::array<PairValue, 3> diag;
    diag.fill(PairValue::Equal);
    if (b.apply(std::span<const PairValue>(diag.data(), arity)) != PairValue::Equal)
        throw InternalError("behaviour " + b.name + " breaks the diagonal identity");
    return b;
}

}  // namespace hcsp
