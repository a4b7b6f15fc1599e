#pragma once

#include <string>
#include <vector>

#include "hcsp/base.hpp"
#include "hcsp/type_matrix.hpp"

namespace hcsp {

/// Sorted, duplicate-free set of type matrices of one arity.
class TypeSet {
public:
    TypeSet() = default;
    explicit TypeSet(std::vector<TypeMatrix> types);

    void insert(const TypeMatrix& m);
    bool contains(const TypeMatrix& m) const;
    bool empty() const { return types_.empty(); }
    std::size_t size() const { return types_.size(); }

    const std::vector<TypeMatrix>& items() const { return types_; }
    auto begin() const { return types_.begin(); }
    auto end() const { return types_.end(); }

    friend bool operator==(const TypeSet&, const TypeSet&) = default;

private:
    std::vector<TypeMatrix> types_;
};

/// Named relation of fixed arity, stored as the set of types of its tuples.
struct OrbitRelation {
    std::string name;
    int arity = 1;
    TypeSet types;
};

struct Signature {
    BaseStructure base;
    std::vector<OrbitRelation> relations;

    const OrbitRelation* find(const std::string& name) const;
    int index_of(const std::string& name) const;  // -1 when absent
    void validate() const;  // distinct names, types valid for base
};

struct Constraint {
    std::string rel;
    std::vector<std::string> vars;
};

struct Instance {
    std::vector<std::string> variables;
    std::vector<Constraint> constraints;
};

/// Constraint with the relation and variables resolved to indices.
struct ResolvedConstraint {
    int relation = -1;
    std::vector<int> vars;
};

/// Resolves names against the signature; throws InputError on unknown
/// relations, arity mismatches, or unknown variables.
std::vector<ResolvedConstraint> resolve(const Instance& inst, const Signature& sig);

/// All valid types of the given arity, in row-major lexicographic order
/// with E < N < Equal. Throws InputError when k exceeds the cap.
std::vector<TypeMatrix> enumerate_types(int k, const BaseStructure& base,
                                        int cap = kDefaultArityCap);

/// Compiles a quantifier-free formula over atoms E(i,j), N(i,j), Eq(i,j),
/// eq(i,j), neq(i,j) (1-based indices, connectives & | !, parentheses) into
/// the set of valid arity-k types satisfying it.
OrbitRelation compile_formula(const std::string& name, const std::string& text, int k,
                              const BaseStructure& base, int cap = kDefaultArityCap);

/// Evaluates the formula on one matrix (exposed for tests).
bool eval_formula(const std::string& text, const TypeMatrix& m);

/// Stable content hash of a relation (arity and type set, not the name);
/// cache key for compiled clause sets.
std::string relation_hash(const OrbitRelation& r);

}  // namespace hcsp
