#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcsp/base.hpp"

namespace hcsp {

/// The three possible types of a pair of elements. The numeric order
/// E < N < EQUAL fixes all deterministic orderings in the library.
enum class PairValue : std::uint8_t { E = 0, N = 1, Equal = 2 };

char pair_value_char(PairValue v);
std::optional<PairValue> pair_value_from_char(char c);

/// Atomic type of a k-tuple: a symmetric map from index pairs to pair
/// values, diagonal implicitly Equal. Stored as the row-major upper
/// triangle (0,1),(0,2),...,(0,k-1),(1,2),...
class TypeMatrix {
public:
    TypeMatrix() : arity_(1) {}
    explicit TypeMatrix(int arity, PairValue fill = PairValue::N);

    int arity() const { return arity_; }
    int pair_count() const { return static_cast<int>(cells_.size()); }

    static int pair_index(int i, int j, int arity);

    PairValue at(int i, int j) const;
    void set(int i, int j, PairValue v);

    PairValue cell(int idx) const { return cells_[static_cast<std::size_t>(idx)]; }
    void set_cell(int idx, PairValue v) { cells_[static_cast<std::size_t>(idx)] = v; }

    /// Upper-triangle cells as a string over {E,N,=}, row-major.
    std::string cells_string() const;
    static std::optional<TypeMatrix> from_cells_string(int arity, const std::string& cells);

    /// Packed base-3 code (row-major); unique per matrix for arity <= 20.
    std::uint64_t code() const;

    /// Matrix with rows/columns permuted: entry(p[i],p[j]) = entry(i,j).
    TypeMatrix permuted(const std::vector<int>& perm) const;

    /// Submatrix on the given (not necessarily distinct) indices; repeated
    /// indices yield Equal entries.
    TypeMatrix induced(const std::vector<int>& indices) const;

    friend bool operator==(const TypeMatrix& a, const TypeMatrix& b) {
        return a.arity_ == b.arity_ && a.cells_ == b.cells_;
    }
    friend bool operator<(const TypeMatrix& a, const TypeMatrix& b) {
        if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
        return a.cells_ < b.cells_;
    }

private:
    int arity_;
    std::vector<PairValue> cells_;
};

/// Outcome of a validity check; `reason` names the first violated rule.
struct Validity {
    bool ok = true;
    std::string reason;

    static Validity valid() { return {true, {}}; }
    static Validity invalid(std::string r) { return {false, std::move(r)}; }
    explicit operator bool() const { return ok; }
};

/// Checks all invariants of `m` against `base`: Equal-congruence first,
/// then K_n-freeness (henson), or Eq-transitivity and class bounds (equiv),
/// or the absence of E entries (equality base).
Validity validate_type(const TypeMatrix& m, const BaseStructure& base);

/// Equality pattern of a type: E and N both become N ("distinct"), Equal
/// is kept. The result lives over the equality base. Idempotent.
TypeMatrix skeleton(const TypeMatrix& m);

}  // namespace hcsp
