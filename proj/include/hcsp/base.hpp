#pragma once

#include <stdexcept>
#include <string>

namespace hcsp {

/// Thrown on malformed input: bad parameters, parse failures, arity
/// mismatches, unknown relation names, exceeded caps.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a base structure is recognized but its classification is
/// handled by prior work rather than here (single class, classes of size
/// one, infinitely many infinite classes).
class DelegatedBaseError : public InputError {
public:
    explicit DelegatedBaseError(const std::string& what) : InputError(what) {}
};

/// Thrown when an internal consistency guarantee breaks; callers should
/// treat this as a bug, not as bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// Sentinel for an infinite parameter.
inline constexpr int kOmega = -1;

inline bool is_omega(int v) { return v == kOmega; }

/// Parameters of the underlying homogeneous graph.
///
/// henson(n):  the generic K_n-free graph, 3 <= n finite.
/// equiv(n,s): the graph whose reflexive closure is an equivalence relation
///             with n classes of size s; exactly one of n, s is omega and
///             the other is >= 2.
/// equality(): degenerate base where only equal/distinct survive; pair
///             value N is read as "distinct". Collapsed structures live here.
struct BaseStructure {
    enum class Kind { Henson, Equiv, Equality };

    Kind kind = Kind::Equality;
    int n = 0;  // henson: clique bound; equiv: class count (may be kOmega)
    int s = 0;  // equiv only: class size (may be kOmega)

    static BaseStructure henson(int n);
    static BaseStructure equiv(int n, int s);
    static BaseStructure equality();

    bool is_henson() const { return kind == Kind::Henson; }
    bool is_equiv() const { return kind == Kind::Equiv; }
    bool is_equality() const { return kind == Kind::Equality; }

    std::string describe() const;

    friend bool operator==(const BaseStructure&, const BaseStructure&) = default;
};

/// Default cap on relation arity for type enumeration and compilation.
inline constexpr int kDefaultArityCap = 6;

/// Default cap on variable count for the exhaustive oracle.
inline constexpr int kDefaultOracleCap = 10;

}  // namespace hcsp
