#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcsp/behaviour.hpp"
#include "hcsp/relation.hpp"

namespace hcsp {

enum class Status { Sat, Unsat };

inline const char* status_name(Status s) { return s == Status::Sat ? "SAT" : "UNSAT"; }

/// A satisfying assignment, reported as the atomic type of the variable
/// tuple rather than as concrete vertices.
struct Witness {
    std::vector<std::string> variables;
    TypeMatrix type;
};

struct SolveResult {
    Status status = Status::Unsat;
    std::optional<Witness> witness;

    static SolveResult sat(Witness w) { return {Status::Sat, std::move(w)}; }
    static SolveResult unsat() { return {Status::Unsat, std::nullopt}; }
};

/// Exhaustive backtracking search over type matrices on the instance
/// variables. Sound and complete up to `cap` variables: a pp-sentence holds
/// in the base structure iff some valid type over its variables satisfies
/// every constraint.
SolveResult oracle_solve(const Signature& sig, const Instance& inst,
                         int cap = kDefaultOracleCap);

/// Checks a witness against the instance: the type must be valid for the
/// base and every constraint's induced submatrix must lie in its relation.
bool verify_witness(const Signature& sig, const Instance& inst, const Witness& w,
                    std::string* why = nullptr);

/// Deterministic seeded generators.
Instance random_instance(const Signature& sig, int vars, int cons, std::uint64_t seed);
OrbitRelation random_relation(const BaseStructure& base, int k, std::uint64_t seed,
                              const Behaviour* close = nullptr,
                              int cap = kDefaultArityCap);

/// Seeded engine shared by the generators; splitmix-fed mt19937_64 with
/// modulo draws so output is identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    std::uint64_t below(std::uint64_t n);  // uniform in [0, n)
    bool coin();

private:
    std::uint64_t state_;
};

}  // namespace hcsp
