#include "hcsp/oracle.hpp"

#include <algorithm>
#include <map>

namespace hcsp {

Rng::Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

bool Rng::coin() { return (next() & 1) != 0; }

namespace {

struct ConstraintState {
    const OrbitRelation* rel = nullptr;
    std::vector<std::uint32_t> alive;  // bitset over rel->types
    int alive_count = 0;

    void erase(std::size_t t) {
        alive[t >> 5] &= ~(1u << (t & 31));
        --alive_count;
    }
    bool test(std::size_t t) const { return (alive[t >> 5] >> (t & 31)) & 1; }
};

struct PairHook {
    int constraint;
    int p, q;  // positions inside the constraint
};

class OracleSearch {
public:
    OracleSearch(const Signature& sig, const Instance& inst, int cap) : sig_(sig), inst_(inst) {
        const int v = static_cast<int>(inst.variables.size());
        if (v > cap)
            throw InputError("instance has " + std::to_string(v) +
                             " variables, oracle cap is " + std::to_string(cap));
        resolved_ = resolve(inst, sig);
        vars_ = v;
    }

    SolveResult run() {
        if (vars_ == 0) return SolveResult::sat(Witness{{}, TypeMatrix(1)});
        m_ = TypeMatrix(vars_, PairValue::N);
        set_.assign(static_cast<std::size_t>(m_.pair_count()), 0);

        // per-constraint live masks + hooks from variable pairs to positions
        states_.resize(resolved_.size());
        for (std::size_t c = 0; c < resolved_.size(); ++c) {
            const auto& rc = resolved_[c];
            const auto& rel = sig_.relations[static_cast<std::size_t>(rc.relation)];
            auto& st = states_[c];
            st.rel = &rel;
            const std::size_t nt = rel.types.size();
            st.alive.assign((nt + 31) / 32, 0);
            for (std::size_t t = 0; t < nt; ++t) st.alive[t >> 5] |= 1u << (t & 31);
            st.alive_count = static_cast<int>(nt);
            for (int p = 0; p < rel.arity; ++p)
                for (int q = p + 1; q < rel.arity; ++q) {
                    int a = rc.vars[static_cast<std::size_t>(p)];
                    int b = rc.vars[static_cast<std::size_t>(q)];
                    if (a == b) {
                        filter(st, p, q, PairValue::Equal);  // induced entry is Equal
                    } else {
                        if (a > b) std::swap(a, b);
                        hooks_[{a, b}].push_back({static_cast<int>(c), p, q});
                    }
                }
            if (st.alive_count == 0) return SolveResult::unsat();
        }

        // assign constraint-covered pairs first, vertex-interleaved within
        // each group, so constraint masks and validity prune early
        std::vector<std::pair<int, int>> covered, free_pairs;
        for (int v = 1; v < vars_; ++v)
            for (int u = 0; u < v; ++u)
                (hooks_.count({u, v}) ? covered : free_pairs).emplace_back(u, v);
        order_ = std::move(covered);
        order_.insert(order_.end(), free_pairs.begin(), free_pairs.end());

        if (search(0)) return SolveResult::sat(Witness{inst_.variables, m_});
        return SolveResult::unsat();
    }

private:
    const Signature& sig_;
    const Instance& inst_;
    std::vector<ResolvedConstraint> resolved_;
    int vars_ = 0;
    TypeMatrix m_{1};
    std::vector<char> set_;
    std::vector<std::pair<int, int>> order_;
    std::vector<ConstraintState> states_;
    std::map<std::pair<int, int>, std::vector<PairHook>> hooks_;

    static void filter(ConstraintState& st, int p, int q, PairValue v) {
        const auto& types = st.rel->types.items();
        for (std::size_t t = 0; t < types.size(); ++t)
            if (st.test(t) && types[t].at(p, q) != v) st.erase(t);
    }

    bool is_set(int a, int b) const {
        return set_[static_cast<std::size_t>(TypeMatrix::pair_index(a, b, vars_))] != 0;
    }
    void mark(int a, int b, char on) {
        set_[static_cast<std::size_t>(TypeMatrix::pair_index(a, b, vars_))] = on;
    }

    bool locally_consistent(int u, int v, PairValue val) {
        // congruence against already-assigned entries
        for (int w = 0; w < vars_; ++w) {
            if (w == u || w == v) continue;
            if (!is_set(w, u) || !is_set(w, v)) continue;
            PairValue wu = m_.at(w, u), wv = m_.at(w, v);
            if (val == PairValue::Equal && wu != wv) return false;
            if (wu == PairValue::Equal && wv != val) return false;
            if (wv == PairValue::Equal && wu != val) return false;
        }

        if (sig_.base.is_henson()) {
            return !(val == PairValue::E && clique_through(u, v, sig_.base.n, PairValue::E));
        }
        if (sig_.base.is_equality()) return true;

        // equiv: no Eq,Eq,N triple among assigned entries
        auto is_eq = [&](PairValue x) { return x != PairValue::N; };
        for (int w = 0; w < vars_; ++w) {
            if (w == u || w == v) continue;
            if (!is_set(w, u) || !is_set(w, v)) continue;
            int eqs = is_eq(m_.at(w, u)) + is_eq(m_.at(w, v)) + is_eq(val);
            if (eqs == 2) return false;
        }
        if (!is_omega(sig_.base.s) && val == PairValue::E &&
            clique_through(u, v, sig_.base.s + 1, PairValue::E))
            return false;
        if (!is_omega(sig_.base.n) && val == PairValue::N &&
            clique_through(u, v, sig_.base.n + 1, PairValue::N))
            return false;
        return true;
    }

    // true iff the graph of `edge`-valued assigned pairs has a clique of
    // size `size` containing the (u,v) edge
    bool clique_through(int u, int v, int size, PairValue edge) {
        if (size <= 2) return true;
        std::vector<int> cands;
        for (int w = 0; w < vars_; ++w) {
            if (w == u || w == v) continue;
            if (!is_set(w, u) || !is_set(w, v)) continue;
            if (m_.at(w, u) == edge && m_.at(w, v) == edge) cands.push_back(w);
        }
        std::vector<int> chosen;
        return extend_clique(cands, 0, chosen, size - 2, edge);
    }

    bool extend_clique(const std::vector<int>& cands, std::size_t from, std::vector<int>& chosen,
                       int need, PairValue edge) {
        if (need == 0) return true;
        if (cands.size() - from < static_cast<std::size_t>(need)) return false;
        for (std::size_t i = from; i < cands.size(); ++i) {
            int w = cands[i];
            bool ok = true;
            for (int x : chosen)
                if (!is_set(std::min(w, x), std::max(w, x)) || m_.at(w, x) != edge) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(w);
            if (extend_clique(cands, i + 1, chosen, need - 1, edge)) return true;
            chosen.pop_back();
        }
        return false;
    }

    bool search(std::size_t depth) {
        if (depth == order_.size()) return static_cast<bool>(validate_type(m_, sig_.base));
        auto [u, v] = order_[depth];
        auto hook_it = hooks_.find({u, v});
        static const PairValue values[] = {PairValue::N, PairValue::E, PairValue::Equal};
        mark(u, v, 1);
        for (PairValue val : values) {
            if (sig_.base.is_equality() && val == PairValue::E) continue;
            m_.set(u, v, val);
            if (!locally_consistent(u, v, val)) continue;
            std::vector<std::pair<int, std::pair<std::vector<std::uint32_t>, int>>> saved;
            bool dead = false;
            if (hook_it != hooks_.end()) {
                for (const auto& h : hook_it->second) {
                    auto& st = states_[static_cast<std::size_t>(h.constraint)];
                    saved.push_back({h.constraint, {st.alive, st.alive_count}});
                    filter(st, h.p, h.q, val);
                    if (st.alive_count == 0) {
                        dead = true;
                        break;
                    }
                }
            }
            if (!dead && search(depth + 1)) return true;
            for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
                auto& st = states_[static_cast<std::size_t>(it->first)];
                st.alive = std::move(it->second.first);
                st.alive_count = it->second.second;
            }
        }
        mark(u, v, 0);
        return false;
    }
};

}  // namespace

SolveResult oracle_solve(const Signature& sig, const Instance& inst, int cap) {
    OracleSearch s(sig, inst, cap);
    return s.run();
}

bool verify_witness(const Signature& sig, const Instance& inst, const Witness& w,
                    std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (inst.variables.empty()) return inst.constraints.empty();
    if (w.variables.size() != inst.variables.size() ||
        w.type.arity() != static_cast<int>(inst.variables.size()))
        return fail("witness shape mismatch");
    if (auto v = validate_type(w.type, sig.base); !v)
        return fail("witness type invalid: " + v.reason);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < w.variables.size(); ++i)
        index[w.variables[i]] = static_cast<int>(i);
    for (const auto& c : inst.constraints) {
        const auto* rel = sig.find(c.rel);
        if (!rel) return fail("unknown relation " + c.rel);
        std::vector<int> idx;
        for (const auto& name : c.vars) {
            auto it = index.find(name);
            if (it == index.end()) return fail("witness misses variable " + name);
            idx.push_back(it->second);
        }
        if (!rel->types.contains(w.type.induced(idx)))
            return fail("constraint on " + c.rel + " is not satisfied");
    }
    return true;
}

Instance random_instance(const Signature& sig, int vars, int cons, std::uint64_t seed) {
    if (vars < 0 || cons < 0) throw InputError("random_instance: negative counts");
    if (cons > 0 && sig.relations.empty())
        throw InputError("random_instance: signature has no relations");
    if (cons > 0 && vars == 0) throw InputError("random_instance: constraints need variables");
    Rng rng(seed);
    Instance inst;
    for (int i = 0; i < vars; ++i) inst.variables.push_back("v" + std::to_string(i));
    for (int c = 0; c < cons; ++c) {
        const auto& rel = sig.relations[rng.below(sig.relations.size())];
        Constraint con;
        con.rel = rel.name;
        for (int p = 0; p < rel.arity; ++p)
            con.vars.push_back(inst.variables[rng.below(static_cast<std::uint64_t>(vars))]);
        inst.constraints.push_back(std::move(con));
    }
    return inst;
}

OrbitRelation random_relation(const BaseStructure& base, int k, std::uint64_t seed,
                              const Behaviour* close, int cap) {
    auto all = enumerate_types(k, base, cap);
    Rng rng(seed);
    std::vector<TypeMatrix> picked;
    for (const auto& t : all)
        if (rng.coin()) picked.push_back(t);
    if (picked.empty()) picked.push_back(all[rng.below(all.size())]);
    TypeSet set(std::move(picked));
    if (close) set = close_under(*close, set, k, base);
    return OrbitRelation{"R" + std::to_string(seed), k, std::move(set)};
}

}  // namespace hcsp
