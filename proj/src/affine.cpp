#include "hcsp/affine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "hcsp/behaviour.hpp"

namespace hcsp {

namespace {

struct SimpleUf {
    std::vector<int> parent;
    explicit SimpleUf(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a < b) std::swap(a, b);  // keep the smaller index as representative
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

}  // namespace

InjectivizeResult injectivize(const Signature& sig, const Instance& inst) {
    if (!(sig.base.is_equiv() && sig.base.n == 2 && is_omega(sig.base.s)))
        throw InputError("injectivize expects the equiv(2,omega) base");
    auto resolved = resolve(inst, sig);
    const int nvars = static_cast<int>(inst.variables.size());
    SimpleUf uf(nvars);

    // per constraint: the types consistent with the current identifications
    std::vector<std::vector<TypeMatrix>> kept(resolved.size());
    for (std::size_t c = 0; c < resolved.size(); ++c)
        kept[c] = sig.relations[static_cast<std::size_t>(resolved[c].relation)].types.items();

    InjectivizeResult out;
    out.var_rep.assign(static_cast<std::size_t>(nvars), 0);

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < resolved.size(); ++c) {
            const auto& vars = resolved[c].vars;
            const int k = static_cast<int>(vars.size());
            auto same = [&](int p, int q) {
                return uf.find(vars[static_cast<std::size_t>(p)]) ==
                       uf.find(vars[static_cast<std::size_t>(q)]);
            };
            std::vector<TypeMatrix> next;
            for (const auto& t : kept[c]) {
                bool ok = true;
                for (int p = 0; p < k && ok; ++p)
                    for (int q = p + 1; q < k && ok; ++q)
                        if (same(p, q) && t.at(p, q) != PairValue::Equal) ok = false;
                if (ok) next.push_back(t);
            }
            kept[c] = std::move(next);
            if (kept[c].empty()) {
                out.rejected = true;
                return out;
            }
            // a position pair Equal in every remaining type forces a merge
            for (int p = 0; p < k; ++p)
                for (int q = p + 1; q < k; ++q) {
                    if (same(p, q)) continue;
                    bool forced = true;
                    for (const auto& t : kept[c])
                        if (t.at(p, q) != PairValue::Equal) {
                            forced = false;
                            break;
                        }
                    if (forced) {
                        uf.join(vars[static_cast<std::size_t>(p)],
                                vars[static_cast<std::size_t>(q)]);
                        changed = true;
                    }
                }
        }
    }

    // contracted instance over representatives
    std::vector<int> rep_order;
    std::vector<int> rep_slot(static_cast<std::size_t>(nvars), -1);
    for (int v = 0; v < nvars; ++v) {
        int r = uf.find(v);
        if (rep_slot[static_cast<std::size_t>(r)] < 0) {
            rep_slot[static_cast<std::size_t>(r)] = static_cast<int>(rep_order.size());
            rep_order.push_back(r);
        }
        out.var_rep[static_cast<std::size_t>(v)] = rep_slot[static_cast<std::size_t>(r)];
    }
    for (int r : rep_order)
        out.contracted.variables.push_back(inst.variables[static_cast<std::size_t>(r)]);

    for (std::size_t c = 0; c < resolved.size(); ++c) {
        const auto& vars = resolved[c].vars;
        // distinct positions, first occurrence per representative
        std::vector<int> positions;
        std::set<int> seen;
        for (std::size_t p = 0; p < vars.size(); ++p) {
            int slot = out.var_rep[static_cast<std::size_t>(vars[p])];
            if (seen.insert(slot).second) positions.push_back(static_cast<int>(p));
        }
        Constraint nc;
        nc.rel = inst.constraints[c].rel;
        for (int p : positions)
            nc.vars.push_back(
                out.contracted
                    .variables[static_cast<std::size_t>(out.var_rep[static_cast<std::size_t>(
                        vars[static_cast<std::size_t>(p)])])]);

        std::vector<TypeMatrix> inj;
        for (const auto& t : kept[c]) {
            TypeMatrix proj = t.induced(positions);
            bool injective = true;
            for (int idx = 0; idx < proj.pair_count() && injective; ++idx)
                if (proj.cell(idx) == PairValue::Equal) injective = false;
            if (injective) inj.push_back(proj);
        }
        if (inj.empty())
            throw InternalError(
                "injectivization emptied a constraint; the relation lacks the required "
                "injection polymorphism");
        out.contracted.constraints.push_back(std::move(nc));
        out.constraint_types.emplace_back(std::move(inj));
    }
    return out;
}

SolveResult solve_c2w_minority(const Signature& sig, const Instance& inst,
                               Gf2System* emit_system) {
    auto inj = injectivize(sig, inst);
    if (inj.rejected) return SolveResult::unsat();

    const int m = static_cast<int>(inj.contracted.variables.size());
    std::map<std::string, int> slot;
    for (int i = 0; i < m; ++i) slot[inj.contracted.variables[static_cast<std::size_t>(i)]] = i;

    Gf2System sys;
    sys.width = m;
    for (std::size_t c = 0; c < inj.contracted.constraints.size(); ++c) {
        const auto& con = inj.contracted.constraints[c];
        const int k = static_cast<int>(con.vars.size());
        // class patterns: bit tuples whose equality pattern matches some
        // injective type (same bit <=> E, i.e. same class)
        std::vector<BitVec> patterns;
        for (int bits = 0; bits < (1 << k); ++bits) {
            bool match = false;
            for (const auto& t : inj.constraint_types[c]) {
                bool ok = true;
                for (int p = 0; p < k && ok; ++p)
                    for (int q = p + 1; q < k && ok; ++q) {
                        bool eq_bits = ((bits >> p) & 1) == ((bits >> q) & 1);
                        if (eq_bits != (t.at(p, q) == PairValue::E)) ok = false;
                    }
                if (ok) {
                    match = true;
                    break;
                }
            }
            if (match) {
                BitVec v(k);
                for (int p = 0; p < k; ++p)
                    if ((bits >> p) & 1) v.set(p);
                patterns.push_back(std::move(v));
            }
        }
        auto hull = affine_hull(patterns, k);
        if (!hull.exact)
            throw InternalError("class patterns of " + con.rel +
                                " are not affine; relation lacks the minority polymorphism");
        for (std::size_t r = 0; r < hull.system.rows.size(); ++r) {
            BitVec row(m);
            for (int p = 0; p < k; ++p)
                if (hull.system.rows[r].test(p)) row.flip(slot[con.vars[static_cast<std::size_t>(p)]]);
            sys.add_row(std::move(row), hull.system.rhs[r] != 0);
        }
    }

    if (emit_system) *emit_system = sys;
    auto res = gf2_solve(sys);
    if (!res.consistent) return SolveResult::unsat();

    const int n = static_cast<int>(inst.variables.size());
    TypeMatrix w(std::max(n, 1), PairValue::N);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int ri = inj.var_rep[static_cast<std::size_t>(i)];
            int rj = inj.var_rep[static_cast<std::size_t>(j)];
            if (ri == rj) w.set(i, j, PairValue::Equal);
            else if (res.solution.test(ri) == res.solution.test(rj)) w.set(i, j, PairValue::E);
        }
    return SolveResult::sat(Witness{inst.variables, w});
}

// ---------------------------------------------------------------------------
// parity clauses over equiv(omega,2)

bool ParityClause::satisfied_by(const TypeMatrix& m) const {
    for (auto [p, q] : body)
        if (m.at(p, q) == PairValue::N) return true;
    if (head == Head::Eq) return m.at(eq_pair.first, eq_pair.second) != PairValue::N;
    int count = 0;
    for (int i : sel) {
        auto [p, q] = body[static_cast<std::size_t>(i)];
        if (m.at(p, q) == PairValue::E) count++;
    }
    return count % 2 == parity_bit;
}

namespace {

struct PairPlanes {
    std::uint32_t eq = 0;  // value in {E, Equal}
    std::uint32_t e = 0;   // value E
};

PairPlanes pair_planes(const TypeMatrix& m) {
    PairPlanes p;
    for (int idx = 0; idx < m.pair_count(); ++idx) {
        if (m.cell(idx) != PairValue::N) p.eq |= 1u << idx;
        if (m.cell(idx) == PairValue::E) p.e |= 1u << idx;
    }
    return p;
}

std::vector<std::pair<int, int>> pairs_of_mask(std::uint32_t mask, int arity) {
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < arity; ++p)
        for (int q = p + 1; q < arity; ++q)
            if (mask >> TypeMatrix::pair_index(p, q, arity) & 1) out.emplace_back(p, q);
    return out;
}

}  // namespace

ParityCompilation compile_parity(const OrbitRelation& r, const BaseStructure& base, int cap) {
    if (!(base.is_equiv() && is_omega(base.n) && base.s == 2))
        throw InputError("parity compilation expects the equiv(omega,2) base");
    if (r.arity > cap)
        throw InputError("relation arity " + std::to_string(r.arity) + " exceeds cap " +
                         std::to_string(cap));

    auto valid_types = enumerate_types(r.arity, base, cap);
    std::vector<PairPlanes> s_planes;
    std::unordered_set<std::uint64_t> members;
    for (const auto& t : r.types) {
        PairPlanes p = pair_planes(t);
        s_planes.push_back(p);
        members.insert((static_cast<std::uint64_t>(p.eq) << 32) | p.e);
    }

    ParityCompilation out;
    std::vector<TypeMatrix> excluded;
    std::vector<ParityClause> clauses;
    std::set<std::string> seen;

    for (const auto& t : valid_types) {
        PairPlanes tp = pair_planes(t);
        if (members.count((static_cast<std::uint64_t>(tp.eq) << 32) | tp.e)) continue;
        excluded.push_back(t);

        ParityClause c;
        c.body = pairs_of_mask(tp.eq, r.arity);

        // members that are Eq wherever t is Eq
        std::vector<std::uint32_t> vecs;
        std::uint32_t n_cover = 0;
        for (const auto& s : s_planes)
            if ((s.eq & tp.eq) == tp.eq) {
                vecs.push_back(s.e & tp.eq);
                n_cover |= ~s.eq;
            }

        if (vecs.empty()) {
            c.head = ParityClause::Head::Parity;  // empty parity of bit 1: plain false
            c.parity_bit = 1;
        } else {
            // affine-hull membership of t's E-vector over the Eq coordinates
            std::vector<std::uint32_t> basis;
            auto reduce = [&](std::uint32_t v) {
                for (std::uint32_t b : basis) v = std::min(v, v ^ b);
                return v;
            };
            for (std::size_t i = 1; i < vecs.size(); ++i) {
                std::uint32_t d = reduce(vecs[i] ^ vecs[0]);
                if (d) {
                    basis.push_back(d);
                    std::sort(basis.rbegin(), basis.rend());
                }
            }
            std::uint32_t tvec = (tp.e & tp.eq) ^ vecs[0];
            if (reduce(tvec) != 0) {
                // separating parity equation: find sel with sum over members
                // constant and different from t's sum
                const int width = static_cast<int>(c.body.size());
                std::vector<BitVec> pts;
                for (std::uint32_t v : vecs) {
                    BitVec b(width);
                    for (int i = 0; i < width; ++i) {
                        auto [p, q] = c.body[static_cast<std::size_t>(i)];
                        if (v >> TypeMatrix::pair_index(p, q, r.arity) & 1) b.set(i);
                    }
                    pts.push_back(std::move(b));
                }
                auto hull = affine_hull(pts, width);
                BitVec tb(width);
                for (int i = 0; i < width; ++i) {
                    auto [p, q] = c.body[static_cast<std::size_t>(i)];
                    if (tp.e >> TypeMatrix::pair_index(p, q, r.arity) & 1) tb.set(i);
                }
                bool found = false;
                for (std::size_t row = 0; row < hull.system.rows.size(); ++row) {
                    if (hull.system.rows[row].dot(tb) != (hull.system.rhs[row] != 0)) {
                        c.head = ParityClause::Head::Parity;
                        for (int i = 0; i < width; ++i)
                            if (hull.system.rows[row].test(i)) c.sel.push_back(i);
                        c.parity_bit = hull.system.rhs[row] != 0;
                        found = true;
                        break;
                    }
                }
                if (!found) throw InternalError("affine separation failed");
            } else {
                // t is in the affine hull: some N-pair of t must be Eq in
                // every compatible member, else t is reachable
                const std::uint32_t all_pairs =
                    t.pair_count() >= 32 ? ~0u : (1u << t.pair_count()) - 1;
                std::uint32_t t_n = all_pairs & ~tp.eq;
                std::uint32_t uncovered = t_n & ~n_cover;
                if (!uncovered) {
                    out.exact = false;
                    out.separating = t;
                    return out;
                }
                int idx = __builtin_ctz(uncovered);
                c.head = ParityClause::Head::Eq;
                for (int p = 0; p < r.arity && c.eq_pair.first < 0; ++p)
                    for (int q = p + 1; q < r.arity; ++q)
                        if (TypeMatrix::pair_index(p, q, r.arity) == idx) {
                            c.eq_pair = {p, q};
                            break;
                        }
            }
        }

        // dedup
        std::string key;
        for (auto [p, q] : c.body) key += std::to_string(p) + "," + std::to_string(q) + ";";
        key += "|" + std::to_string(static_cast<int>(c.head));
        if (c.head == ParityClause::Head::Eq)
            key += ":" + std::to_string(c.eq_pair.first) + "," + std::to_string(c.eq_pair.second);
        else {
            key += ":" + std::to_string(c.parity_bit) + ":";
            for (int i : c.sel) {
                auto [p, q] = c.body[static_cast<std::size_t>(i)];
                key += std::to_string(p) + "," + std::to_string(q) + ";";
            }
        }
        if (seen.insert(key).second) clauses.push_back(std::move(c));
    }

    // prune clauses dominated by one with a smaller body and the same head
    auto head_key = [&](const ParityClause& c) {
        std::string k = std::to_string(static_cast<int>(c.head));
        if (c.head == ParityClause::Head::Eq)
            k += ":" + std::to_string(c.eq_pair.first) + "," + std::to_string(c.eq_pair.second);
        else {
            k += ":" + std::to_string(c.parity_bit) + ":";
            std::vector<std::pair<int, int>> sp;
            for (int i : c.sel) sp.push_back(c.body[static_cast<std::size_t>(i)]);
            std::sort(sp.begin(), sp.end());
            for (auto [p, q] : sp) k += std::to_string(p) + "," + std::to_string(q) + ";";
        }
        return k;
    };
    std::vector<bool> drop(clauses.size(), false);
    for (std::size_t i = 0; i < clauses.size(); ++i)
        for (std::size_t j = 0; j < clauses.size(); ++j) {
            if (i == j || drop[i] || drop[j]) continue;
            const bool false_head = clauses[i].head == ParityClause::Head::Parity &&
                                    clauses[i].sel.empty() && clauses[i].parity_bit == 1;
            if (!(false_head || head_key(clauses[i]) == head_key(clauses[j]))) continue;
            if (clauses[i].body.size() < clauses[j].body.size() &&
                std::includes(clauses[j].body.begin(), clauses[j].body.end(),
                              clauses[i].body.begin(), clauses[i].body.end()))
                drop[j] = true;
        }
    std::vector<ParityClause> kept;
    for (std::size_t i = 0; i < clauses.size(); ++i)
        if (!drop[i]) kept.push_back(clauses[i]);

    // machine-check exactness both ways
    for (const auto& c : kept)
        for (const auto& s : r.types)
            if (!c.satisfied_by(s)) throw InternalError("parity clause rejects a member type");
    for (const auto& t : excluded) {
        bool violated = false;
        for (const auto& c : kept)
            if (!c.satisfied_by(t)) {
                violated = true;
                break;
            }
        if (!violated) {
            out.exact = false;
            out.separating = t;
            out.clauses.clear();
            return out;
        }
    }

    out.exact = true;
    out.clauses = std::move(kept);
    return out;
}

std::optional<std::string> ParitySignature::inexact_relation() const {
    for (std::size_t i = 0; i < compiled.size(); ++i)
        if (!compiled[i].exact) return sig.relations[i].name;
    return std::nullopt;
}

ParitySignature compile_parity_signature(const Signature& sig, int cap) {
    ParitySignature out;
    out.sig = sig;
    for (const auto& r : sig.relations) out.compiled.push_back(compile_parity(r, sig.base, cap));
    return out;
}

// ---------------------------------------------------------------------------
// solver

namespace {

struct InstParityClause {
    std::vector<std::pair<int, int>> body;  // variable pairs, a < b
    bool head_eq = false;
    std::pair<int, int> eq_pair{-1, -1};
    std::vector<std::pair<int, int>> sel;  // variable pairs with odd multiplicity
    int bit = 0;
    bool done = false;
};

}  // namespace

SolveResult solve_cw2_parity(const ParitySignature& psig, const Instance& inst,
                             Gf2System* emit_system, int pair_mode_threshold) {
    if (auto bad = psig.inexact_relation())
        throw InputError("relation " + *bad + " is not compiled exactly");
    auto resolved = resolve(inst, psig.sig);
    const int nvars = static_cast<int>(inst.variables.size());

    std::vector<InstParityClause> clauses;
    for (const auto& rc : resolved) {
        const auto& comp = psig.compiled[static_cast<std::size_t>(rc.relation)];
        for (const auto& c : comp.clauses) {
            InstParityClause ic;
            bool trivially_true = false;
            std::map<std::pair<int, int>, int> sel_mult;
            std::set<std::pair<int, int>> body_pairs;
            for (std::size_t i = 0; i < c.body.size(); ++i) {
                auto [p, q] = c.body[i];
                int a = rc.vars[static_cast<std::size_t>(p)];
                int b = rc.vars[static_cast<std::size_t>(q)];
                if (a == b) continue;  // N(x,x) is false, drop the disjunct
                if (a > b) std::swap(a, b);
                body_pairs.insert({a, b});
            }
            if (c.head == ParityClause::Head::Eq) {
                int a = rc.vars[static_cast<std::size_t>(c.eq_pair.first)];
                int b = rc.vars[static_cast<std::size_t>(c.eq_pair.second)];
                if (a == b) trivially_true = true;  // Eq(x,x) holds
                else {
                    ic.head_eq = true;
                    ic.eq_pair = {std::min(a, b), std::max(a, b)};
                }
            } else {
                ic.bit = c.parity_bit;
                for (int i : c.sel) {
                    auto [p, q] = c.body[static_cast<std::size_t>(i)];
                    int a = rc.vars[static_cast<std::size_t>(p)];
                    int b = rc.vars[static_cast<std::size_t>(q)];
                    if (a == b) continue;  // x != x is false, contributes 0
                    if (a > b) std::swap(a, b);
                    sel_mult[{a, b}] ^= 1;
                }
                for (auto& [pr, mult] : sel_mult)
                    if (mult) ic.sel.push_back(pr);
            }
            if (trivially_true) continue;
            ic.body.assign(body_pairs.begin(), body_pairs.end());
            clauses.push_back(std::move(ic));
        }
    }

    // component fixpoint: intra-component N-disjuncts are false and get
    // removed; emptied Eq-head clauses merge components
    SimpleUf uf(nvars);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& c : clauses) {
            if (c.done) continue;
            auto new_end = std::remove_if(c.body.begin(), c.body.end(), [&](const auto& pr) {
                return uf.find(pr.first) == uf.find(pr.second);
            });
            if (new_end != c.body.end()) c.body.erase(new_end, c.body.end());
            if (c.head_eq && uf.find(c.eq_pair.first) == uf.find(c.eq_pair.second)) {
                c.done = true;  // head already holds
                continue;
            }
            if (c.body.empty()) {
                if (c.head_eq) {
                    uf.join(c.eq_pair.first, c.eq_pair.second);
                    c.done = true;
                    changed = true;
                }
                // parity clauses with empty body become equations below
            }
        }
    }

    // assemble the Boolean system
    Gf2System sys;
    Gf2Result res;
    const bool pair_mode = nvars <= pair_mode_threshold;
    if (pair_mode) {
        auto pv = [&](int a, int b) {
            if (a > b) std::swap(a, b);
            return TypeMatrix::pair_index(a, b, nvars);
        };
        sys.width = nvars * (nvars - 1) / 2;
        for (const auto& c : clauses) {
            if (c.done || !c.body.empty() || c.head_eq) continue;
            BitVec row(sys.width);
            for (auto [a, b] : c.sel) row.flip(pv(a, b));
            sys.add_row(std::move(row), c.bit != 0);
        }
        // the triangle equations xy + yz = xz, for every variable triple
        for (int i = 0; i < nvars; ++i)
            for (int j = i + 1; j < nvars; ++j)
                for (int k = j + 1; k < nvars; ++k) {
                    BitVec row(sys.width);
                    row.set(pv(i, j));
                    row.set(pv(j, k));
                    row.set(pv(i, k));
                    sys.add_row(std::move(row), false);
                }
        res = gf2_solve(sys, sys.rows.size() <= 4096);
    } else {
        // equivalent encoding by one bit per variable: xy = x + y
        sys.width = nvars;
        for (const auto& c : clauses) {
            if (c.done || !c.body.empty() || c.head_eq) continue;
            BitVec row(sys.width);
            for (auto [a, b] : c.sel) {
                row.flip(a);
                row.flip(b);
            }
            sys.add_row(std::move(row), c.bit != 0);
        }
        res = gf2_solve(sys);
    }
    if (emit_system) *emit_system = sys;
    if (!res.consistent) return SolveResult::unsat();

    // witness: components are the Eq-blocks, the bit of (x, rep) picks one
    // of the two class members
    TypeMatrix w(std::max(nvars, 1), PairValue::N);
    for (int i = 0; i < nvars; ++i)
        for (int j = i + 1; j < nvars; ++j) {
            if (uf.find(i) != uf.find(j)) continue;
            bool differ;
            if (pair_mode) differ = res.solution.test(TypeMatrix::pair_index(i, j, nvars));
            else differ = res.solution.test(i) != res.solution.test(j);
            w.set(i, j, differ ? PairValue::E : PairValue::Equal);
        }
    return SolveResult::sat(Witness{inst.variables, w});
}

}  // namespace hcsp
