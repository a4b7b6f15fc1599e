#include "hcsp/horn.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace hcsp {

namespace {

bool literal_true_on(const HornLiteral& l, const TypeMatrix& m) {
    PairValue v = m.at(l.p, l.q);
    switch (l.form) {
        case LitForm::IsN: return v == PairValue::N;
        case LitForm::IsNeq: return v != PairValue::Equal;
        case LitForm::NotE: return v != PairValue::E;
    }
    return false;
}

}  // namespace

bool HornClause::satisfied_by(const TypeMatrix& m) const {
    for (const auto& l : body)
        if (literal_true_on(l, m)) return true;
    switch (head) {
        case Head::E: return m.at(hp, hq) == PairValue::E;
        case Head::Equal: return m.at(hp, hq) == PairValue::Equal;
        case Head::False: return false;
    }
    return false;
}

namespace {

struct PlaneRep {
    std::uint32_t e = 0;   // E entries
    std::uint32_t q = 0;   // Equal entries
    friend bool operator==(const PlaneRep&, const PlaneRep&) = default;
};

PlaneRep plane_of(const TypeMatrix& m) {
    PlaneRep p;
    for (int idx = 0; idx < m.pair_count(); ++idx) {
        if (m.cell(idx) == PairValue::E) p.e |= 1u << idx;
        if (m.cell(idx) == PairValue::Equal) p.q |= 1u << idx;
    }
    return p;
}

TypeMatrix plane_to_matrix(PlaneRep p, int arity, int pairs) {
    TypeMatrix m(arity, PairValue::N);
    for (int idx = 0; idx < pairs; ++idx) {
        if (p.e >> idx & 1) m.set_cell(idx, PairValue::E);
        else if (p.q >> idx & 1) m.set_cell(idx, PairValue::Equal);
    }
    return m;
}

std::uint64_t plane_key(PlaneRep p) { return (static_cast<std::uint64_t>(p.e) << 32) | p.q; }

PlaneRep meet(PlaneRep a, PlaneRep b) { return {a.e & b.e, a.q & b.q}; }

// encoded literal for dedup/subset tests
int lit_code(const HornLiteral& l, int arity) {
    return TypeMatrix::pair_index(l.p, l.q, arity) * 3 + static_cast<int>(l.form);
}

}  // namespace

HornCompilation compile_horn(const OrbitRelation& r, const BaseStructure& base, int cap) {
    const bool base_ok =
        base.is_henson() || base.is_equality() || (base.is_equiv() && is_omega(base.n));
    if (!base_ok)
        throw InputError("horn compilation requires henson, equiv(omega,s) or the equality base");
    if (r.arity > cap)
        throw InputError("relation arity " + std::to_string(r.arity) + " exceeds cap " +
                         std::to_string(cap));

    const int pairs = r.arity * (r.arity - 1) / 2;

    std::vector<PlaneRep> s_planes;
    std::unordered_set<std::uint64_t> closed;
    std::deque<PlaneRep> work;
    for (const auto& t : r.types) {
        PlaneRep p = plane_of(t);
        if (closed.insert(plane_key(p)).second) {
            s_planes.push_back(p);
            work.push_back(p);
        }
    }

    // meet closure; meets of valid types stay valid over these bases
    std::vector<PlaneRep> all = s_planes;
    while (!work.empty()) {
        PlaneRep p = work.front();
        work.pop_front();
        const std::size_t snapshot = all.size();
        for (std::size_t i = 0; i < snapshot; ++i) {
            PlaneRep m = meet(p, all[i]);
            if (closed.insert(plane_key(m)).second) {
                all.push_back(m);
                work.push_back(m);
            }
        }
    }
    if (all.size() != s_planes.size()) {
        HornCompilation out;
        out.exact = false;
        out.separating = plane_to_matrix(all[s_planes.size()], r.arity, pairs);
        if (!validate_type(*out.separating, base))
            throw InternalError("meet of valid types became invalid");
        return out;
    }

    // generate one separating clause per excluded valid type
    std::unordered_set<std::uint64_t> members;
    for (const auto& p : s_planes) members.insert(plane_key(p));

    auto excluded_clause = [&](PlaneRep t) {
        HornClause c;
        for (int p2 = 0; p2 < r.arity; ++p2)
            for (int q2 = p2 + 1; q2 < r.arity; ++q2) {
                int idx = TypeMatrix::pair_index(p2, q2, r.arity);
                if (t.e >> idx & 1) c.body.push_back({p2, q2, LitForm::NotE});
                else if (t.q >> idx & 1) c.body.push_back({p2, q2, LitForm::IsNeq});
            }
        bool any = false;
        PlaneRep m{~0u, ~0u};
        for (const auto& s : s_planes) {
            if ((s.e & t.e) == t.e && (s.q & t.q) == t.q) {
                m = any ? meet(m, s) : s;
                any = true;
            }
        }
        if (!any) {
            c.head = HornClause::Head::False;
            return c;
        }
        for (int p2 = 0; p2 < r.arity && c.hp < 0; ++p2)
            for (int q2 = p2 + 1; q2 < r.arity; ++q2) {
                int idx = TypeMatrix::pair_index(p2, q2, r.arity);
                bool t_n = !((t.e >> idx) & 1) && !((t.q >> idx) & 1);
                if (!t_n) continue;
                if (m.e >> idx & 1) {
                    c.head = HornClause::Head::E;
                    c.hp = p2;
                    c.hq = q2;
                    break;
                }
                if (m.q >> idx & 1) {
                    c.head = HornClause::Head::Equal;
                    c.hp = p2;
                    c.hq = q2;
                    break;
                }
            }
        if (c.hp < 0)
            throw InternalError("meet of the upward set failed to produce a head");
        return c;
    };

    auto valid_types = enumerate_types(r.arity, base, cap);
    std::vector<TypeMatrix> excluded;
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    std::vector<HornClause> clauses;
    for (const auto& t : valid_types) {
        PlaneRep tp = plane_of(t);
        if (members.count(plane_key(tp))) continue;
        excluded.push_back(t);
        HornClause c = excluded_clause(tp);
        std::vector<int> body_key;
        for (const auto& l : c.body) body_key.push_back(lit_code(l, r.arity));
        std::sort(body_key.begin(), body_key.end());
        std::vector<int> head_key{static_cast<int>(c.head), c.hp, c.hq};
        if (seen.insert({body_key, head_key}).second) clauses.push_back(std::move(c));
    }

    // drop clauses whose body contains another clause's body with the same
    // head (or any false-head clause's body)
    auto body_codes = [&](const HornClause& c) {
        std::vector<int> v;
        for (const auto& l : c.body) v.push_back(lit_code(l, r.arity));
        std::sort(v.begin(), v.end());
        return v;
    };
    std::vector<std::vector<int>> codes;
    codes.reserve(clauses.size());
    for (const auto& c : clauses) codes.push_back(body_codes(c));
    std::vector<bool> drop(clauses.size(), false);
    for (std::size_t i = 0; i < clauses.size(); ++i)
        for (std::size_t j = 0; j < clauses.size(); ++j) {
            if (i == j || drop[j] || drop[i]) continue;
            const bool same_head = clauses[i].head == clauses[j].head &&
                                   clauses[i].hp == clauses[j].hp &&
                                   clauses[i].hq == clauses[j].hq;
            const bool dominates = same_head || clauses[i].head == HornClause::Head::False;
            if (!dominates) continue;
            if (std::includes(codes[j].begin(), codes[j].end(), codes[i].begin(),
                              codes[i].end()) &&
                codes[i].size() < codes[j].size())
                drop[j] = true;
        }
    std::vector<HornClause> kept;
    for (std::size_t i = 0; i < clauses.size(); ++i)
        if (!drop[i]) kept.push_back(clauses[i]);

    // machine-check exactness both ways
    for (const auto& c : kept)
        for (const auto& s : r.types)
            if (!c.satisfied_by(s))
                throw InternalError("compiled clause rejects a member type");
    for (const auto& t : excluded) {
        bool violated = false;
        for (const auto& c : kept)
            if (!c.satisfied_by(t)) {
                violated = true;
                break;
            }
        if (!violated) {
            HornCompilation out;
            out.exact = false;
            out.separating = t;
            return out;
        }
    }

    HornCompilation out;
    out.exact = true;
    out.clauses = std::move(kept);
    return out;
}

std::optional<std::string> HornSignature::inexact_relation() const {
    for (std::size_t i = 0; i < compiled.size(); ++i)
        if (!compiled[i].exact) return sig.relations[i].name;
    return std::nullopt;
}

HornSignature compile_horn_signature(const Signature& sig, int cap) {
    HornSignature out;
    out.sig = sig;
    for (const auto& r : sig.relations) out.compiled.push_back(compile_horn(r, sig.base, cap));
    return out;
}

// ---------------------------------------------------------------------------
// FactState

FactState::FactState(int vars)
    : parent_(static_cast<std::size_t>(vars)),
      members_(static_cast<std::size_t>(vars)),
      adj_(static_cast<std::size_t>(vars)) {
    for (int i = 0; i < vars; ++i) {
        parent_[static_cast<std::size_t>(i)] = i;
        members_[static_cast<std::size_t>(i)] = {i};
    }
}

int FactState::find(int x) const {
    while (parent_[static_cast<std::size_t>(x)] != x) {
        parent_[static_cast<std::size_t>(x)] =
            parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
        x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
}

namespace {
std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}
}  // namespace

bool FactState::merge(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return true;
    if (members_[static_cast<std::size_t>(rx)].size() >
        members_[static_cast<std::size_t>(ry)].size())
        std::swap(rx, ry);
    // rx joins ry
    ++revision_;
    parent_[static_cast<std::size_t>(rx)] = ry;
    auto& mem = members_[static_cast<std::size_t>(ry)];
    for (int v : members_[static_cast<std::size_t>(rx)]) mem.push_back(v);
    members_[static_cast<std::size_t>(rx)].clear();
    // lift E-facts from rx to ry
    for (int nb : adj_[static_cast<std::size_t>(rx)]) {
        auto& back = adj_[static_cast<std::size_t>(nb)];
        back.erase(std::remove(back.begin(), back.end(), rx), back.end());
        edge_keys_.erase(edge_key(rx, nb));
        if (nb == ry) {
            conflict_ = true;
            continue;
        }
        if (edge_keys_.insert(edge_key(ry, nb)).second) {
            back.push_back(ry);
            adj_[static_cast<std::size_t>(ry)].push_back(nb);
        }
    }
    adj_[static_cast<std::size_t>(rx)].clear();
    return !conflict_;
}

bool FactState::add_edge(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) {
        conflict_ = true;
        return false;
    }
    if (edge_keys_.insert(edge_key(rx, ry)).second) {
        ++revision_;
        adj_[static_cast<std::size_t>(rx)].push_back(ry);
        adj_[static_cast<std::size_t>(ry)].push_back(rx);
    }
    return true;
}

bool FactState::has_edge(int x, int y) const {
    return edge_keys_.count(edge_key(find(x), find(y))) != 0;
}

std::vector<std::pair<int, int>> FactState::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < vars(); ++r)
        for (int nb : adj_[static_cast<std::size_t>(r)])
            if (r < nb) out.emplace_back(r, nb);
    return out;
}

const std::vector<int>& FactState::neighbours(int rep) const {
    return adj_[static_cast<std::size_t>(rep)];
}

const std::vector<int>& FactState::members(int rep) const {
    return members_[static_cast<std::size_t>(rep)];
}

namespace {

bool edge_clique_of_size(const FactState& facts, int size) {
    if (size <= 0) return true;
    auto edges = facts.edges();
    if (edges.empty()) return size <= 1;
    std::vector<int> reps;
    for (auto [a, b] : edges) {
        reps.push_back(a);
        reps.push_back(b);
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

    std::vector<int> chosen;
    auto rec = [&](auto&& self, std::size_t from) -> bool {
        if (static_cast<int>(chosen.size()) == size) return true;
        for (std::size_t i = from; i < reps.size(); ++i) {
            int v = reps[i];
            bool ok = true;
            for (int u : chosen)
                if (!facts.has_edge(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(v);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace

CheckResult final_check(FactState& facts, const BaseStructure& base) {
    if (facts.conflict()) return {false, "reflexive E derived"};
    if (base.is_henson()) {
        if (edge_clique_of_size(facts, base.n))
            return {false, "forced-E clique of size " + std::to_string(base.n)};
        return {true, {}};
    }
    if (base.is_equality()) return {true, {}};

    // equiv(omega,2): saturate the matching rule
    bool changed = true;
    while (changed) {
        changed = false;
        for (int r = 0; r < facts.vars(); ++r) {
            if (facts.find(r) != r) continue;
            const auto nbs = facts.neighbours(r);
            if (nbs.size() < 2) continue;
            int a = nbs[0], b = nbs[1];
            if (!facts.merge(a, b)) return {false, "matching rule conflict"};
            changed = true;
            break;
        }
    }
    if (facts.conflict()) return {false, "matching rule conflict"};
    return {true, {}};
}

// ---------------------------------------------------------------------------
// horn_solve

namespace {

struct InstLiteral {
    int a = 0, b = 0;  // variable indices
    LitForm form = LitForm::IsN;
    bool falsified = false;
};

struct InstClause {
    std::vector<InstLiteral> body;
    HornClause::Head head = HornClause::Head::False;
    int ha = -1, hb = -1;
    int open = 0;  // not-yet-falsified body literals
    bool done = false;
};

class HornEngine {
public:
    HornEngine(const HornSignature& hsig, const Instance& inst)
        : base_(hsig.sig.base), facts_(static_cast<int>(inst.variables.size())) {
        if (auto bad = hsig.inexact_relation())
            throw InputError("relation " + *bad + " is not compiled exactly");
        auto resolved = resolve(inst, hsig.sig);
        for (const auto& rc : resolved) {
            const auto& comp = hsig.compiled[static_cast<std::size_t>(rc.relation)];
            for (const auto& c : comp.clauses) instantiate(c, rc.vars);
        }
        incidence_.resize(inst.variables.size());
        for (std::size_t ci = 0; ci < clauses_.size(); ++ci)
            for (std::size_t li = 0; li < clauses_[ci].body.size(); ++li) {
                const auto& l = clauses_[ci].body[li];
                incidence_[static_cast<std::size_t>(l.a)].push_back(
                    {static_cast<int>(ci), static_cast<int>(li)});
                incidence_[static_cast<std::size_t>(l.b)].push_back(
                    {static_cast<int>(ci), static_cast<int>(li)});
            }
    }

    SolveResult run(const Instance& inst) {
        if (unsat_) return SolveResult::unsat();
        // initial sweep + propagation to mutual fixpoint with final_check
        while (true) {
            sweep_all();
            if (unsat_) return SolveResult::unsat();
            std::uint64_t before = facts_.revision();
            auto check = final_check(facts_, base_);
            if (!check.ok) return SolveResult::unsat();
            if (facts_.revision() == before) break;
        }
        return SolveResult::sat(Witness{inst.variables, completion(inst)});
    }

private:
    BaseStructure base_;
    FactState facts_;
    std::vector<InstClause> clauses_;
    std::vector<std::vector<std::pair<int, int>>> incidence_;
    bool unsat_ = false;

    void instantiate(const HornClause& c, const std::vector<int>& vars) {
        InstClause ic;
        ic.head = c.head;
        if (c.head != HornClause::Head::False) {
            ic.ha = vars[static_cast<std::size_t>(c.hp)];
            ic.hb = vars[static_cast<std::size_t>(c.hq)];
            if (ic.ha == ic.hb) {
                if (c.head == HornClause::Head::Equal) return;  // trivially true
                ic.head = HornClause::Head::False;              // E(x,x) cannot hold
                ic.ha = ic.hb = -1;
            }
        }
        for (const auto& l : c.body) {
            int a = vars[static_cast<std::size_t>(l.p)];
            int b = vars[static_cast<std::size_t>(l.q)];
            if (a == b) {
                if (l.form == LitForm::NotE) return;  // literal true forever
                continue;                              // IsN / IsNeq false forever
            }
            ic.body.push_back({a, b, l.form, false});
        }
        ic.open = static_cast<int>(ic.body.size());
        clauses_.push_back(std::move(ic));
    }

    bool literal_falsified(const InstLiteral& l) const {
        if (facts_.same(l.a, l.b)) return l.form != LitForm::NotE;
        if (facts_.has_edge(l.a, l.b)) return l.form != LitForm::IsNeq;
        return false;
    }

    // re-derive falsification for every literal; fire ready clauses until
    // nothing changes (facts only strengthen, so sweeping is monotone)
    void sweep_all() {
        bool progress = true;
        while (progress && !unsat_) {
            progress = false;
            for (auto& c : clauses_) {
                if (c.done) continue;
                for (auto& l : c.body)
                    if (!l.falsified && literal_falsified(l)) {
                        l.falsified = true;
                        --c.open;
                    }
                if (c.open == 0) {
                    c.done = true;
                    progress = true;
                    fire(c);
                    if (unsat_) return;
                }
            }
        }
    }

    void fire(const InstClause& c) {
        switch (c.head) {
            case HornClause::Head::False: unsat_ = true; return;
            case HornClause::Head::E:
                if (!facts_.add_edge(c.ha, c.hb)) unsat_ = true;
                return;
            case HornClause::Head::Equal:
                if (!facts_.merge(c.ha, c.hb)) unsat_ = true;
                return;
        }
    }

    TypeMatrix completion(const Instance& inst) const {
        const int n = static_cast<int>(inst.variables.size());
        TypeMatrix m(std::max(n, 1), PairValue::N);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (facts_.same(i, j)) m.set(i, j, PairValue::Equal);
                else if (facts_.has_edge(i, j)) m.set(i, j, PairValue::E);
            }
        return m;
    }
};

}  // namespace

SolveResult horn_solve(const HornSignature& hsig, const Instance& inst) {
    HornEngine engine(hsig, inst);
    return engine.run(inst);
}

Status solve_hat(const BaseStructure& base, const Instance& inst) {
    const bool base_ok = base.is_henson() || (base.is_equiv() && is_omega(base.n) && base.s == 2);
    if (!base_ok) throw InputError("solve_hat expects henson(n) or equiv(omega,2)");
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < inst.variables.size(); ++i)
        index[inst.variables[i]] = static_cast<int>(i);

    FactState facts(static_cast<int>(inst.variables.size()));
    std::vector<std::pair<int, int>> hats, neqs;
    for (const auto& c : inst.constraints) {
        if (c.vars.size() != 2) throw InputError("hat signature relations are binary");
        auto ia = index.find(c.vars[0]), ib = index.find(c.vars[1]);
        if (ia == index.end() || ib == index.end()) throw InputError("unknown variable");
        int a = ia->second, b = ib->second;
        if (c.rel == "E") {
            if (a == b) return Status::Unsat;  // E is irreflexive
            facts.add_edge(a, b);
        } else if (c.rel == "Ehat") {
            hats.emplace_back(a, b);
        } else if (c.rel == "NEQ") {
            if (a == b) return Status::Unsat;
            neqs.emplace_back(a, b);
        } else {
            throw InputError("hat signature is {E, Ehat, NEQ}, got " + c.rel);
        }
    }
    if (facts.conflict()) return Status::Unsat;

    if (base.is_henson()) {
        for (auto [a, b] : hats)
            if (facts.has_edge(a, b)) return Status::Unsat;
        if (edge_clique_of_size(facts, base.n)) return Status::Unsat;
        return Status::Sat;
    }

    // equiv(omega,2): matching saturation, then re-check every constraint
    auto check = final_check(facts, base);
    if (!check.ok) return Status::Unsat;
    for (auto [a, b] : neqs)
        if (facts.same(a, b)) return Status::Unsat;
    for (auto [a, b] : hats)
        if (facts.has_edge(a, b)) return Status::Unsat;
    return Status::Sat;
}

}  // namespace hcsp
