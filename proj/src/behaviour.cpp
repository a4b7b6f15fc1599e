#include "hcsp/behaviour.hpp"

#include <algorithm>
#include <unordered_set>

namespace hcsp {

int Behaviour::tuple_index(std::span<const PairValue> vs) {
    int idx = 0;
    for (PairValue v : vs) idx = idx * 3 + static_cast<int>(v);
    return idx;
}

PairValue Behaviour::apply(std::span<const PairValue> vs) const {
    return table[static_cast<std::size_t>(tuple_index(vs))];
}

PairValue Behaviour::apply1(PairValue a) const {
    const PairValue in[] = {a};
    return apply(in);
}

PairValue Behaviour::apply2(PairValue a, PairValue b) const {
    const PairValue in[] = {a, b};
    return apply(in);
}

PairValue Behaviour::apply3(PairValue a, PairValue b, PairValue c) const {
    const PairValue in[] = {a, b, c};
    return apply(in);
}

namespace {

int count_of(std::span<const PairValue> vs, PairValue x) {
    int c = 0;
    for (PairValue v : vs) c += (v == x);
    return c;
}

}  // namespace

Behaviour behaviour_min() {
    return Behaviour::make("B_min", 2, [](std::span<const PairValue> v) {
        return v[0] == v[1] ? v[0] : PairValue::N;
    });
}

Behaviour behaviour_eqmeet() {
    // same meet, named for the equality base where only {N, Equal} occur
    return Behaviour::make("B_eqmeet", 2, [](std::span<const PairValue> v) {
        return (v[0] == PairValue::Equal && v[1] == PairValue::Equal) ? PairValue::Equal
                                                                      : PairValue::N;
    });
}

Behaviour behaviour_p1() {
    return Behaviour::make("B_p1", 2, [](std::span<const PairValue> v) {
        return v[0] == PairValue::Equal ? v[1] : v[0];
    });
}

Behaviour behaviour_p2() {
    return Behaviour::make("B_p2", 2, [](std::span<const PairValue> v) {
        return v[1] == PairValue::Equal ? v[0] : v[1];
    });
}

Behaviour behaviour_edgedel() {
    return Behaviour::make("B_edgedel", 1, [](std::span<const PairValue> v) {
        return v[0] == PairValue::Equal ? PairValue::Equal : PairValue::N;
    });
}

Behaviour behaviour_cliquecol() {
    return Behaviour::make("B_cliquecol", 1, [](std::span<const PairValue> v) {
        return v[0] == PairValue::Equal ? PairValue::Equal : PairValue::E;
    });
}

Behaviour behaviour_quotient() {
    return Behaviour::make("B_quotient", 1, [](std::span<const PairValue> v) {
        return v[0] == PairValue::N ? PairValue::N : PairValue::Equal;
    });
}

Behaviour behaviour_const() {
    return Behaviour::make("B_const", 1,
                           [](std::span<const PairValue>) { return PairValue::Equal; });
}

Behaviour behaviour_xnor3() {
    return Behaviour::make("B_xnor3", 3, [](std::span<const PairValue> v) {
        const int eqs = count_of(v, PairValue::Equal);
        const int es = count_of(v, PairValue::E);
        switch (eqs) {
            case 0: return es % 2 == 1 ? PairValue::E : PairValue::N;
            case 1: {
                // xnor of the two non-Equal entries
                PairValue a = PairValue::E, b = PairValue::E;
                bool first = true;
                for (PairValue x : v)
                    if (x != PairValue::Equal) {
                        if (first) { a = x; first = false; }
                        else b = x;
                    }
                return a == b ? PairValue::E : PairValue::N;
            }
            case 2:
                for (PairValue x : v)
                    if (x != PairValue::Equal) return x;
                return PairValue::Equal;
            default: return PairValue::Equal;
        }
    });
}

Behaviour behaviour_h3() {
    return Behaviour::make("B_H3", 3, [](std::span<const PairValue> v) {
        if (count_of(v, PairValue::N) > 0) return PairValue::N;
        return count_of(v, PairValue::E) % 2 == 1 ? PairValue::E : PairValue::Equal;
    });
}

Behaviour behaviour_majority() {
    return Behaviour::make("B_majority", 3, [](std::span<const PairValue> v) {
        if (count_of(v, PairValue::Equal) == 3) return PairValue::Equal;
        if (count_of(v, PairValue::Equal) > 0) return PairValue::N;
        return count_of(v, PairValue::E) >= 2 ? PairValue::E : PairValue::N;
    });
}

Behaviour behaviour_minority() {
    return Behaviour::make("B_minority", 3, [](std::span<const PairValue> v) {
        if (count_of(v, PairValue::Equal) == 3) return PairValue::Equal;
        if (count_of(v, PairValue::Equal) > 0) return PairValue::N;
        return count_of(v, PairValue::E) % 2 == 1 ? PairValue::E : PairValue::N;
    });
}

std::vector<Behaviour> behaviour_catalog(const BaseStructure& base) {
    std::vector<Behaviour> out = {behaviour_min(),       behaviour_p1(),    behaviour_p2(),
                                  behaviour_edgedel(),   behaviour_cliquecol(),
                                  behaviour_const(),     behaviour_eqmeet()};
    if (base.is_equiv()) {
        out.push_back(behaviour_xnor3());
        out.push_back(behaviour_h3());
        if (!is_omega(base.n)) out.push_back(behaviour_quotient());
    }
    return out;
}

std::optional<Behaviour> behaviour_by_name(const std::string& name) {
    for (auto make : {behaviour_min, behaviour_p1, behaviour_p2, behaviour_edgedel,
                      behaviour_cliquecol, behaviour_quotient, behaviour_const, behaviour_eqmeet,
                      behaviour_xnor3, behaviour_h3, behaviour_majority, behaviour_minority}) {
        Behaviour b = make();
        if (b.name == name) return b;
    }
    return std::nullopt;
}

std::optional<TypeMatrix> apply_behaviour(const Behaviour& b, std::span<const TypeMatrix> ms,
                                          const BaseStructure& base) {
    if (static_cast<int>(ms.size()) != b.arity)
        throw InputError("behaviour " + b.name + " has arity " + std::to_string(b.arity) +
                         ", got " + std::to_string(ms.size()) + " matrices");
    const int k = ms[0].arity();
    for (const auto& m : ms)
        if (m.arity() != k) throw InputError("apply_behaviour: matrices of unequal arity");
    TypeMatrix out(k);
    std::array<PairValue, 3> in{};
    for (int idx = 0; idx < out.pair_count(); ++idx) {
        for (int a = 0; a < b.arity; ++a) in[static_cast<std::size_t>(a)] = ms[a].cell(idx);
        out.set_cell(idx, b.apply(std::span<const PairValue>(in.data(), b.arity)));
    }
    if (!validate_type(out, base)) return std::nullopt;
    return out;
}

namespace {

// Pair-mask representation for fast sweeps: bit set in `eq` when the value
// is E or Equal, bit set in `e` when the value is E. Requires <= 32 pairs.
struct Planes {
    std::uint32_t eq = 0;
    std::uint32_t e = 0;
    friend bool operator==(const Planes&, const Planes&) = default;
};

Planes planes_of(const TypeMatrix& m) {
    Planes p;
    for (int idx = 0; idx < m.pair_count(); ++idx) {
        PairValue v = m.cell(idx);
        if (v != PairValue::N) p.eq |= 1u << idx;
        if (v == PairValue::E) p.e |= 1u << idx;
    }
    return p;
}

std::uint64_t planes_key(Planes p) {
    return (static_cast<std::uint64_t>(p.eq) << 32) | p.e;
}

bool same_table(const Behaviour& a, const Behaviour& b) {
    return a.arity == b.arity && a.table == b.table;
}

// GF(2) span membership over masked coordinates, incremental basis.
struct MaskedSpan {
    std::vector<std::uint32_t> basis;
    void insert(std::uint32_t v) {
        for (std::uint32_t b : basis) v = std::min(v, v ^ b);
        if (v) {
            basis.push_back(v);
            std::sort(basis.rbegin(), basis.rend());
        }
    }
    bool contains(std::uint32_t v) const {
        for (std::uint32_t b : basis) v = std::min(v, v ^ b);
        return v == 0;
    }
};

// Membership of t in the closure of S under the N-dominated {E,=}-minority,
// over equiv(omega,2). Decidable directly: t is reachable iff some member of
// S is Eq wherever t is Eq, t's E-pattern on those pairs lies in the affine
// span of the members', and every N-pair of t is N in some such member.
bool h3_closure_contains(const Planes& t, const std::vector<Planes>& s_planes,
                         std::uint32_t all_pairs) {
    bool any = false;
    std::uint32_t first_vec = 0;
    MaskedSpan span;
    std::uint32_t n_cover = 0;
    for (const Planes& s : s_planes) {
        if ((s.eq & t.eq) != t.eq) continue;
        std::uint32_t vec = s.e & t.eq;
        if (!any) {
            any = true;
            first_vec = vec;
        } else {
            span.insert(vec ^ first_vec);
        }
        n_cover |= all_pairs & ~s.eq;
    }
    if (!any) return false;
    if (!span.contains((t.e & t.eq) ^ first_vec)) return false;
    const std::uint32_t t_n = all_pairs & ~t.eq;
    return (t_n & ~n_cover) == 0;
}

}  // namespace

bool preserves(const Behaviour& b, const OrbitRelation& r, const BaseStructure& base,
               std::string* diag) {
    const auto& types = r.types.items();
    if (types.empty()) return true;
    const std::size_t n = types.size();

    auto report = [&](const TypeMatrix& out, const char* what) {
        if (diag) *diag = std::string(what) + " under " + b.name + " on relation " + r.name;
        (void)out;
        return false;
    };

    // meet behaviours admit a bitwise sweep when meets of valid types stay
    // valid (henson, equiv(omega,2), equality)
    const bool meet_like = same_table(b, behaviour_min()) ||
                           (same_table(b, behaviour_eqmeet()) && base.is_equality());
    const bool meet_safe =
        base.is_henson() || base.is_equality() || (base.is_equiv() && is_omega(base.n));
    if (meet_like && meet_safe && r.arity <= 6 && n > 64) {
        std::vector<Planes> planes(n);
        std::unordered_set<std::uint64_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            planes[i] = planes_of(types[i]);
            members.insert(planes_key(planes[i]));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                // meet: E iff both E, Equal iff both Equal, N otherwise
                const std::uint32_t em = planes[i].e & planes[j].e;
                const std::uint32_t qm =
                    (planes[i].eq & ~planes[i].e) & (planes[j].eq & ~planes[j].e);
                Planes m{em | qm, em};
                if (!members.count(planes_key(m)))
                    return report(types[i], "meet left the relation");
            }
        return true;
    }

    // the {E,=}-minority over equiv(omega,2) has a direct closure test;
    // use it when the cubic sweep would be too slow
    if (b.arity == 3 && base.is_equiv() && is_omega(base.n) && base.s == 2 &&
        same_table(b, behaviour_h3()) && n > 220 && r.arity <= 6) {
        std::vector<Planes> planes(n);
        for (std::size_t i = 0; i < n; ++i) planes[i] = planes_of(types[i]);
        std::unordered_set<std::uint64_t> members;
        for (const auto& p : planes) members.insert(planes_key(p));
        const std::uint32_t all_pairs =
            types[0].pair_count() >= 32 ? ~0u : (1u << types[0].pair_count()) - 1;
        for (const auto& t : enumerate_types(r.arity, base)) {
            Planes tp = planes_of(t);
            if (members.count(planes_key(tp))) continue;
            if (h3_closure_contains(tp, planes, all_pairs))
                return report(t, "closure reaches a type outside the relation");
        }
        return true;
    }

    // generic exhaustive sweep
    std::vector<TypeMatrix> in(static_cast<std::size_t>(b.arity), types[0]);
    std::vector<std::size_t> pick(static_cast<std::size_t>(b.arity), 0);
    while (true) {
        for (int a = 0; a < b.arity; ++a) in[static_cast<std::size_t>(a)] = types[pick[static_cast<std::size_t>(a)]];
        auto out = apply_behaviour(b, in, base);
        if (!out) return report(types[pick[0]], "invalid application");
        if (!r.types.contains(*out)) return report(*out, "application left the relation");
        int pos = b.arity - 1;
        while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == n) {
            pick[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return true;
}

int obstruction_arity(const BaseStructure& base) {
    if (base.is_henson()) return base.n;
    if (base.is_equality()) return 4;
    if (!is_omega(base.s)) return std::min(2 * base.s + 1, 7);
    return std::min(base.n + 1, 7);
}

bool realizable(const Behaviour& b, const BaseStructure& base) {
    const int bound = obstruction_arity(base);
    for (int k = 1; k <= bound; ++k) {
        auto types = enumerate_types(k, base, std::max(k, kDefaultArityCap));
        const std::size_t n = types.size();
        std::vector<TypeMatrix> in(static_cast<std::size_t>(b.arity), types[0]);
        std::vector<std::size_t> pick(static_cast<std::size_t>(b.arity), 0);
        while (true) {
            for (int a = 0; a < b.arity; ++a)
                in[static_cast<std::size_t>(a)] = types[pick[static_cast<std::size_t>(a)]];
            if (!apply_behaviour(b, in, base)) return false;
            int pos = b.arity - 1;
            while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == n) {
                pick[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return true;
}

TypeSet close_under(const Behaviour& b, const TypeSet& types, int arity,
                    const BaseStructure& base) {
    if (types.empty()) return types;

    // direct closure for the {E,=}-minority over equiv(omega,2)
    if (b.arity == 3 && base.is_equiv() && is_omega(base.n) && base.s == 2 &&
        same_table(b, behaviour_h3()) && arity <= 6) {
        std::vector<Planes> planes;
        for (const auto& t : types) planes.push_back(planes_of(t));
        const std::uint32_t all_pairs =
            types.items()[0].pair_count() >= 32 ? ~0u : (1u << types.items()[0].pair_count()) - 1;
        std::vector<TypeMatrix> out;
        for (const auto& t : enumerate_types(arity, base)) {
            if (types.contains(t) || h3_closure_contains(planes_of(t), planes, all_pairs))
                out.push_back(t);
        }
        return TypeSet(std::move(out));
    }

    std::vector<TypeMatrix> work = types.items();
    TypeSet closed(work);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t n = work.size();
        std::vector<TypeMatrix> added;
        std::vector<TypeMatrix> in(static_cast<std::size_t>(b.arity), work[0]);
        std::vector<std::size_t> pick(static_cast<std::size_t>(b.arity), 0);
        while (true) {
            for (int a = 0; a < b.arity; ++a)
                in[static_cast<std::size_t>(a)] = work[pick[static_cast<std::size_t>(a)]];
            auto out = apply_behaviour(b, in, base);
            if (!out)
                throw InternalError("close_under: behaviour " + b.name +
                                    " is not realizable on these types");
            if (!closed.contains(*out)) {
                closed.insert(*out);
                added.push_back(*out);
            }
            int pos = b.arity - 1;
            while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == n) {
                pick[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        if (!added.empty()) {
            grew = true;
            work = closed.items();
        }
    }
    return closed;
}

}  // namespace hcsp
