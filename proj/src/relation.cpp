#include "hcsp/relation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace hcsp {

TypeSet::TypeSet(std::vector<TypeMatrix> types) : types_(std::move(types)) {
    std::sort(types_.begin(), types_.end());
    types_.erase(std::unique(types_.begin(), types_.end()), types_.end());
}

void TypeSet::insert(const TypeMatrix& m) {
    auto it = std::lower_bound(types_.begin(), types_.end(), m);
    if (it == types_.end() || !(*it == m)) types_.insert(it, m);
}

bool TypeSet::contains(const TypeMatrix& m) const {
    return std::binary_search(types_.begin(), types_.end(), m);
}

const OrbitRelation* Signature::find(const std::string& name) const {
    for (const auto& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

int Signature::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < relations.size(); ++i)
        if (relations[i].name == name) return static_cast<int>(i);
    return -1;
}

void Signature::validate() const {
    std::set<std::string> names;
    for (const auto& r : relations) {
        if (!names.insert(r.name).second)
            throw InputError("duplicate relation name: " + r.name);
        if (r.arity < 1) throw InputError("relation " + r.name + " has arity < 1");
        for (const auto& t : r.types) {
            if (t.arity() != r.arity)
                throw InputError("relation " + r.name + " holds a type of wrong arity");
            if (auto v = validate_type(t, base); !v)
                throw InputError("relation " + r.name + " holds an invalid type: " + v.reason);
        }
    }
}

std::vector<ResolvedConstraint> resolve(const Instance& inst, const Signature& sig) {
    std::map<std::string, int> var_index;
    for (std::size_t i = 0; i < inst.variables.size(); ++i) {
        if (!var_index.emplace(inst.variables[i], static_cast<int>(i)).second)
            throw InputError("duplicate variable name: " + inst.variables[i]);
    }
    std::vector<ResolvedConstraint> out;
    out.reserve(inst.constraints.size());
    for (const auto& c : inst.constraints) {
        int ri = sig.index_of(c.rel);
        if (ri < 0) throw InputError("unknown relation: " + c.rel);
        const auto& r = sig.relations[static_cast<std::size_t>(ri)];
        if (static_cast<int>(c.vars.size()) != r.arity)
            throw InputError("constraint on " + c.rel + " has " + std::to_string(c.vars.size()) +
                             " variables, arity is " + std::to_string(r.arity));
        ResolvedConstraint rc;
        rc.relation = ri;
        for (const auto& v : c.vars) {
            auto it = var_index.find(v);
            if (it == var_index.end()) throw InputError("unknown variable: " + v);
            rc.vars.push_back(it->second);
        }
        out.push_back(std::move(rc));
    }
    return out;
}

std::vector<TypeMatrix> enumerate_types(int k, const BaseStructure& base, int cap) {
    if (k < 1) throw InputError("arity must be >= 1");
    if (k > cap)
        throw InputError("arity " + std::to_string(k) + " exceeds the cap " + std::to_string(cap));

    std::vector<TypeMatrix> out;
    TypeMatrix m(k);
    // Assign pairs vertex by vertex so violations surface early.
    std::vector<std::pair<int, int>> order;
    for (int v = 1; v < k; ++v)
        for (int u = 0; u < v; ++u) order.emplace_back(u, v);

    const PairValue values[] = {PairValue::E, PairValue::N, PairValue::Equal};

    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == order.size()) {
            if (validate_type(m, base)) out.push_back(m);
            return;
        }
        auto [u, v] = order[depth];
        for (PairValue val : values) {
            if (base.is_equality() && val == PairValue::E) continue;
            m.set(u, v, val);
            // cheap local pruning: congruence against rows already fixed,
            // then full validity once vertex v is complete
            bool ok = true;
            if (val == PairValue::Equal) {
                for (int l = 0; ok && l < u; ++l)
                    if (m.at(l, v) != m.at(l, u)) ok = false;
            }
            for (int l = 0; ok && l < u; ++l)
                if (m.at(l, u) == PairValue::Equal && m.at(l, v) != val) ok = false;
            if (ok && u == v - 1) {
                TypeMatrix prefix(v + 1);
                for (int a = 0; a < v + 1; ++a)
                    for (int b = a + 1; b < v + 1; ++b) prefix.set(a, b, m.at(a, b));
                if (!validate_type(prefix, base)) ok = false;
            }
            if (ok) self(self, depth + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Formula parsing

namespace {

enum class AtomKind { E, N, EqRefl, EqOnly, Neq };

struct Node {
    enum class Op { Atom, And, Or, Not };
    Op op = Op::Atom;
    AtomKind atom{};
    int i = 0, j = 0;
    std::vector<Node> kids;

    static Node of(Op o) {
        Node n;
        n.op = o;
        return n;
    }
};

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n')) pos++;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            pos++;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw InputError("formula parse error at position " + std::to_string(pos) + ": " + msg);
    }

    Node parse() {
        Node n = parse_or();
        skip();
        if (pos != s.size()) fail("trailing input");
        return n;
    }

    Node parse_or() {
        Node n = parse_and();
        while (eat('|')) {
            Node rhs = parse_and();
            Node both = Node::of(Node::Op::Or);
            both.kids.push_back(std::move(n));
            both.kids.push_back(std::move(rhs));
            n = std::move(both);
        }
        return n;
    }

    Node parse_and() {
        Node n = parse_factor();
        while (eat('&')) {
            Node rhs = parse_factor();
            Node both = Node::of(Node::Op::And);
            both.kids.push_back(std::move(n));
            both.kids.push_back(std::move(rhs));
            n = std::move(both);
        }
        return n;
    }

    Node parse_factor() {
        skip();
        if (eat('!')) {
            Node n = Node::of(Node::Op::Not);
            n.kids.push_back(parse_factor());
            return n;
        }
        if (eat('(')) {
            Node n = parse_or();
            if (!eat(')')) fail("expected ')'");
            return n;
        }
        return parse_atom();
    }

    Node parse_atom() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])))) pos++;
        std::string name = s.substr(start, pos - start);
        AtomKind kind;
        if (name == "E") kind = AtomKind::E;
        else if (name == "N") kind = AtomKind::N;
        else if (name == "Eq") kind = AtomKind::EqRefl;
        else if (name == "eq") kind = AtomKind::EqOnly;
        else if (name == "neq") kind = AtomKind::Neq;
        else fail("unknown atom '" + name + "'");
        if (!eat('(')) fail("expected '('");
        int i = parse_int();
        if (!eat(',')) fail("expected ','");
        int j = parse_int();
        if (!eat(')')) fail("expected ')'");
        Node n = Node::of(Node::Op::Atom);
        n.atom = kind;
        n.i = i;
        n.j = j;
        return n;
    }

    int parse_int() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
        if (pos == start) fail("expected index");
        return std::stoi(s.substr(start, pos - start));
    }
};

bool eval_node(const Node& n, const TypeMatrix& m) {
    switch (n.op) {
        case Node::Op::And: return eval_node(n.kids[0], m) && eval_node(n.kids[1], m);
        case Node::Op::Or: return eval_node(n.kids[0], m) || eval_node(n.kids[1], m);
        case Node::Op::Not: return !eval_node(n.kids[0], m);
        case Node::Op::Atom: break;
    }
    const int i = n.i - 1, j = n.j - 1;
    if (i == j) {
        switch (n.atom) {
            case AtomKind::E:
            case AtomKind::N:
            case AtomKind::Neq: return false;
            case AtomKind::EqRefl:
            case AtomKind::EqOnly: return true;
        }
    }
    PairValue v = m.at(i, j);
    switch (n.atom) {
        case AtomKind::E: return v == PairValue::E;
        case AtomKind::N: return v == PairValue::N;
        case AtomKind::EqRefl: return v != PairValue::N;
        case AtomKind::EqOnly: return v == PairValue::Equal;
        case AtomKind::Neq: return v != PairValue::Equal;
    }
    return false;
}

void check_indices(const Node& n, int k) {
    if (n.op == Node::Op::Atom) {
        if (n.i < 1 || n.i > k || n.j < 1 || n.j > k)
            throw InputError("formula index out of range 1.." + std::to_string(k));
        return;
    }
    for (const auto& kid : n.kids) check_indices(kid, k);
}

}  // namespace

OrbitRelation compile_formula(const std::string& name, const std::string& text, int k,
                              const BaseStructure& base, int cap) {
    Parser p(text);
    Node root = p.parse();
    check_indices(root, k);
    std::vector<TypeMatrix> hits;
    for (const auto& m : enumerate_types(k, base, cap))
        if (eval_node(root, m)) hits.push_back(m);
    return OrbitRelation{name, k, TypeSet(std::move(hits))};
}

bool eval_formula(const std::string& text, const TypeMatrix& m) {
    Parser p(text);
    Node root = p.parse();
    check_indices(root, m.arity());
    return eval_node(root, m);
}

std::string relation_hash(const OrbitRelation& r) {
    // FNV-1a over the arity and the sorted cell strings
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    };
    for (char c : std::to_string(r.arity)) mix(c);
    mix(':');
    for (const auto& t : r.types) {
        for (char c : t.cells_string()) mix(c);
        mix(';');
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace hcsp
