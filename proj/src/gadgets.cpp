#include "hcsp/gadgets.hpp"

#include <algorithm>
#include <set>

namespace hcsp {

OrbitRelation relation_H(int henson_n) {
    if (henson_n < 3) throw InputError("relation_H needs a henson clique bound n >= 3");
    std::vector<TypeMatrix> types;
    for (int live = 0; live < 3; ++live) {
        TypeMatrix m(6, PairValue::N);
        m.set(2 * live, 2 * live + 1, PairValue::E);
        types.push_back(m);
    }
    OrbitRelation r{"H", 6, TypeSet(std::move(types))};
    for (const auto& t : r.types)
        if (!validate_type(t, BaseStructure::henson(henson_n)))
            throw InternalError("relation_H produced an invalid type");
    return r;
}

std::string relation_H_formula() {
    std::string cross;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int u : {2 * i + 1, 2 * i + 2})
                for (int v : {2 * j + 1, 2 * j + 2}) {
                    if (!cross.empty()) cross += " & ";
                    cross += "N(" + std::to_string(u) + "," + std::to_string(v) + ")";
                }
    auto block = [](int b, bool edge) {
        std::string a = std::to_string(2 * b + 1), c = std::to_string(2 * b + 2);
        return (edge ? "E(" : "N(") + a + "," + c + ")";
    };
    std::string cases;
    for (int live = 0; live < 3; ++live) {
        std::string one;
        for (int b = 0; b < 3; ++b) {
            if (!one.empty()) one += " & ";
            one += block(b, b == live);
        }
        if (!cases.empty()) cases += " | ";
        cases += "(" + one + ")";
    }
    return cross + " & (" + cases + ")";
}

void OneInThreeFormula::validate() const {
    std::set<std::string> vars(variables.begin(), variables.end());
    if (vars.size() != variables.size()) throw InputError("duplicate formula variable");
    for (const auto& c : clauses) {
        if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2])
            throw InputError("clause members must be distinct");
        for (const auto& v : c)
            if (!vars.count(v)) throw InputError("clause uses unknown variable " + v);
    }
}

Instance reduce_1in3(const OneInThreeFormula& f) {
    f.validate();
    Instance inst;
    for (const auto& v : f.variables) {
        inst.variables.push_back(v);
        inst.variables.push_back(v + "'");
    }
    for (const auto& c : f.clauses) {
        Constraint con;
        con.rel = "H";
        for (const auto& v : c) {
            con.vars.push_back(v);
            con.vars.push_back(v + "'");
        }
        inst.constraints.push_back(std::move(con));
    }
    return inst;
}

bool brute_force_1in3(const OneInThreeFormula& f) {
    f.validate();
    const std::size_t n = f.variables.size();
    if (n > 25) throw InputError("brute_force_1in3: too many variables");
    std::vector<std::size_t> index;
    auto var_index = [&](const std::string& v) {
        for (std::size_t i = 0; i < n; ++i)
            if (f.variables[i] == v) return i;
        return n;
    };
    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
        bool ok = true;
        for (const auto& c : f.clauses) {
            int ones = 0;
            for (const auto& v : c) ones += (bits >> var_index(v)) & 1;
            if (ones != 1) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace hcsp
