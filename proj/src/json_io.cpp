#include "hcsp/json_io.hpp"

#include <fstream>

namespace hcsp {

namespace {

int parse_param(const Json& j, const std::string& field) {
    if (!j.contains(field)) throw InputError("base is missing field '" + field + "'");
    const auto& v = j.at(field);
    if (v.is_string()) {
        if (v.get<std::string>() == "omega") return kOmega;
        throw InputError("field '" + field + "' must be an integer or \"omega\"");
    }
    if (!v.is_number_integer()) throw InputError("field '" + field + "' must be an integer");
    return v.get<int>();
}

}  // namespace

BaseStructure parse_base(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw InputError("base needs a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "henson") return BaseStructure::henson(parse_param(j, "n"));
    if (kind == "equiv") return BaseStructure::equiv(parse_param(j, "n"), parse_param(j, "s"));
    if (kind == "equality") return BaseStructure::equality();
    throw InputError("unknown base kind: " + kind);
}

OrbitRelation parse_relation(const Json& j, const BaseStructure& base, int cap) {
    if (!j.is_object()) throw InputError("relation must be an object");
    if (!j.contains("name") || !j.contains("arity"))
        throw InputError("relation needs 'name' and 'arity'");
    const std::string name = j.at("name").get<std::string>();
    const int arity = j.at("arity").get<int>();
    if (arity < 1) throw InputError("relation " + name + ": arity must be >= 1");
    if (j.contains("formula")) {
        return compile_formula(name, j.at("formula").get<std::string>(), arity, base, cap);
    }
    if (j.contains("types")) {
        std::vector<TypeMatrix> types;
        for (const auto& tj : j.at("types")) {
            auto m = TypeMatrix::from_cells_string(arity, tj.get<std::string>());
            if (!m)
                throw InputError("relation " + name + ": bad type cells '" +
                                 tj.get<std::string>() + "'");
            if (auto v = validate_type(*m, base); !v)
                throw InputError("relation " + name + ": invalid type: " + v.reason);
            types.push_back(*m);
        }
        return OrbitRelation{name, arity, TypeSet(std::move(types))};
    }
    throw InputError("relation " + name + " needs 'formula' or 'types'");
}

Signature parse_signature(const Json& j, int cap) {
    if (!j.is_object() || !j.contains("base")) throw InputError("signature needs 'base'");
    Signature sig;
    sig.base = parse_base(j.at("base"));
    if (j.contains("relations"))
        for (const auto& rj : j.at("relations"))
            sig.relations.push_back(parse_relation(rj, sig.base, cap));
    sig.validate();
    return sig;
}

Instance parse_instance(const Json& j) {
    if (!j.is_object()) throw InputError("instance must be an object");
    Instance inst;
    if (j.contains("variables"))
        for (const auto& v : j.at("variables")) inst.variables.push_back(v.get<std::string>());
    if (j.contains("constraints"))
        for (const auto& cj : j.at("constraints")) {
            Constraint c;
            c.rel = cj.at("rel").get<std::string>();
            for (const auto& v : cj.at("vars")) c.vars.push_back(v.get<std::string>());
            inst.constraints.push_back(std::move(c));
        }
    return inst;
}

OneInThreeFormula parse_one_in_three(const Json& j) {
    OneInThreeFormula f;
    if (j.contains("variables"))
        for (const auto& v : j.at("variables")) f.variables.push_back(v.get<std::string>());
    if (j.contains("clauses"))
        for (const auto& cj : j.at("clauses")) {
            if (!cj.is_array() || cj.size() != 3)
                throw InputError("each clause is a triple of variables");
            f.clauses.push_back({cj[0].get<std::string>(), cj[1].get<std::string>(),
                                 cj[2].get<std::string>()});
        }
    f.validate();
    return f;
}

Json base_json(const BaseStructure& base) {
    Json j;
    auto param = [](int v) -> Json {
        if (is_omega(v)) return "omega";
        return v;
    };
    switch (base.kind) {
        case BaseStructure::Kind::Henson:
            j["kind"] = "henson";
            j["n"] = base.n;
            break;
        case BaseStructure::Kind::Equiv:
            j["kind"] = "equiv";
            j["n"] = param(base.n);
            j["s"] = param(base.s);
            break;
        case BaseStructure::Kind::Equality: j["kind"] = "equality"; break;
    }
    return j;
}

Json type_json(const TypeMatrix& m) { return m.cells_string(); }

Json relation_json(const OrbitRelation& r) {
    Json j;
    j["name"] = r.name;
    j["arity"] = r.arity;
    Json types = Json::array();
    for (const auto& t : r.types) types.push_back(type_json(t));
    j["types"] = types;
    return j;
}

Json signature_json(const Signature& sig) {
    Json j;
    j["base"] = base_json(sig.base);
    Json rels = Json::array();
    for (const auto& r : sig.relations) rels.push_back(relation_json(r));
    j["relations"] = rels;
    return j;
}

Json instance_json(const Instance& inst) {
    Json j;
    j["variables"] = inst.variables;
    Json cons = Json::array();
    for (const auto& c : inst.constraints) {
        Json cj;
        cj["rel"] = c.rel;
        cj["vars"] = c.vars;
        cons.push_back(cj);
    }
    j["constraints"] = cons;
    return j;
}

Json witness_json(const Witness& w) {
    Json j;
    j["variables"] = w.variables;
    j["cells"] = w.type.cells_string();  // row-major upper triangle over the variables
    return j;
}

Json behaviour_table_json(const Behaviour& b) {
    Json j;
    int total = 1;
    for (int i = 0; i < b.arity; ++i) total *= 3;
    for (int idx = 0; idx < total; ++idx) {
        std::string key;
        int rest = idx;
        std::vector<int> digits(static_cast<std::size_t>(b.arity));
        for (int pos = b.arity - 1; pos >= 0; --pos) {
            digits[static_cast<std::size_t>(pos)] = rest % 3;
            rest /= 3;
        }
        for (int pos = 0; pos < b.arity; ++pos) {
            if (pos) key += ",";
            key += pair_value_char(static_cast<PairValue>(digits[static_cast<std::size_t>(pos)]));
        }
        j[key] = std::string(1, pair_value_char(b.table[static_cast<std::size_t>(idx)]));
    }
    return j;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["outcome"] = outcome_name(v.outcome);
    if (v.is_p()) {
        Json w;
        w["solver"] = v.solver;
        w["behaviour"] = v.behaviour;
        if (!v.collapse_behaviour.empty()) w["collapse"] = v.collapse_behaviour;
        if (auto b = behaviour_by_name(v.behaviour)) w["table"] = behaviour_table_json(*b);
        j["witness"] = w;
    } else {
        j["label"] = v.label;
    }
    if (v.residual) {
        Json r;
        r["domain_size"] = v.residual->domain_size;
        Json rels = Json::array();
        for (const auto& rel : v.residual->relations) rels.push_back(relation_json(rel));
        r["relations"] = rels;
        j["residual"] = r;
    }
    Json trail = Json::array();
    for (const auto& t : v.trail) {
        Json tj;
        tj["test"] = t.test;
        tj["outcome"] = t.outcome;
        trail.push_back(tj);
    }
    j["trail"] = trail;
    return j;
}

Json gf2_json(const Gf2System& sys) {
    Json j;
    j["width"] = sys.width;
    Json rows = Json::array();
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        Json rj;
        Json cols = Json::array();
        for (int c = 0; c < sys.width; ++c)
            if (sys.rows[r].test(c)) cols.push_back(c);
        rj["cols"] = cols;
        rj["rhs"] = static_cast<int>(sys.rhs[r]);
        rows.push_back(rj);
    }
    j["rows"] = rows;
    return j;
}

Json horn_cache_json(const OrbitRelation& r, const HornCompilation& comp) {
    Json j;
    j["key"] = relation_hash(r);
    j["exact"] = comp.exact;
    if (!comp.exact && comp.separating) {
        j["separating"] = comp.separating->cells_string();
        return j;
    }
    Json clauses = Json::array();
    for (const auto& c : comp.clauses) {
        Json cj;
        Json body = Json::array();
        for (const auto& l : c.body) {
            Json lj;
            lj["p"] = l.p + 1;
            lj["q"] = l.q + 1;
            switch (l.form) {
                case LitForm::IsN: lj["form"] = "IS_N"; break;
                case LitForm::IsNeq: lj["form"] = "IS_NEQ"; break;
                case LitForm::NotE: lj["form"] = "NOT_E"; break;
            }
            body.push_back(lj);
        }
        cj["body"] = body;
        switch (c.head) {
            case HornClause::Head::False: cj["head"] = "FALSE"; break;
            case HornClause::Head::E:
                cj["head"] = "E";
                cj["pair"] = {c.hp + 1, c.hq + 1};
                break;
            case HornClause::Head::Equal:
                cj["head"] = "EQUAL";
                cj["pair"] = {c.hp + 1, c.hq + 1};
                break;
        }
        clauses.push_back(cj);
    }
    j["clauses"] = clauses;
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace hcsp
