#pragma once

#include <string>

#include <json.hpp>

#include "hcsp/classify.hpp"
#include "hcsp/gadgets.hpp"
#include "hcsp/gf2.hpp"
#include "hcsp/horn.hpp"
#include "hcsp/solve.hpp"

namespace hcsp {

using Json = nlohmann::json;

// parsing (throws InputError on malformed documents)
BaseStructure parse_base(const Json& j);
OrbitRelation parse_relation(const Json& j, const BaseStructure& base,
                             int cap = kDefaultArityCap);
Signature parse_signature(const Json& j, int cap = kDefaultArityCap);
Instance parse_instance(const Json& j);
OneInThreeFormula parse_one_in_three(const Json& j);

// serialization
Json base_json(const BaseStructure& base);
Json type_json(const TypeMatrix& m);
Json relation_json(const OrbitRelation& r);
Json signature_json(const Signature& sig);
Json instance_json(const Instance& inst);
Json witness_json(const Witness& w);
Json behaviour_table_json(const Behaviour& b);
Json verdict_json(const Verdict& v);
Json gf2_json(const Gf2System& sys);

/// Cache entry for a compiled clause set, keyed by relation_hash.
Json horn_cache_json(const OrbitRelation& r, const HornCompilation& comp);

Json load_json_file(const std::string& path);

}  // namespace hcsp
