#pragma once

// JSON encodings for rings, series, Tate values, manifold models and recovery data.
// Objects use sorted keys, so equal values always serialise to identical bytes.

#include <json.hpp>

#include "tatecoh/floer.hpp"

namespace tatecoh::io {

using json = nlohmann::json;

json to_json(const RingDescriptor& d);
RingDescriptor ring_descriptor_from_json(const json& j);

json element_to_json(const Ring& R, const Coeff& c);
Coeff element_from_json(const Ring& R, const json& j);

json to_json(const Series& s);
Series series_from_json(const RingPtr& R, const json& j);

json to_json(const TateValue& v);
TateValue tate_from_json(const json& j);

json to_json(const Group& g);
Group group_from_json(const json& j);

/// {"dim", "homology": [{"degree", "free", "torsion": [[p, l, mult], ...]}]}
json homology_to_json(const GradedGroup& g, int dim);

struct ManifoldFile {
    ManifoldModel manifold;
    std::vector<OrbitDatum> orbits;
    std::vector<mpq_class> slopes;
};

json to_json(const ManifoldFile& f);
ManifoldFile manifold_from_json(const json& j);

/// {"dim", "rational": TateValue, "morava": [{"p", "height", "levels": [{"k", "tate"}]}]}
json to_json(const BlindedData& b, int dim);
BlindedData blinded_from_json(const json& j, int& dim);

json to_json(const KuGroups& g);
KuGroups ku_groups_from_json(const json& j);
json to_json(const CompletedModule& m);
CompletedModule completed_from_json(const json& j);

/// Parses text, mapping syntax errors to ParseError.
json parse(const std::string& text);

} // namespace tatecoh::io
