#include "tatecoh/json_io.hpp"

#include <set>

namespace tatecoh::io {

namespace {

[[noreturn]] void schema(const std::string& what) { fail(ErrorCode::SchemaViolation, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object())
        schema(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        schema(std::string("missing key '") + key + "'");
    return *it;
}

long as_long(const json& j, const char* what) {
    if (!j.is_number_integer())
        schema(std::string(what) + " must be an integer");
    return j.get<long>();
}

int as_int(const json& j, const char* what) {
    const long v = as_long(j, what);
    if (v < -(1L << 30) || v > (1L << 30))
        schema(std::string(what) + " out of range");
    return static_cast<int>(v);
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string())
        schema(std::string(what) + " must be a string");
    return j.get<std::string>();
}

mpq_class as_rational(const json& j, const char* what) {
    try {
        if (j.is_number_integer())
            return mpq_class(j.get<long>());
        if (j.is_string()) {
            mpq_class q(j.get<std::string>(), 10);
            q.canonicalize();
            return q;
        }
        if (j.is_number_float()) {
            // only dyadic-exact values such as 0.5 are accepted
            const double d = j.get<double>();
            mpq_class q(d);
            q.canonicalize();
            if (q.get_d() != d)
                schema(std::string(what) + " is not an exact rational");
            return q;
        }
    } catch (const std::invalid_argument&) {
    }
    schema(std::string(what) + " must be an integer, a decimal or a \"p/q\" string");
}

json rational_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return q.get_num().get_si();
    return q.get_str();
}

json torsion_json(const std::map<std::pair<long, int>, int>& t) {
    json arr = json::array();
    for (const auto& [pl, mult] : t)
        arr.push_back(json::array({pl.first, pl.second, mult}));
    return arr;
}

std::map<std::pair<long, int>, int> torsion_from(const json& j) {
    if (!j.is_array())
        schema("torsion must be a list of [p, l, multiplicity]");
    std::map<std::pair<long, int>, int> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3)
            schema("torsion entries are [p, l, multiplicity]");
        const long p = as_long(e[0], "torsion prime");
        const int l = as_int(e[1], "torsion exponent");
        const int m = as_int(e[2], "torsion multiplicity");
        if (!is_prime(p) || l < 1 || m < 1)
            schema("torsion entry [" + std::to_string(p) + ", " + std::to_string(l) + ", " + std::to_string(m) +
                   "] needs a prime and positive exponent and multiplicity");
        out[{p, l}] += m;
    }
    return out;
}

} // namespace

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

json to_json(const RingDescriptor& d) {
    switch (d.kind) {
    case RingKind::Integers: return {{"kind", "integers"}};
    case RingKind::Rationals: return {{"kind", "rationals"}};
    case RingKind::IntegersMod: return {{"kind", "zmod"}, {"n", d.modulus}};
    case RingKind::PAdicTruncated: return {{"kind", "padic"}, {"p", d.prime}, {"K", d.precision}};
    case RingKind::Laurent: return {{"kind", "laurent"}, {"base", to_json(*d.base)}, {"gen", d.symbol}, {"deg", d.degree}};
    }
    return {};
}

RingDescriptor ring_descriptor_from_json(const json& j) {
    const std::string kind = as_string(field(j, "kind"), "ring kind");
    if (kind == "integers")
        return RingDescriptor::integers();
    if (kind == "rationals")
        return RingDescriptor::rationals();
    if (kind == "zmod")
        return RingDescriptor::zmod(as_long(field(j, "n"), "n"));
    if (kind == "padic")
        return RingDescriptor::padic(as_long(field(j, "p"), "p"), as_int(field(j, "K"), "K"));
    if (kind == "laurent")
        return RingDescriptor::laurent(ring_descriptor_from_json(field(j, "base")), as_string(field(j, "gen"), "gen"),
                                       as_int(field(j, "deg"), "deg"));
    schema("unknown ring kind '" + kind + "'");
}

json element_to_json(const Ring& R, const Coeff& c) {
    if (!R.is_laurent())
        return c.empty() ? std::string("0") : c.front().value.get_str();
    json arr = json::array();
    for (const auto& t : c)
        arr.push_back(json::array({t.exp, t.value.get_str()}));
    return arr;
}

Coeff element_from_json(const Ring& R, const json& j) {
    if (!R.is_laurent())
        return R.from_rational(as_rational(j, "ring element"));
    if (!j.is_array())
        schema("Laurent elements are lists of [exponent, value]");
    Coeff out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2)
            schema("Laurent terms are [exponent, value]");
        Coeff scalar = R.from_rational(as_rational(t[1], "Laurent coefficient"));
        if (!scalar.empty())
            R.add_to(out, R.monomial(scalar.front().value, as_int(t[0], "Laurent exponent")));
    }
    return out;
}

json to_json(const Series& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs())
        coeffs.push_back(element_to_json(*s.ring(), c));
    return {{"N", s.N()}, {"coeffs", coeffs}};
}

Series series_from_json(const RingPtr& R, const json& j) {
    const int N = as_int(field(j, "N"), "N");
    const json& arr = field(j, "coeffs");
    if (N < 0 || !arr.is_array() || arr.size() != static_cast<std::size_t>(N + 1))
        schema("series needs N >= 0 and N + 1 coefficients");
    std::vector<Coeff> c;
    for (const auto& e : arr)
        c.push_back(element_from_json(*R, e));
    return Series(R, N, std::move(c));
}

json to_json(const TateValue& v) {
    if (v.zero)
        return {{"kind", "zero"}};
    json summands = json::array();
    for (const auto& s : v.summands)
        summands.push_back({{"order", s.order}, {"degree", s.degree}});
    json precision = {{"N", v.precision.N}, {"m_max", v.precision.m_max}};
    precision["K"] = v.precision.K ? json(*v.precision.K) : json(nullptr);
    json out = {{"kind", "laurent_module"}, {"base", v.base}, {"summands", summands}, {"precision", precision}};
    if (v.period != 0)
        out["period"] = v.period;
    return out;
}

TateValue tate_from_json(const json& j) {
    const std::string kind = as_string(field(j, "kind"), "Tate value kind");
    if (kind == "zero")
        return TateValue::zero_value({});
    if (kind != "laurent_module")
        schema("unknown Tate value kind '" + kind + "'");
    TateValue v;
    v.zero = false;
    v.base = as_string(field(j, "base"), "base");
    if (j.contains("period"))
        v.period = as_int(j["period"], "period");
    const json& summands = field(j, "summands");
    if (!summands.is_array())
        schema("summands must be a list");
    for (const auto& s : summands) {
        const long order = as_long(field(s, "order"), "order");
        if (order < 0)
            schema("orders are nonnegative");
        v.summands.push_back({order, as_int(field(s, "degree"), "degree")});
    }
    std::sort(v.summands.begin(), v.summands.end());
    if (j.contains("precision")) {
        const json& p = j["precision"];
        v.precision.N = as_int(field(p, "N"), "precision.N");
        v.precision.m_max = as_int(field(p, "m_max"), "precision.m_max");
        if (p.contains("K") && !p["K"].is_null())
            v.precision.K = as_int(p["K"], "precision.K");
    }
    if (v.summands.empty())
        return TateValue::zero_value(v.precision);
    return v;
}

json to_json(const Group& g) { return {{"free", g.free}, {"torsion", torsion_json(g.torsion)}}; }

Group group_from_json(const json& j) {
    Group g;
    g.free = as_long(field(j, "free"), "free");
    if (g.free < 0)
        schema("free ranks are nonnegative");
    if (j.contains("torsion"))
        g.torsion = torsion_from(j["torsion"]);
    return g;
}

json homology_to_json(const GradedGroup& g, int dim) {
    json arr = json::array();
    for (const auto& [d, grp] : g) {
        json e = to_json(grp);
        e["degree"] = d;
        arr.push_back(e);
    }
    return {{"dim", dim}, {"homology", arr}};
}

json to_json(const ManifoldFile& f) {
    json out = homology_to_json(f.manifold.homology, f.manifold.dim);
    out["weinstein"] = f.manifold.weinstein;
    json orbits = json::array();
    for (const auto& o : f.orbits) {
        json e = {{"length", rational_json(o.length)},
                  {"multiplicity", o.multiplicity},
                  {"parity", o.parity == OrbitParity::Good ? "good" : "bad"}};
        if (o.shift != 0)
            e["shift"] = o.shift;
        orbits.push_back(e);
    }
    out["orbits"] = orbits;
    json slopes = json::array();
    for (const auto& a : f.slopes)
        slopes.push_back(rational_json(a));
    out["slopes"] = slopes;
    return out;
}

ManifoldFile manifold_from_json(const json& j) {
    ManifoldFile f;
    f.manifold.dim = as_int(field(j, "dim"), "dim");
    if (j.contains("weinstein")) {
        if (!j["weinstein"].is_boolean())
            schema("weinstein must be a boolean");
        f.manifold.weinstein = j["weinstein"].get<bool>();
    }
    const json& hom = field(j, "homology");
    if (!hom.is_array())
        schema("homology must be a list");
    std::set<int> degrees;
    for (const auto& e : hom) {
        const int d = as_int(field(e, "degree"), "degree");
        if (!degrees.insert(d).second)
            schema("degree " + std::to_string(d) + " listed twice");
        Group g = group_from_json(e);
        if (!g.trivial())
            f.manifold.homology[d] = std::move(g);
    }
    if (j.contains("orbits")) {
        if (!j["orbits"].is_array())
            schema("orbits must be a list");
        for (const auto& e : j["orbits"]) {
            OrbitDatum o;
            o.length = as_rational(field(e, "length"), "orbit length");
            o.multiplicity = as_long(field(e, "multiplicity"), "multiplicity");
            const std::string parity = as_string(field(e, "parity"), "parity");
            if (parity != "good" && parity != "bad")
                schema("parity must be \"good\" or \"bad\"");
            o.parity = parity == "good" ? OrbitParity::Good : OrbitParity::Bad;
            if (e.contains("shift"))
                o.shift = as_int(e["shift"], "shift");
            f.orbits.push_back(o);
        }
    }
    if (j.contains("slopes")) {
        if (!j["slopes"].is_array())
            schema("slopes must be a list");
        for (const auto& a : j["slopes"])
            f.slopes.push_back(as_rational(a, "slope"));
    }
    validate_manifold(f.manifold);
    return f;
}

json to_json(const BlindedData& b, int dim) {
    json morava = json::array();
    for (const auto& ms : b.morava) {
        json levels = json::array();
        for (const auto& lv : ms.levels)
            levels.push_back({{"k", lv.k}, {"tate", to_json(lv.value)}});
        morava.push_back({{"p", ms.p}, {"height", ms.height}, {"levels", levels}});
    }
    return {{"dim", dim}, {"rational", to_json(b.rational)}, {"morava", morava}};
}

BlindedData blinded_from_json(const json& j, int& dim) {
    BlindedData b;
    dim = as_int(field(j, "dim"), "dim");
    b.rational = tate_from_json(field(j, "rational"));
    const json& morava = field(j, "morava");
    if (!morava.is_array())
        schema("morava must be a list");
    for (const auto& e : morava) {
        MoravaSeries ms;
        ms.p = as_long(field(e, "p"), "p");
        ms.height = as_int(field(e, "height"), "height");
        const json& levels = field(e, "levels");
        if (!levels.is_array())
            schema("levels must be a list");
        for (const auto& lv : levels)
            ms.levels.push_back({as_int(field(lv, "k"), "k"), tate_from_json(field(lv, "tate"))});
        b.morava.push_back(std::move(ms));
    }
    return b;
}

json to_json(const KuGroups& g) { return {{"KU0", to_json(g.ku0)}, {"KU1", to_json(g.ku1)}}; }

KuGroups ku_groups_from_json(const json& j) {
    return KuGroups{group_from_json(field(j, "KU0")), group_from_json(field(j, "KU1"))};
}

json to_json(const CompletedModule& m) {
    json parts = json::array();
    for (const auto& p : m.parts)
        parts.push_back(
            {{"parity", p.parity}, {"completed_free", p.completed_free}, {"torsion", torsion_json(p.torsion)}});
    return {{"kind", "completed_laurent_module"}, {"base", "KU*((u))^"}, {"parts", parts}};
}

CompletedModule completed_from_json(const json& j) {
    auto malformed = [](const std::string& what) { fail(ErrorCode::MalformedCompletedModule, what); };
    if (!j.is_object() || !j.contains("kind") || j["kind"] != "completed_laurent_module")
        malformed("expected kind \"completed_laurent_module\"");
    if (!j.contains("parts") || !j["parts"].is_array())
        malformed("parts must be a list");
    CompletedModule m;
    for (const auto& e : j["parts"]) {
        if (!e.is_object() || !e.contains("parity") || !e["parity"].is_number_integer() ||
            !e.contains("completed_free") || !e["completed_free"].is_number_integer())
            malformed("each part needs integer parity and completed_free");
        CompletedPart p;
        p.parity = e["parity"].get<int>();
        p.completed_free = e["completed_free"].get<long>();
        if (e.contains("torsion")) {
            try {
                p.torsion = torsion_from(e["torsion"]);
            } catch (const Error& err) {
                malformed(err.what());
            }
        }
        m.parts.push_back(std::move(p));
    }
    return m;
}

} // namespace tatecoh::io
