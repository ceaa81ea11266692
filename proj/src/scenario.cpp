#include "muforge/scenario.hpp"

#include <fstream>
#include <sstream>

namespace muforge {

using nlohmann::json;

const ParabolicFacet& Scenario::facet(const std::string& id) const {
    auto it = facets.find(id);
    if (it == facets.end()) throw Error("unknown facet '" + id + "'");
    return it->second;
}

const CuspidalSupport& Scenario::support(const std::string& id) const {
    auto it = supports.find(id);
    if (it == supports.end()) throw Error("unknown support '" + id + "'");
    return it->second;
}

const InductionDatum& Scenario::datum_by_id(const std::string& id) const {
    auto it = induction_data.find(id);
    if (it == induction_data.end()) throw Error("unknown induction datum '" + id + "'");
    return it->second;
}

const GaloisElement& Scenario::galois_by_id(const std::string& id) const {
    auto it = galois.find(id);
    if (it == galois.end()) throw Error("unknown Galois element '" + id + "'");
    return it->second;
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw Error("schema violation at " + path + ": " + what);
}

Polynomial parse_poly(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected a coefficient list");
    std::vector<Rat> coef;
    for (const auto& c : j) coef.push_back(parse_rat(c.get<std::string>()));
    return Polynomial(std::move(coef));
}

Scalar parse_scalar_at(const json& j, const std::string& path) {
    if (j.is_object()) {
        if (!j.contains("num") || !j.contains("den"))
            schema_error(path, "scalar object needs num and den");
        return Scalar(parse_poly(j["num"], path + ".num"), parse_poly(j["den"], path + ".den"));
    }
    if (!j.is_string()) schema_error(path, "expected a scalar literal");
    std::string s = j.get<std::string>();
    // Compact monomial form: [c][*][t[^k]]
    Rat c(1);
    long long k = 0;
    std::string body = s;
    auto tpos = body.find('t');
    if (tpos == std::string::npos) {
        c = parse_rat(body);
    } else {
        std::string pre = body.substr(0, tpos);
        std::string post = body.substr(tpos + 1);
        if (!pre.empty() && pre.back() == '*') pre.pop_back();
        if (pre.empty()) c = 1;
        else if (pre == "-") c = -1;
        else c = parse_rat(pre);
        if (post.empty()) k = 1;
        else if (post[0] == '^') {
            try {
                k = std::stoll(post.substr(1));
            } catch (const std::exception&) {
                schema_error(path, "malformed exponent in '" + s + "'");
            }
        } else {
            schema_error(path, "malformed scalar literal '" + s + "'");
        }
    }
    return Scalar::monomial(c, k);
}

} // namespace

Scalar parse_scalar(const json& j) { return parse_scalar_at(j, "$"); }

json scalar_to_json(const Scalar& s) {
    auto poly = [](const Polynomial& p) {
        json a = json::array();
        for (int i = 0; i <= p.degree(); ++i) a.push_back(rat_str(p.coefficient(i)));
        if (p.is_zero()) a.push_back("0");
        return a;
    };
    return json{{"num", poly(s.num())}, {"den", poly(s.den())}};
}

TorusPoint parse_point(const json& j, size_t rank) {
    if (!j.is_array() || j.size() != rank)
        throw Error("point needs exactly " + std::to_string(rank) + " coordinates");
    std::vector<UnitValue> vals;
    for (const auto& c : j) {
        if (!c.is_array() || c.size() != 2) throw Error("point coordinate needs [rot, exp]");
        vals.emplace_back(parse_rat(c[0].get<std::string>()), parse_rat(c[1].get<std::string>()));
    }
    return TorusPoint(std::move(vals));
}

json point_to_json(const TorusPoint& p) {
    json a = json::array();
    for (const auto& v : p.values) a.push_back(json::array({rat_str(v.rot), rat_str(v.exp)}));
    return a;
}

RatVec parse_rat_vec(const json& j, size_t rank) {
    if (!j.is_array() || j.size() != rank)
        throw Error("vector needs exactly " + std::to_string(rank) + " coordinates");
    RatVec v;
    for (const auto& c : j) v.push_back(parse_rat(c.get<std::string>()));
    return v;
}

json rat_vec_to_json(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_str(x));
    return a;
}

namespace {

LatticeVector parse_int_vec(const json& j, size_t rank, const std::string& path) {
    if (!j.is_array() || j.size() != rank) schema_error(path, "expected an integer vector");
    LatticeVector v;
    for (const auto& c : j) v.push_back(c.get<long long>());
    return v;
}

IntMat parse_int_mat(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an integer matrix");
    IntMat m;
    for (const auto& row : j) {
        std::vector<long long> r;
        for (const auto& c : row) r.push_back(c.get<long long>());
        m.push_back(std::move(r));
    }
    return m;
}

RatMat parse_rat_mat(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected a matrix");
    RatMat m;
    for (const auto& row : j) {
        RatVec r;
        for (const auto& c : row) r.push_back(parse_rat(c.get<std::string>()));
        m.push_back(std::move(r));
    }
    return m;
}

SpectralDatum parse_datum(const json& j, const std::string& scenario_name, const Rat& qF) {
    SpectralDatum d;
    d.name = scenario_name;
    d.qF = qF;
    if (!j.contains("rank")) schema_error("datum.rank", "missing");
    d.rank = j["rank"].get<size_t>();
    if (j.contains("ambientDim") && j["ambientDim"].get<size_t>() != d.rank)
        schema_error("datum.ambientDim",
                     "ambient dimension must equal the lattice rank in this engine");
    d.gram = parse_rat_mat(j.at("gram"), "datum.gram");
    d.residual_rank = j.value("residualRank", d.rank);
    d.weyl_cap = j.value("weylCap", 10000);
    if (j.contains("centerMap")) d.center_map = parse_rat_mat(j["centerMap"], "datum.centerMap");

    if (!j.contains("roots")) schema_error("datum.roots", "missing");
    for (const auto& rj : j["roots"]) {
        RootEntry r;
        r.id = rj.at("id").get<std::string>();
        const std::string where = "datum.roots['" + r.id + "']";
        r.a = parse_rat_vec(rj.at("a"), d.rank);
        r.h = parse_int_vec(rj.at("h"), d.rank, where + ".h");
        r.d = parse_int_vec(rj.at("d"), d.rank, where + ".d");
        r.mult = rj.value("n", 1);
        if (rj.contains("qAlpha") && !rj["qAlpha"].is_null())
            r.params.q_alpha = parse_scalar_at(rj["qAlpha"], where + ".qAlpha");
        if (rj.contains("qAlphaStar"))
            r.params.q_alpha_star = parse_scalar_at(rj["qAlphaStar"], where + ".qAlphaStar");
        if (rj.contains("cAlpha")) r.params.c_alpha = parse_scalar_at(rj["cAlpha"], where + ".cAlpha");
        r.reflection = parse_int_mat(rj.at("reflection"), where + ".reflection");
        d.roots.push_back(std::move(r));
    }
    if (j.contains("weylGens"))
        for (const auto& g : j["weylGens"]) d.weyl_gens.push_back(g.get<std::string>());

    if (!j.contains("levis")) schema_error("datum.levis", "missing");
    for (const auto& [id, lj] : j["levis"].items()) {
        LeviSubset l;
        l.id = id;
        for (const auto& rid : lj.at("roots"))
            l.roots.push_back(d.root_index(rid.get<std::string>()));
        l.witness = parse_rat_vec(lj.at("witness"), d.rank);
        if (lj.contains("restriction"))
            l.restriction = parse_int_mat(lj["restriction"], "datum.levis." + id + ".restriction");
        d.levis.emplace(id, std::move(l));
    }
    return d;
}

} // namespace

std::string fnv1a_hex(const std::string& data) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Scenario parse_scenario(const std::string& text, const std::string& display_name) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("parse error in " + display_name + ": " + e.what());
    }
    Scenario sc;
    sc.source_hash = fnv1a_hex(text);
    sc.schema = j.value("schema", 1);
    if (sc.schema != 1) throw Error("unsupported schema version");
    sc.name = j.value("name", display_name);
    if (!j.contains("qF")) schema_error("qF", "missing");
    Rat qF = parse_rat(j["qF"].get<std::string>());
    sc.datum = parse_datum(j.at("datum"), sc.name, qF);

    ValidationReport rep = validate_datum(sc.datum);
    if (!rep.ok()) {
        std::string msg = "scenario '" + sc.name + "' failed validation:";
        for (const auto& e : rep.errors) msg += "\n  - " + e;
        throw Error(msg);
    }

    if (j.contains("facets"))
        for (const auto& [id, fj] : j["facets"].items()) {
            ParabolicFacet f = facet_from_vector(sc.datum, fj.at("levi").get<std::string>(),
                                                 parse_rat_vec(fj.at("xi"), sc.datum.rank));
            sc.facets.emplace(id, std::move(f));
        }

    if (j.contains("supports"))
        for (const auto& [id, sj] : j["supports"].items()) {
            CuspidalSupport s;
            s.levi_id = sj.at("levi").get<std::string>();
            sc.datum.levi(s.levi_id); // must resolve
            s.offset = parse_point(sj.at("point"), sc.datum.rank);
            sc.supports.emplace(id, std::move(s));
        }

    if (j.contains("inductionData"))
        for (const auto& [id, dj] : j["inductionData"].items()) {
            InductionDatum datum;
            datum.id = id;
            datum.facet = sc.facet(dj.at("facet").get<std::string>());
            datum.delta.levi_id = datum.facet.levi_id;
            datum.delta.support = sc.support(dj.at("support").get<std::string>());
            if (dj.contains("ccLog")) {
                datum.delta.cc_log = parse_rat_vec(dj["ccLog"], sc.datum.rank);
            } else {
                RatVec e = datum.delta.support.offset.exponent_vector();
                std::vector<RatVec> span;
                for (int idx : sc.datum.levi(datum.delta.levi_id).roots)
                    span.push_back(sc.datum.roots[static_cast<size_t>(idx)].a);
                datum.delta.cc_log = sub(e, project_onto_span(sc.datum.gram, span, e));
            }
            if (dj.contains("sqIntegrable"))
                datum.delta.square_integrable_mod_centre = dj["sqIntegrable"].get<bool>();
            if (dj.contains("supportFacet"))
                datum.support_facet = sc.facet(dj["supportFacet"].get<std::string>());
            validate_delta(sc.datum, datum.delta);
            sc.induction_data.emplace(id, std::move(datum));
        }

    if (j.contains("galois"))
        for (const auto& [id, gj] : j["galois"].items()) {
            GaloisElement g;
            g.sign = gj.value("sign", 1);
            if (g.sign != 1 && g.sign != -1) schema_error("galois." + id + ".sign", "must be +-1");
            g.cyclo = Int(gj.value("cyclo", 1));
            sc.galois.emplace(id, g);
        }

    if (j.contains("tasks"))
        for (const auto& tj : j["tasks"]) {
            TaskDef t;
            t.name = tj.at("name").get<std::string>();
            t.op = tj.at("op").get<std::string>();
            t.args = tj.value("args", json::object());
            t.expect = tj.value("expect", json::object());
            sc.tasks.push_back(std::move(t));
        }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

} // namespace muforge
