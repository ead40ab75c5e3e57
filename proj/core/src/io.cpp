#include "lunekit/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lunekit {

using nlohmann::json;

namespace {

json parse_doc(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing field: ") + key);
    return j.at(key);
}

Vec vec_from(const json& a, int dim) {
    if (!a.is_array() || static_cast<int>(a.size()) != dim)
        throw SchemaError("vector has wrong length");
    Vec v(dim);
    for (int i = 0; i < dim; ++i) {
        if (!a[i].is_number()) throw SchemaError("vector entries must be numbers");
        v[i] = a[i].get<double>();
    }
    return v;
}

SpherePoint point_from(const json& a, int dim) {
    try {
        return adopt_unit(vec_from(a, dim));
    } catch (const GeometryError& e) {
        throw SchemaError(e.what());
    }
}

json vec_to(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json points_to(const std::vector<SpherePoint>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(vec_to(p.coords()));
    return a;
}

std::vector<SpherePoint> points_from(const json& a, int dim) {
    if (!a.is_array()) throw SchemaError("expected an array of vectors");
    std::vector<SpherePoint> pts;
    pts.reserve(a.size());
    for (const auto& e : a) pts.push_back(point_from(e, dim));
    return pts;
}

int dim_from(const json& j) {
    const json& d = require(j, "dim");
    if (!d.is_number_integer() || d.get<int>() < 2)
        throw SchemaError("dim must be an integer >= 2");
    return d.get<int>();
}

const char* method_name(ExtremizationMethod m) {
    return m == ExtremizationMethod::exact_vertices ? "exact_vertices" : "sampled";
}

json width_report_json(const WidthReport& r) {
    return json{{"value", r.value.radians()},
                {"witness", json::array({vec_to(r.witness_pair.first.coords()),
                                         vec_to(r.witness_pair.second.coords())})},
                {"method", method_name(r.method)}};
}

json constancy_json(const ConstancyReport& r) {
    return json{{"is_constant", r.is_constant},
                {"tau", r.tau},
                {"max_deviation", r.max_deviation},
                {"samples_used", r.samples_used}};
}

} // namespace

std::string body_to_json(const Body& body) {
    json j;
    j["dim"] = body.dim();
    if (body.is_polytope()) {
        j["kind"] = "polytope";
        j["vertices"] = points_to(body.polytope().vertices);
        j["hcenters"] = points_to(body.polytope().hcenters);
    } else {
        j["kind"] = "caps";
        json caps = json::array();
        for (const auto& c : body.cap_body().caps)
            caps.push_back(json{{"center", vec_to(c.center.coords())},
                                {"radius", c.radius}});
        j["caps"] = caps;
    }
    return j.dump(2);
}

Body body_from_json(const std::string& text, const ToleranceConfig& cfg) {
    const json j = parse_doc(text);
    const int dim = dim_from(j);
    const json& kind = require(j, "kind");
    if (!kind.is_string()) throw SchemaError("kind must be a string");

    if (kind == "polytope") {
        SphericalPolytope p;
        p.vertices = points_from(require(j, "vertices"), dim);
        p.hcenters = points_from(require(j, "hcenters"), dim);
        if (p.vertices.empty() || p.hcenters.empty())
            throw SchemaError("polytope needs vertices and hcenters");
        for (const auto& v : p.vertices)
            for (const auto& h : p.hcenters)
                if (h.dot(v) < -1e-6)
                    throw SchemaError("inconsistent polytope: vertex outside a hemisphere");
        return Body(std::move(p));
    }
    if (kind == "caps") {
        const json& arr = require(j, "caps");
        if (!arr.is_array() || arr.empty())
            throw SchemaError("caps must be a nonempty array");
        std::vector<Cap> caps;
        caps.reserve(arr.size());
        for (const auto& e : arr) {
            const json& r = require(e, "radius");
            if (!r.is_number()) throw SchemaError("radius must be a number");
            caps.push_back(
                make_cap(point_from(require(e, "center"), dim), r.get<double>()));
        }
        return make_cap_body(caps, cfg);
    }
    throw SchemaError("unknown body kind: " + kind.get<std::string>());
}

std::string gamma_to_json(const GammaField& g) {
    json j;
    j["dim"] = g.dim();
    j["directions"] = points_to(g.directions);
    j["values"] = g.values;
    return j.dump(2);
}

GammaField gamma_from_json(const std::string& text) {
    const json j = parse_doc(text);
    const int dim = dim_from(j);
    GammaField g;
    g.directions = points_from(require(j, "directions"), dim);
    const json& vals = require(j, "values");
    if (!vals.is_array() || vals.size() != g.directions.size())
        throw SchemaError("values must match directions in length");
    g.values.reserve(vals.size());
    for (const auto& v : vals) {
        if (!v.is_number()) throw SchemaError("values must be numbers");
        g.values.push_back(v.get<double>());
    }
    return g;
}

GammaField gamma_from_csv(const std::string& text) {
    GammaField g;
    int dim = 0;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line[line.find_first_not_of(" \t")] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::vector<double> nums;
        double x;
        while (fields >> x) nums.push_back(x);
        if (!fields.eof())
            throw SchemaError("line " + std::to_string(lineno) + ": not numeric");
        if (nums.size() < 3)
            throw SchemaError("line " + std::to_string(lineno) + ": too few fields");
        const int d = static_cast<int>(nums.size()) - 1;
        if (dim == 0)
            dim = d;
        else if (d != dim)
            throw SchemaError("line " + std::to_string(lineno) + ": ragged row");
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = nums[i];
        try {
            g.directions.push_back(normalize(v));
        } catch (const GeometryError& e) {
            throw SchemaError("line " + std::to_string(lineno) + ": " + e.what());
        }
        g.values.push_back(nums.back());
    }
    if (g.directions.empty()) throw SchemaError("empty gamma table");
    return g;
}

std::string wulff_to_json(const WulffPolytope& w) {
    json j;
    j["dim"] = w.dim();
    j["normals"] = points_to(w.normals);
    j["offsets"] = w.offsets;
    json verts = json::array();
    for (const auto& v : w.vertices) verts.push_back(vec_to(v));
    j["vertices"] = verts;
    json red = json::array();
    for (const char r : w.redundant) red.push_back(static_cast<int>(r));
    j["redundant"] = red;
    return j.dump(2);
}

WulffPolytope wulff_from_json(const std::string& text) {
    const json j = parse_doc(text);
    const int dim = dim_from(j);
    WulffPolytope w;
    w.normals = points_from(require(j, "normals"), dim);
    const json& offs = require(j, "offsets");
    if (!offs.is_array() || offs.size() != w.normals.size())
        throw SchemaError("offsets must match normals in length");
    for (const auto& o : offs) {
        if (!o.is_number() || !(o.get<double>() > 0.0))
            throw SchemaError("offsets must be positive numbers");
        w.offsets.push_back(o.get<double>());
    }
    const json& verts = require(j, "vertices");
    if (!verts.is_array()) throw SchemaError("vertices must be an array");
    for (const auto& v : verts) w.vertices.push_back(vec_from(v, dim));
    const json& red = require(j, "redundant");
    if (!red.is_array()) throw SchemaError("redundant must be an array");
    if (!red.empty() && red.size() != w.normals.size())
        throw SchemaError("redundant must match normals in length");
    for (const auto& r : red) {
        if (!r.is_number_integer()) throw SchemaError("redundant flags must be integers");
        w.redundant.push_back(r.get<int>() ? 1 : 0);
    }
    return w;
}

std::string width_report_to_json(const WidthReport& r) {
    return width_report_json(r).dump(2);
}

std::string constancy_report_to_json(const ConstancyReport& r) {
    return constancy_json(r).dump(2);
}

std::string equivalence_report_to_json(const ConstancyEquivalenceReport& r) {
    json j{{"constant_diameter", constancy_json(r.constant_diameter)},
           {"constant_width", constancy_json(r.constant_width)},
           {"verdicts_agree", r.verdicts_agree},
           {"tau_agree", r.tau_agree},
           {"polar_checks_pass", r.polar_checks_pass},
           {"pass", r.pass}};
    j["polar_constant_width"] = r.polar_constant_width
                                    ? constancy_json(*r.polar_constant_width)
                                    : json(nullptr);
    j["polar_constant_diameter"] = r.polar_constant_diameter
                                       ? constancy_json(*r.polar_constant_diameter)
                                       : json(nullptr);
    return j.dump(2);
}

std::string boundary_duality_report_to_json(const BoundaryDualityReport& r) {
    return json{{"check", r.check},
                {"body_summary", r.body_summary},
                {"samples", r.samples},
                {"max_violation", r.max_violation},
                {"pass", r.pass}}
        .dump(2);
}

std::string projection_diagram_report_to_json(const ProjectionDiagramReport& r) {
    return json{{"max_rel_discrepancy", r.max_rel_discrepancy},
                {"directions_compared", r.directions_compared},
                {"pass", r.pass}}
        .dump(2);
}

std::string self_dual_report_to_json(const SelfDualReport& r) {
    return json{{"radial_verdict", r.radial_verdict},
                {"width_verdict", r.width_verdict},
                {"diameter_verdict", r.diameter_verdict},
                {"radial_max_rel_diff", r.radial_max_rel_diff},
                {"lift_width_tau", r.lift_width_tau},
                {"lift_diameter_tau", r.lift_diameter_tau},
                {"consistent", r.consistent},
                {"self_dual", r.self_dual}}
        .dump(2);
}

std::string thickness_sum_report_to_json(const ThicknessSumReport& r) {
    return json{{"hypothesis_met", r.hypothesis_met},
                {"sums", json::array({r.sums[0], r.sums[1], r.sums[2], r.sums[3]})},
                {"max_error", r.max_error},
                {"pass", r.pass}}
        .dump(2);
}

std::string export_off(const Body& body, int samples, std::uint64_t seed,
                       const ToleranceConfig& cfg) {
    if (body.dim() != 3)
        throw GeometryError("OFF export supports ambient dimension 3 only");
    const SpherePoint center = interior_point(body, cfg);
    std::vector<SpherePoint> ring = body.is_polytope()
                                        ? body.polytope().vertices
                                        : boundary_sample(body, samples, seed, cfg);
    if (ring.size() < 3) throw GeometryError("boundary ring needs at least 3 points");

    const auto basis = tangent_basis(center);
    std::sort(ring.begin(), ring.end(),
              [&](const SpherePoint& a, const SpherePoint& b) {
                  const double aa = std::atan2(basis[1].dot(a.coords()),
                                               basis[0].dot(a.coords()));
                  const double ab = std::atan2(basis[1].dot(b.coords()),
                                               basis[0].dot(b.coords()));
                  return aa < ab;
              });

    const int n = static_cast<int>(ring.size());
    std::ostringstream os;
    os << std::setprecision(17);
    os << "OFF\n" << (n + 1) << " " << n << " " << (2 * n) << "\n";
    for (const auto& p : ring)
        os << p.coords()[0] << " " << p.coords()[1] << " " << p.coords()[2] << "\n";
    os << center.coords()[0] << " " << center.coords()[1] << " "
       << center.coords()[2] << "\n";
    for (int i = 0; i < n; ++i)
        os << "3 " << i << " " << (i + 1) % n << " " << n << "\n";
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    if (!in.good() && !in.eof())
        throw std::runtime_error("read failed: " + path);
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << text;
    out.flush();
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

} // namespace lunekit
