#include "conelip/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conelip/prng.hpp"

namespace conelip {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

std::vector<double> as_doubles(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ValidationError(what + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<Vec> as_points(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array of vectors");
    std::vector<Vec> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_doubles(v, what + " entry"));
    return out;
}

}  // namespace

PointedSpace load_space(const std::string& path) {
    const json j = parse_file(path);
    const std::string kind = j.value("kind", "");
    if (kind == "points") {
        if (!j.contains("norm") || !j.contains("dim") || !j.contains("points"))
            throw ValidationError(path + ": point space needs norm, dim and points");
        return make_embedded_space(j["dim"].get<int>(), parse_norm(j["norm"].get<std::string>()),
                                   as_points(j["points"], "points"));
    }
    if (kind == "matrix") {
        if (!j.contains("dist")) throw ValidationError(path + ": matrix space needs dist");
        std::vector<std::vector<double>> rows;
        for (const auto& r : j["dist"]) rows.push_back(as_doubles(r, "dist row"));
        return make_matrix_space(rows);
    }
    throw ValidationError(path + ": kind must be \"points\" or \"matrix\"");
}

ScalarField load_field(const PointedSpace& space, const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("values")) throw ValidationError(path + ": field file needs values");
    return make_scalar_field(space, as_doubles(j["values"], "values"));
}

PartialField load_partial_field(const PointedSpace& space, const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("domain") || !j.contains("values"))
        throw ValidationError(path + ": partial field needs domain and values");
    std::vector<int> domain;
    for (const auto& v : j["domain"]) domain.push_back(v.get<int>());
    return make_partial_field(space, std::move(domain), as_doubles(j["values"], "values"));
}

RayFile load_ray_file(const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("norm") || !j.contains("dim") || !j.contains("directions"))
        throw ValidationError(path + ": ray file needs norm, dim and directions");
    RayFile out{make_ray_system(j["dim"].get<int>(), parse_norm(j["norm"].get<std::string>()),
                                as_points(j["directions"], "directions")),
                std::nullopt};
    if (j.contains("values"))
        out.values = make_ph_field(out.rays, as_doubles(j["values"], "values"));
    return out;
}

FreeElement load_free_element(const PointedSpace& space, const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("terms")) throw ValidationError(path + ": element file needs terms");
    std::vector<std::pair<int, double>> raw;
    for (const auto& t : j["terms"]) {
        if (!t.contains("point") || !t.contains("a"))
            throw ValidationError(path + ": each term needs point and a");
        raw.emplace_back(t["point"].get<int>(), t["a"].get<double>());
    }
    return make_free_element(space, raw);
}

PHFreeElement load_ph_free_element(const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("norm") || !j.contains("dim") || !j.contains("terms"))
        throw ValidationError(path + ": ph element file needs norm, dim and terms");
    std::vector<PHFreeElement::Term> terms;
    for (const auto& t : j["terms"]) {
        if (!t.contains("x") || !t.contains("a"))
            throw ValidationError(path + ": each term needs x and a");
        terms.push_back({as_doubles(t["x"], "x"), t["a"].get<double>()});
    }
    return make_ph_free_element(j["dim"].get<int>(), parse_norm(j["norm"].get<std::string>()),
                                std::move(terms));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_doubles(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_double(v[i]);
    }
    return s + "]";
}

std::string json_points(const std::vector<Vec>& pts) {
    std::string s = "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ",";
        s += json_doubles(pts[i]);
    }
    return s + "]";
}

std::string space_to_json(const PointedSpace& space) {
    if (space.embedded()) {
        return "{\"kind\":\"points\",\"norm\":\"" + norm_name(space.norm) +
               "\",\"dim\":" + std::to_string(space.dim) +
               ",\"points\":" + json_points(space.points) + "}";
    }
    std::string s = "{\"kind\":\"matrix\",\"dist\":[";
    for (int i = 0; i < space.n; ++i) {
        if (i) s += ",";
        s += "[";
        for (int j = 0; j < space.n; ++j) {
            if (j) s += ",";
            s += format_double(space.dist(i, j));
        }
        s += "]";
    }
    return s + "]}";
}

std::string field_to_json(const ScalarField& f) {
    return "{\"values\":" + json_doubles(f.values) + "}";
}

std::string partial_field_to_json(const PartialField& pf) {
    std::string s = "{\"domain\":[";
    for (std::size_t i = 0; i < pf.domain.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(pf.domain[i]);
    }
    return s + "],\"values\":" + json_doubles(pf.values) + "}";
}

std::string rays_to_json(const RaySystem& rays, const std::optional<PHField>& values) {
    std::string s = "{\"norm\":\"" + norm_name(rays.norm) +
                    "\",\"dim\":" + std::to_string(rays.dim) +
                    ",\"directions\":" + json_points(rays.dirs);
    if (values) s += ",\"values\":" + json_doubles(values->values);
    return s + "}";
}

std::string free_element_to_json(const FreeElement& mu) {
    std::string s = "{\"terms\":[";
    for (std::size_t i = 0; i < mu.terms.size(); ++i) {
        if (i) s += ",";
        s += "{\"point\":" + std::to_string(mu.terms[i].first) +
             ",\"a\":" + format_double(mu.terms[i].second) + "}";
    }
    return s + "]}";
}

std::string ph_free_element_to_json(const PHFreeElement& mu) {
    std::string s = "{\"norm\":\"" + norm_name(mu.norm) + "\",\"dim\":" + std::to_string(mu.dim) +
                    ",\"terms\":[";
    for (std::size_t i = 0; i < mu.terms.size(); ++i) {
        if (i) s += ",";
        s += "{\"x\":" + json_doubles(mu.terms[i].x) + ",\"a\":" + format_double(mu.terms[i].a) +
             "}";
    }
    return s + "]}";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digest(const std::string& canonical) {
    const std::uint64_t h = fnv1a64(canonical.data(), canonical.size());
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace conelip
