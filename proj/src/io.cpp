#include "funk/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace funk {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("body: missing field '") + key + "'");
    return *it;
}

double number(const json& j) {
    if (!j.is_number()) throw ParseError("body: expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError("body: non-finite number");
    return x;
}

Vector vector(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("body: expected a nonempty array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i]);
    return v;
}

std::vector<Vector> rows(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("body: expected a nonempty array of rows");
    std::vector<Vector> out;
    for (const auto& r : j) {
        out.push_back(vector(r));
        if (out.back().size() != out.front().size()) throw ParseError("body: rows of unequal length");
    }
    return out;
}

json array(const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

} // namespace

ConvexBody parse_body(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("body: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("body: expected a JSON object");
    const auto& type = field(j, "type");
    if (!type.is_string()) throw ParseError("body: 'type' must be a string");
    const auto kind = type.get<std::string>();
    if (kind == "polytope") {
        const auto vertices = rows(field(j, "vertices"));
        if (vertices.front().size() < 1) throw ParseError("body: empty vertex");
        return Polytope::from_vertices(vertices);
    }
    if (kind == "ball") {
        const Vector c = vector(field(j, "center"));
        const double r = number(field(j, "radius"));
        if (!(r > 0.0)) throw InvariantError("body: ball radius must be positive");
        return Ellipsoid::ball(c, r);
    }
    if (kind == "ellipsoid") {
        const Vector c = vector(field(j, "center"));
        const auto shape = rows(field(j, "shape"));
        if (static_cast<Eigen::Index>(shape.size()) != c.size() || shape.front().size() != c.size())
            throw ParseError("body: 'shape' must be a d x d matrix");
        Matrix a(c.size(), c.size());
        for (Eigen::Index i = 0; i < c.size(); ++i) a.row(i) = shape[static_cast<std::size_t>(i)].transpose();
        return Ellipsoid(c, a);
    }
    throw ParseError("body: unknown type '" + kind + "'");
}

ConvexBody load_body(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open body file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_body(ss.str());
}

std::string body_to_json(const ConvexBody& body) {
    json j;
    if (const auto* p = std::get_if<Polytope>(&body)) {
        j["type"] = "polytope";
        j["vertices"] = json::array();
        for (const auto& v : p->vertices()) j["vertices"].push_back(array(v));
    } else if (const auto* e = std::get_if<Ellipsoid>(&body)) {
        j["type"] = "ellipsoid";
        j["center"] = array(e->center);
        j["shape"] = json::array();
        for (Eigen::Index i = 0; i < e->form.rows(); ++i) j["shape"].push_back(array(e->form.row(i).transpose()));
    } else {
        throw InvariantError("body_to_json: oracle bodies have no file form");
    }
    return j.dump();
}

} // namespace funk
