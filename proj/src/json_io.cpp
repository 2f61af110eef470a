#include "cdl/json_io.hpp"

#include <stdexcept>

namespace cdl {

using nlohmann::json;

json body_to_json(const ConvexBody& K) {
    json j;
    switch (K.kind) {
        case ShapeKind::Ball:
            j["type"] = "ball";
            j["dim"] = K.dim;
            j["radius"] = K.radius;
            break;
        case ShapeKind::Ellipsoid: {
            j["type"] = "ellipsoid";
            json rows = json::array();
            for (int r = 0; r < K.dim; ++r) {
                json row = json::array();
                for (int c = 0; c < K.dim; ++c) row.push_back(K.matrix[r * K.dim + c]);
                rows.push_back(row);
            }
            j["matrix"] = rows;
            break;
        }
        case ShapeKind::Box:
            j["type"] = "box";
            j["half_widths"] = K.half_widths;
            break;
        case ShapeKind::VPolytope:
            j["type"] = "vpolytope";
            j["vertices"] = K.vertices;
            break;
        case ShapeKind::HPolytope: {
            j["type"] = "hpolytope";
            json normals = json::array(), offsets = json::array();
            for (const Halfspace& h : K.planes) {
                normals.push_back(h.normal);
                offsets.push_back(h.offset);
            }
            j["normals"] = normals;
            j["offsets"] = offsets;
            break;
        }
    }
    return j;
}

ConvexBody body_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "ball")
        return ConvexBody::ball(j.at("dim").get<int>(), j.at("radius").get<double>());
    if (type == "ellipsoid") {
        auto rows = j.at("matrix");
        int dim = static_cast<int>(rows.size());
        std::vector<double> m;
        for (const auto& row : rows)
            for (const auto& v : row) m.push_back(v.get<double>());
        return ConvexBody::ellipsoid(dim, std::move(m));
    }
    if (type == "box") return ConvexBody::box(j.at("half_widths").get<Vec>());
    if (type == "vpolytope")
        return ConvexBody::vpolytope(j.at("vertices").get<std::vector<Vec>>());
    if (type == "simplex")
        return ConvexBody::simplex(j.at("vertices").get<std::vector<Vec>>(),
                                   j.value("centered", false));
    if (type == "hpolytope") {
        auto normals = j.at("normals").get<std::vector<Vec>>();
        auto offsets = j.at("offsets").get<std::vector<double>>();
        if (normals.size() != offsets.size())
            throw std::invalid_argument("hpolytope: normals/offsets size mismatch");
        std::vector<Halfspace> planes;
        for (std::size_t i = 0; i < normals.size(); ++i)
            planes.push_back({normals[i], offsets[i]});
        int dim = normals.empty() ? 0 : static_cast<int>(normals[0].size());
        return ConvexBody::hpolytope(dim, std::move(planes));
    }
    throw std::invalid_argument("body_from_json: unknown type " + type);
}

json profile_to_json(const Profile& u) {
    json j;
    j["breakpoints"] = u.knots;
    j["values"] = u.values;
    if (u.bounded)
        j["tail"] = {{"bounded", true}};
    else
        j["tail"] = {{"slope", u.tail_slope}};
    return j;
}

Profile profile_from_json(const json& j) {
    auto knots = j.at("breakpoints").get<std::vector<double>>();
    auto values = j.at("values").get<std::vector<double>>();
    const json& tail = j.at("tail");
    if (tail.value("bounded", false)) return make_profile(knots, values, true);
    return make_profile(knots, values, false, tail.at("slope").get<double>());
}

json radial_to_json(const RadialFunction& phi) {
    return {{"body", body_to_json(phi.body)}, {"profile", profile_to_json(phi.profile)}};
}

RadialFunction radial_from_json(const json& j) {
    return make_radial(body_from_json(j.at("body")), profile_from_json(j.at("profile")));
}

}  // namespace cdl
