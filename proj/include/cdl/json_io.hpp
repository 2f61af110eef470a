#pragma once

#include <json.hpp>

#include "cdl/bodies.hpp"
#include "cdl/profile.hpp"
#include "cdl/radial.hpp"

namespace cdl {

nlohmann::json body_to_json(const ConvexBody& K);
ConvexBody body_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const Profile& u);
Profile profile_from_json(const nlohmann::json& j);

nlohmann::json radial_to_json(const RadialFunction& phi);
RadialFunction radial_from_json(const nlohmann::json& j);

}  // namespace cdl
