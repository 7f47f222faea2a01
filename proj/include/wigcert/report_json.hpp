#pragma once

#include <json.hpp>

#include "wigcert/certify.hpp"
#include "wigcert/moments.hpp"

namespace wigcert {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const MomentReport& rep);
ordered_json to_json(const EntropyValue& e);
ordered_json to_json(const Certificate& c);
ordered_json to_json(const RefinedRsupReport& r);
ordered_json grid_metadata(const PhaseSpaceGrid& g);

}  // namespace wigcert
