#pragma once

#include <map>
#include <string>
#include <string_view>

#include "cfmm/model.hpp"

namespace cfmm {

/// Build a model from a descriptor kind ("uniswap-v2", "balancer", "uniswap-v3",
/// "mstable", "stableswap", "lstableswap", "curve", "dodo", "sdamm-log",
/// "sdamm-sinh") and named parameters. Missing parameters take the catalog
/// defaults; unknown kinds or parameter names throw ModelError naming the key.
AmmModel make_model(std::string_view kind, const std::map<std::string, double>& params = {});

/// Parse {"kind": string, "params": {name: number}}.
AmmModel parse_model_descriptor(std::string_view json_text);

/// Inverse of parse_model_descriptor. Custom SDAMM utilities have no
/// descriptor form and throw ModelError.
std::string to_descriptor_json(const AmmModel& model);

}  // namespace cfmm
