#include "cfmm/descriptor.hpp"

#include <initializer_list>
#include <json.hpp>

#include "cfmm/errors.hpp"

namespace cfmm {

namespace {

using Params = std::map<std::string, double>;

class ParamReader {
public:
    ParamReader(std::string_view kind, const Params& p, std::initializer_list<const char*> allowed)
        : p_(p) {
        for (const auto& [key, value] : p) {
            bool known = false;
            for (const char* a : allowed) known = known || key == a;
            if (!known) {
                throw ModelError("unknown parameter '" + key + "' for model kind '" +
                                     std::string(kind) + "'",
                                 key);
            }
        }
    }

    double get(const char* key, double fallback) const {
        auto it = p_.find(key);
        return it == p_.end() ? fallback : it->second;
    }

private:
    const Params& p_;
};

}  // namespace

AmmModel make_model(std::string_view kind, const Params& p) {
    if (kind == "uniswap-v2") {
        ParamReader r(kind, p, {});
        return AmmModel::uniswap_v2();
    }
    if (kind == "balancer") {
        ParamReader r(kind, p, {"w"});
        return AmmModel::balancer(r.get("w", 0.3));
    }
    if (kind == "uniswap-v3") {
        ParamReader r(kind, p, {"alpha", "beta"});
        return AmmModel::uniswap_v3(r.get("alpha", 1.0), r.get("beta", 1.0));
    }
    if (kind == "mstable") {
        ParamReader r(kind, p, {});
        return AmmModel::mstable();
    }
    if (kind == "stableswap") {
        ParamReader r(kind, p, {"C"});
        return AmmModel::stableswap(r.get("C", 1.0));
    }
    if (kind == "lstableswap") {
        ParamReader r(kind, p, {"C"});
        return AmmModel::lstableswap(r.get("C", 1.0));
    }
    if (kind == "curve") {
        ParamReader r(kind, p, {"C"});
        return AmmModel::curve(r.get("C", 2.0));
    }
    if (kind == "dodo") {
        ParamReader r(kind, p, {"P", "C"});
        return AmmModel::dodo(r.get("P", 1.5), r.get("C", 0.5));
    }
    if (kind == "sdamm-log") {
        ParamReader r(kind, p, {});
        return AmmModel::sdamm(LogUtility{});
    }
    if (kind == "sdamm-sinh") {
        ParamReader r(kind, p, {"C", "q"});
        return AmmModel::sdamm_sinh(r.get("C", 1.0), r.get("q", 0.8));
    }
    throw ModelError("unknown model kind '" + std::string(kind) + "'", "kind");
}

AmmModel parse_model_descriptor(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError(std::string("malformed model descriptor: ") + e.what());
    }
    if (!j.is_object()) throw ModelError("model descriptor must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "kind" && key != "params") {
            throw ModelError("unknown descriptor key '" + key + "'", key);
        }
    }
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw ModelError("model descriptor needs a string 'kind'", "kind");
    }
    Params params;
    if (j.contains("params")) {
        const auto& pj = j["params"];
        if (!pj.is_object()) throw ModelError("'params' must be an object", "params");
        for (const auto& [key, value] : pj.items()) {
            if (!value.is_number()) {
                throw ModelError("parameter '" + key + "' must be a number", key);
            }
            params[key] = value.get<double>();
        }
    }
    return make_model(j["kind"].get<std::string>(), params);
}

std::string to_descriptor_json(const AmmModel& model) {
    nlohmann::json params = nlohmann::json::object();
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, params::Balancer>) {
                params["w"] = m.w;
            } else if constexpr (std::is_same_v<M, params::UniswapV3>) {
                params["alpha"] = m.alpha;
                params["beta"] = m.beta;
            } else if constexpr (std::is_same_v<M, params::StableSwap> ||
                                 std::is_same_v<M, params::LStableSwap> ||
                                 std::is_same_v<M, params::Curve>) {
                params["C"] = m.C;
            } else if constexpr (std::is_same_v<M, params::Dodo>) {
                params["P"] = m.external_price;
                params["C"] = m.C;
            } else if constexpr (std::is_same_v<M, params::Sdamm>) {
                if (const auto* s = std::get_if<SinhUtility>(&m.U)) {
                    params["C"] = s->C;
                    params["q"] = s->q;
                } else if (std::holds_alternative<CustomUtility>(m.U)) {
                    throw ModelError("custom utilities have no descriptor form");
                }
            }
        },
        model.params());
    nlohmann::json j;
    j["kind"] = model.kind_name();
    j["params"] = params;
    return j.dump();
}

}  // namespace cfmm
