#include "natcalc/config.hpp"

#include "natcalc/errors.hpp"
#include "natcalc/syntax.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace natcalc {

namespace {

using nlohmann::json;

template <class T>
T number(const json &j, const char *key)
{
    if (!j.is_number_unsigned()) {
        throw std::invalid_argument(std::string("config: '") + key + "' must be a non-negative integer");
    }
    return j.get<T>();
}

Value data_value(const json &j)
{
    if (j.is_string()) {
        try {
            return parse_value(j.get<std::string>());
        } catch (const Error &e) {
            throw std::invalid_argument("config: bad data value '" + j.get<std::string>() + "': " + e.what());
        }
    }
    if (j.is_boolean()) {
        return Value::boolean(j.get<bool>());
    }
    if (j.is_number_unsigned()) {
        return Value::nat(j.get<std::uint64_t>());
    }
    throw std::invalid_argument("config: data values are strings, booleans or naturals");
}

} // namespace

Config parse_config(std::string_view text, Config base)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw std::invalid_argument("config: not a JSON object");
    }
    if (j.contains("universe")) {
        const json &u = j["universe"];
        if (u.contains("data")) {
            if (!u["data"].is_array()) {
                throw std::invalid_argument("config: 'data' must be an array");
            }
            base.universe.data_values.clear();
            for (const json &v : u["data"]) {
                base.universe.data_values.push_back(data_value(v));
            }
        }
        if (u.contains("pool")) {
            base.universe.pool = number<std::uint32_t>(u["pool"], "pool");
        }
        if (u.contains("fresh_budget")) {
            base.universe.fresh_budget = number<std::uint32_t>(u["fresh_budget"], "fresh_budget");
        }
        if (u.contains("depth_budget")) {
            base.universe.depth_budget = number<std::uint32_t>(u["depth_budget"], "depth_budget");
        }
    }
    if (j.contains("limits")) {
        const json &l = j["limits"];
        if (l.contains("max_states")) {
            base.limits.max_states = number<std::size_t>(l["max_states"], "max_states");
        }
        if (l.contains("max_depth")) {
            base.limits.max_depth = number<std::size_t>(l["max_depth"], "max_depth");
        }
    }
    if (j.contains("seed")) {
        base.seed = number<std::uint64_t>(j["seed"], "seed");
    }
    base.universe.validate();
    if (base.limits.max_states == 0 || base.limits.max_depth == 0) {
        throw std::invalid_argument("config: limits must be positive");
    }
    return base;
}

Config load_config(const std::filesystem::path &path, Config base)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string to_json(const Config &c)
{
    json data = json::array();
    for (const Value &v : c.universe.data_values) {
        data.push_back(pretty(v, c.universe));
    }
    json j = {{"universe",
               {{"data", data},
                {"pool", c.universe.pool},
                {"fresh_budget", c.universe.fresh_budget},
                {"depth_budget", c.universe.depth_budget}}},
              {"limits", {{"max_states", c.limits.max_states}, {"max_depth", c.limits.max_depth}}},
              {"seed", c.seed}};
    return j.dump(2);
}

} // namespace natcalc
