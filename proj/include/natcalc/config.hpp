#pragma once

#include "natcalc/lts_graph.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace natcalc {

/// Settings shared by every command. The JSON form is
///   {"universe": {"data": ["()", ...], "pool": 2, "fresh_budget": 3,
///                 "depth_budget": 6},
///    "limits": {"max_states": 2000, "max_depth": 1000},
///    "seed": 1}
/// with every key optional. Data values are written in concrete syntax.
struct Config {
    Universe universe;
    Limits limits;
    std::uint64_t seed = 1;
};

/// Overlays the keys present in `json` on `base`. Throws
/// std::invalid_argument on malformed input or a broken universe invariant.
Config parse_config(std::string_view json, Config base = {});
Config load_config(const std::filesystem::path &path, Config base = {});

std::string to_json(const Config &c);

} // namespace natcalc
