#pragma once

// JSON helpers shared by the lab translation units.

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "swarmkit/engine.hpp"

namespace swarmkit::lab {

namespace detail {
[[noreturn]] void config_error(const std::string& where, const std::string& what);
void check_keys(const nlohmann::json& obj, const std::string& where,
                std::initializer_list<const char*> allowed);
double get_double(const nlohmann::json& v, const std::string& where);
std::uint64_t get_u64(const nlohmann::json& v, const std::string& where);
bool get_bool(const nlohmann::json& v, const std::string& where);
std::string get_string(const nlohmann::json& v, const std::string& where);
}  // namespace detail

engine::SimConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const engine::SimConfig& c);
nlohmann::json parse_json_text(std::string_view text, const std::string& what);
std::string read_text(const std::filesystem::path& path);

}  // namespace swarmkit::lab
