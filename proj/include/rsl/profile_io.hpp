#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rsl/profile.hpp"

namespace rsl {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view profile_schema = "rho-soliton-profile/1";

/// Locale-independent decimal with 17 significant digits; round-trips exactly.
std::string format_double(double v);

/// Accepts the output of format_double or a JSON number. Throws InvalidParameters.
double parse_double(const Json& v);

/// Finite values as 17-digit strings, non-finite ones as null.
Json number_json(double v);

Json profile_to_json(const RadialProfile& prof);
RadialProfile profile_from_json(const Json& doc);

/// Serialised text, two-space indented, trailing newline.
std::string dump_json(const Json& doc);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

void write_profile(const std::filesystem::path& path, const RadialProfile& prof);
RadialProfile read_profile(const std::filesystem::path& path);

}  // namespace rsl
