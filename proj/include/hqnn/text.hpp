#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqnn::text {

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

/// Parses a complete finite decimal/scientific token. An optional leading
/// '+' is accepted. Returns nullopt for trailing garbage, inf, nan.
std::optional<double> parse_double(std::string_view token);

std::optional<long long> parse_integer(std::string_view token);

std::string_view trim(std::string_view s);

/// Splits on any run of the given delimiter characters; empty pieces dropped.
std::vector<std::string_view> split(std::string_view s, std::string_view delimiters);

} // namespace hqnn::text
