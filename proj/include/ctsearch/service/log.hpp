#pragma once

#include <ostream>
#include <string_view>

#include <json.hpp>

namespace ctsearch::service {

enum class LogLevel { kDebug, kInfo, kWarn, kError };

void set_log_level(LogLevel level);
LogLevel parse_log_level(std::string_view text);

/// Redirects log output (default std::cerr). The stream must outlive logging.
void set_log_stream(std::ostream* out);

/// Writes one JSON object per line: {"ts", "level", "event", ...fields}.
void log_event(LogLevel level, std::string_view event, const nlohmann::json& fields = nlohmann::json::object());

}  // namespace ctsearch::service
