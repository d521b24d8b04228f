#include "ctsearch/service/log.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <mutex>

#include "ctsearch/error.hpp"

namespace ctsearch::service {

namespace {

std::atomic<LogLevel> g_level{LogLevel::kInfo};
std::atomic<std::ostream*> g_stream{nullptr};
std::mutex g_mutex;

std::string_view level_name(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug:
      return "debug";
    case LogLevel::kInfo:
      return "info";
    case LogLevel::kWarn:
      return "warn";
    case LogLevel::kError:
      return "error";
  }
  return "info";
}

std::string timestamp() {
  auto now = std::chrono::floor<std::chrono::milliseconds>(std::chrono::system_clock::now());
  auto day = std::chrono::floor<std::chrono::days>(now);
  std::chrono::year_month_day ymd{day};
  std::chrono::hh_mm_ss hms{now - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(hms.hours().count()), static_cast<long long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()), static_cast<long long>(hms.subseconds().count()));
  return buf;
}

}  // namespace

void set_log_level(LogLevel level) { g_level = level; }

LogLevel parse_log_level(std::string_view text) {
  for (auto l : {LogLevel::kDebug, LogLevel::kInfo, LogLevel::kWarn, LogLevel::kError}) {
    if (level_name(l) == text) return l;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown log level '" + std::string(text) + "'");
}

void set_log_stream(std::ostream* out) { g_stream = out; }

void log_event(LogLevel level, std::string_view event, const nlohmann::json& fields) {
  if (level < g_level.load()) return;
  nlohmann::json line{{"ts", timestamp()}, {"level", level_name(level)}, {"event", event}};
  if (fields.is_object()) {
    for (const auto& [k, v] : fields.items()) line[k] = v;
  }
  std::string text = line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  std::lock_guard lock(g_mutex);
  std::ostream* out = g_stream.load();
  (out != nullptr ? *out : std::cerr) << text << '\n';
}

}  // namespace ctsearch::service
