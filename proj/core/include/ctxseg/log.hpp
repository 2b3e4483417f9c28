#pragma once

#include <string>
#include <string_view>

#include <fmt/format.h>

namespace ctxseg::log {

enum class Level { debug, info, warn, error };

/// Reads CTXSEG_LOG (error|warn|info|debug); unset or unknown means warn.
Level level_from_env();
void set_level(Level level);
void write(Level level, std::string_view message);
bool enabled(Level level);

template <typename... Args>
void warn(fmt::format_string<Args...> f, Args&&... args) {
  if (enabled(Level::warn)) write(Level::warn, fmt::format(f, std::forward<Args>(args)...));
}
template <typename... Args>
void info(fmt::format_string<Args...> f, Args&&... args) {
  if (enabled(Level::info)) write(Level::info, fmt::format(f, std::forward<Args>(args)...));
}
template <typename... Args>
void debug(fmt::format_string<Args...> f, Args&&... args) {
  if (enabled(Level::debug)) write(Level::debug, fmt::format(f, std::forward<Args>(args)...));
}
template <typename... Args>
void error(fmt::format_string<Args...> f, Args&&... args) {
  if (enabled(Level::error)) write(Level::error, fmt::format(f, std::forward<Args>(args)...));
}

}  // namespace ctxseg::log
