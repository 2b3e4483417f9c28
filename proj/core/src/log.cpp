#include "ctxseg/log.hpp"

#include <atomic>
#include <cstdlib>
#include <memory>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace ctxseg::log {

namespace {

std::atomic<int>& current_level() {
  static std::atomic<int> level{static_cast<int>(level_from_env())};
  return level;
}

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto l = std::make_shared<spdlog::logger>("ctxseg",
                                              std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::trace);
    return l;
  }();
  return *instance;
}

}  // namespace

Level level_from_env() {
  const char* env = std::getenv("CTXSEG_LOG");
  if (env == nullptr) return Level::warn;
  const std::string_view v(env);
  if (v == "error") return Level::error;
  if (v == "info") return Level::info;
  if (v == "debug") return Level::debug;
  return Level::warn;
}

void set_level(Level level) { current_level() = static_cast<int>(level); }

bool enabled(Level level) { return static_cast<int>(level) >= current_level().load(); }

void write(Level level, std::string_view message) {
  switch (level) {
    case Level::debug: logger().debug(message); break;
    case Level::info: logger().info(message); break;
    case Level::warn: logger().warn(message); break;
    case Level::error: logger().error(message); break;
  }
}

}  // namespace ctxseg::log
