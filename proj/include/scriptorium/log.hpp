#pragma once

#include <string>
#include <utility>
#include <vector>

namespace scriptorium {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

void set_log_level(LogLevel lv);
LogLevel log_level();
bool set_log_level(const std::string& name);  // "debug" | "info" | "warn" | "error"

// One JSON record per line on stderr; artifacts never go to stderr.
void log_line(LogLevel lv, const std::string& msg,
              const std::vector<std::pair<std::string, std::string>>& fields = {});

inline void log_info(const std::string& msg,
                     const std::vector<std::pair<std::string, std::string>>& fields = {}) {
    log_line(LogLevel::info, msg, fields);
}
inline void log_warn(const std::string& msg,
                     const std::vector<std::pair<std::string, std::string>>& fields = {}) {
    log_line(LogLevel::warn, msg, fields);
}
inline void log_error(const std::string& msg,
                      const std::vector<std::pair<std::string, std::string>>& fields = {}) {
    log_line(LogLevel::error, msg, fields);
}

}  // namespace scriptorium
