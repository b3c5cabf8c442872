#include "scriptorium/log.hpp"

#include <chrono>
#include <cstdio>
#include <mutex>

namespace scriptorium {

namespace {
LogLevel g_level = LogLevel::info;
std::mutex g_mutex;

const char* level_name(LogLevel lv) {
    switch (lv) {
        case LogLevel::debug: return "debug";
        case LogLevel::info: return "info";
        case LogLevel::warn: return "warn";
        case LogLevel::error: return "error";
    }
    return "info";
}

void json_escape(std::string& out, const std::string& s) {
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
}
}  // namespace

void set_log_level(LogLevel lv) { g_level = lv; }
LogLevel log_level() { return g_level; }

bool set_log_level(const std::string& name) {
    if (name == "debug") g_level = LogLevel::debug;
    else if (name == "info") g_level = LogLevel::info;
    else if (name == "warn") g_level = LogLevel::warn;
    else if (name == "error") g_level = LogLevel::error;
    else return false;
    return true;
}

void log_line(LogLevel lv, const std::string& msg,
              const std::vector<std::pair<std::string, std::string>>& fields) {
    if (static_cast<int>(lv) < static_cast<int>(g_level)) return;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    std::string line = "{\"ts_ms\":" + std::to_string(ms) + ",\"level\":\"";
    line += level_name(lv);
    line += "\",\"msg\":\"";
    json_escape(line, msg);
    line += "\"";
    for (const auto& [k, v] : fields) {
        line += ",\"";
        json_escape(line, k);
        line += "\":\"";
        json_escape(line, v);
        line += "\"";
    }
    line += "}\n";
    std::lock_guard<std::mutex> lock(g_mutex);
    std::fputs(line.c_str(), stderr);
}

}  // namespace scriptorium
