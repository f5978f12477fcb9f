#include "tbell/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace tbell {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("TBELL_LOG");
        if (env == nullptr) return LogLevel::kInfo;
        if (std::strcmp(env, "quiet") == 0) return LogLevel::kQuiet;
        if (std::strcmp(env, "debug") == 0) return LogLevel::kDebug;
        return LogLevel::kInfo;
    }();
    return level;
}

void log_warn(const std::string& message) {
    if (log_level() >= LogLevel::kInfo) std::fprintf(stderr, "warning: %s\n", message.c_str());
}

void log_info(const std::string& message) {
    if (log_level() >= LogLevel::kInfo) std::fprintf(stderr, "%s\n", message.c_str());
}

void log_debug(const std::string& message) {
    if (log_level() >= LogLevel::kDebug) std::fprintf(stderr, "debug: %s\n", message.c_str());
}

}  // namespace tbell
