#pragma once

#include <string>

namespace tbell {

// Verbosity from the TBELL_LOG environment variable: quiet | info | debug.
enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level();

void log_warn(const std::string& message);   // suppressed only by quiet
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace tbell
