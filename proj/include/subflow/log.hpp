#pragma once

#include <functional>
#include <string_view>

namespace subflow {

enum class LogLevel { info, warning };

using LogSink = std::function<void(LogLevel, std::string_view)>;

/// Replaces the process-wide sink (default: stderr for warnings, info dropped).
/// Returns the previous sink.
LogSink set_log_sink(LogSink sink);

void log_message(LogLevel level, std::string_view message);
inline void log_info(std::string_view m) { log_message(LogLevel::info, m); }
inline void log_warning(std::string_view m) { log_message(LogLevel::warning, m); }

}  // namespace subflow
