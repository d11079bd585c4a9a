#pragma once

#include <functional>
#include <string_view>

namespace neurohotnet {

using WarningSink = std::function<void(std::string_view)>;

/// Replaces the process-wide warning sink and returns the previous one.
/// The default writes "warning: <message>" to stderr.
WarningSink set_warning_sink(WarningSink sink);

/// Forwards a message to the current sink. Thread-safe.
void warn(std::string_view message);

}  // namespace neurohotnet
