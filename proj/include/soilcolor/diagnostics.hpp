#pragma once

#include <functional>
#include <string_view>

namespace soilcolor {

// Non-fatal conditions (empty scan file, lossy image format) are reported
// through this sink. The default handler prints "warning: ..." to stderr.
using WarningHandler = std::function<void(std::string_view)>;

// Returns the previous handler. Passing an empty function restores the default.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace soilcolor
