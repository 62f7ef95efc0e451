#include "soilcolor/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace soilcolor {

namespace {

std::mutex g_mutex;
WarningHandler g_handler;

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(g_mutex);
  auto previous = std::move(g_handler);
  g_handler = std::move(handler);
  return previous;
}

void warn(std::string_view message) {
  std::lock_guard lock(g_mutex);
  if (g_handler) {
    g_handler(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace soilcolor
