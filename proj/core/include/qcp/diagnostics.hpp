#pragma once

#include <functional>
#include <string_view>

namespace qcp {

using WarningSink = std::function<void(std::string_view)>;

// Emits a non-fatal diagnostic. The default sink writes to stderr.
void warn(std::string_view message);

// Replaces the process-wide warning sink and returns the previous one.
// An empty sink restores the stderr default.
WarningSink set_warning_sink(WarningSink sink);

// RAII capture of warnings, mainly for tests.
class ScopedWarningCapture {
 public:
  explicit ScopedWarningCapture(WarningSink sink) : previous_(set_warning_sink(std::move(sink))) {}
  ~ScopedWarningCapture() { set_warning_sink(std::move(previous_)); }
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

 private:
  WarningSink previous_;
};

}  // namespace qcp
