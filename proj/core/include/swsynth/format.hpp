#pragma once

#include <charconv>
#include <string>

namespace swsynth {

/// Shortest round-trip decimal representation; keeps reports byte-stable.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace swsynth
