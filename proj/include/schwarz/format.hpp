#pragma once

#include <cstdio>
#include <string>

namespace schwarz {

/// Scientific notation with 16 significant digits, the CSV number format.
inline std::string format_sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", x);
  return buf;
}

/// Rounds to two significant digits, printed like 7.5e-06.
inline std::string format_2sig(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.1e", x);
  return buf;
}

}  // namespace schwarz
