// format.hpp - numeric text formatting shared by the file writers
#pragma once

#include <cstdio>
#include <string>

namespace ricci {

// 17 significant digits: enough for a double to round-trip bit-exactly.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace ricci
