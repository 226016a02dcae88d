#pragma once

#include <cstdio>
#include <string>

namespace qmeasure {

// Fixed "%.17g" rendering: enough digits to round-trip any double, and
// byte-stable across runs, which the CSV reproducibility contract relies on.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qmeasure
