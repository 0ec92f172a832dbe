#pragma once

#include <cstdio>
#include <string>

namespace synsetrank {

// All floating-point values written to files or stdout go through these two
// helpers so outputs are byte-stable across runs.

// 12 significant digits, the precision used by every TSV/CSV emitter.
inline std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Fixed 4 decimals, used by the AUC report tables.
inline std::string format_fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

} // namespace synsetrank
