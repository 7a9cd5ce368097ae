#include "psl/csvfmt.hpp"

#include <cmath>
#include <cstdio>

namespace psl {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_int(uint64_t v) { return std::to_string(v); }

std::string format_opt(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

}  // namespace psl
