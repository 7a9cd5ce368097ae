#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace psl {

// CSV numeric conventions: integers verbatim, reals with 12 significant
// digits, '.' decimal separator, locale-independent.  Absent optionals
// serialize as the empty field.
std::string format_real(double v);
std::string format_int(uint64_t v);
std::string format_opt(const std::optional<double>& v);

}  // namespace psl
