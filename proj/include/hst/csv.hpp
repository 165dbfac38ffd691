// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hst::csv {

/// 17 significant digits, locale independent ("%.17g" semantics via to_chars).
std::string number(double v);

/// Writes the cells joined by ',' and terminated by a single '\n'.
void row(std::ostream& os, std::initializer_list<std::string_view> cells);

}  // namespace hst::csv
