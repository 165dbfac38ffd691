// SPDX-License-Identifier: Apache-2.0
#include "hst/csv.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace hst::csv {

std::string number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void row(std::ostream& os, std::initializer_list<std::string_view> cells) {
  bool first = true;
  for (auto c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

}  // namespace hst::csv
