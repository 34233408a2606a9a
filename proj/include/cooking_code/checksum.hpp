#pragma once

#include <string>
#include <string_view>

namespace cooking_code {

// "crc32:" followed by eight lowercase hex digits.
std::string crc32_tag(std::string_view data);

}  // namespace cooking_code
