#include "cooking_code/checksum.hpp"

#include <zlib.h>

#include <fmt/format.h>

namespace cooking_code {

std::string crc32_tag(std::string_view data) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
    return fmt::format("crc32:{:08x}", static_cast<unsigned long>(crc));
}

}  // namespace cooking_code
