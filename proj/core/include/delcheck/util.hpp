#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace delcheck {

std::uint64_t fnv1a64(std::string_view data);

std::string to_hex(std::uint64_t value);

std::string trim(std::string_view text);

}  // namespace delcheck
