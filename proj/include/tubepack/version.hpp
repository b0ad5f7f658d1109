#pragma once

#include <string_view>

namespace tubepack {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace tubepack
