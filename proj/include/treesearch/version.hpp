#pragma once

namespace treesearch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace treesearch
