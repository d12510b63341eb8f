#pragma once

namespace aerial {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace aerial
