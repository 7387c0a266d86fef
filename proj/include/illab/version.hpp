#pragma once

namespace illab {
inline constexpr const char* kVersion = "0.1.0";
}
