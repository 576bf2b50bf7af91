#pragma once

namespace elmiatt {

inline constexpr const char* kVersion = "0.1.0";

} // namespace elmiatt
