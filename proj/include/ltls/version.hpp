#pragma once

namespace ltls {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ltls
