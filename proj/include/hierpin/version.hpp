#pragma once

namespace hierpin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hierpin
