#pragma once

namespace etsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace etsim
