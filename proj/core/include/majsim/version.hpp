#pragma once

namespace majsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace majsim
