#pragma once

namespace vadecon {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace vadecon
