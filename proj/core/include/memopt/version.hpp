#pragma once

namespace memopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace memopt
