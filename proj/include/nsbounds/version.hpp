#pragma once

namespace nsbounds {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace nsbounds
