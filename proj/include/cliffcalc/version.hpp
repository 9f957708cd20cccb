#pragma once

namespace cliffcalc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cliffcalc
