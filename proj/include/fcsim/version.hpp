#pragma once

namespace fcsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fcsim
