#pragma once

namespace coklab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace coklab
