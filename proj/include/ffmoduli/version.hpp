#pragma once

namespace ffmoduli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "ffmoduli/1";

}  // namespace ffmoduli
