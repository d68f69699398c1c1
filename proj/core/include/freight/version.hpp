#pragma once

namespace freight {

inline constexpr const char* kEngineName = "freight";
inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace freight
