#pragma once

namespace ensemble_su2 {

inline constexpr const char* version_string = "0.1.0";
inline constexpr int schedule_schema_version = 1;

}  // namespace ensemble_su2
