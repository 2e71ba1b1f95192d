#pragma once

namespace graspgeom {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace graspgeom
