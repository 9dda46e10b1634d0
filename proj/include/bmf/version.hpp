#pragma once

namespace bmf {

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace bmf
