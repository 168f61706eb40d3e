#pragma once

namespace qcanvas {
inline constexpr const char* kToolVersion = "1.0.0";
}
