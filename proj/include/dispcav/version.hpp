#pragma once

namespace dispcav {
inline constexpr const char* kVersion = "0.1.0";
}
