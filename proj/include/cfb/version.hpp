#pragma once

#define CFB_VERSION "0.1.0"

namespace cfb {
inline constexpr const char* kVersion = CFB_VERSION;
}
