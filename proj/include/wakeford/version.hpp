#pragma once

namespace wakeford {

inline constexpr const char* kVersion = "0.1.0";

} // namespace wakeford
