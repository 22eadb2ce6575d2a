#pragma once

namespace lutldpc {

inline constexpr const char* kVersion = "0.1.0";

} // namespace lutldpc
