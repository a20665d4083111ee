#pragma once

namespace repel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace repel
