#pragma once

namespace lgtd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lgtd
