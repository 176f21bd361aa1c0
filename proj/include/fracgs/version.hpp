#pragma once

namespace fracgs {

inline constexpr const char* kVersion = "fracgs 0.1.0";

}  // namespace fracgs
