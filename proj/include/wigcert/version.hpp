#pragma once

namespace wigcert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wigcert
