#pragma once

namespace tangle {

inline constexpr const char kVersionString[] = "1.0.0";
inline constexpr const char kSchemaString[] = "tangle-response/1";

} // namespace tangle
