#pragma once

namespace egcount {

inline constexpr const char* kVersion = "0.1.0";

/// Bumped whenever a persisted JSONL/CSV/JSON field changes.
inline constexpr int kSchemaVersion = 1;

}  // namespace egcount
