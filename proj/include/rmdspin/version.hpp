#ifndef RMDSPIN_VERSION_HPP
#define RMDSPIN_VERSION_HPP

namespace rmdspin {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever a CSV column set changes.
inline constexpr int kCsvSchemaVersion = 1;

} // namespace rmdspin

#endif
