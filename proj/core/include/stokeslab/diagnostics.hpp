#pragma once

#include <functional>
#include <string>

namespace stokeslab {

using WarningHandler = std::function<void(const std::string&)>;

// Non-fatal numerical warnings (boundary leakage, empty block ranges).
// The default handler prints to stderr.
void set_warning_handler(WarningHandler handler);
void reset_warning_handler();
void warn(const std::string& message);

/// Inputs to the vertical convolutions must be negligible at the slab ends.
inline constexpr double kBoundaryWarningThreshold = 1e-10;

}  // namespace stokeslab
