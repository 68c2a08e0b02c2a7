#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "ril/policy/gaussian_policy.hpp"

namespace ril {

// RILNET1 layout (little-endian):
//   "RILNET1\0"                    8-byte magic
//   u32 layer count
//   per layer: u32 rows, u32 cols
//   per layer: weights (row-major f64), then biases (f64)
//   2 x f64 log-std

void write_checkpoint(std::ostream& out, const GaussianPolicy& policy);
void save_checkpoint(const GaussianPolicy& policy, const std::filesystem::path& path);

/// Reads a checkpoint. When `expected` is given, hidden sizes must match.
/// Throws ParseError on bad magic, unsupported version, truncation or
/// inconsistent dimensions.
GaussianPolicy read_checkpoint(std::istream& in, const CommandLimits& limits = {},
                               std::optional<PolicyShape> expected = std::nullopt);
GaussianPolicy load_checkpoint(const std::filesystem::path& path, const CommandLimits& limits = {},
                               std::optional<PolicyShape> expected = std::nullopt);

}  // namespace ril
