#pragma once

#include <string>
#include <string_view>

namespace confaudit {

/// Default threshold above which two reflections count as repetitions.
inline constexpr double kSimilarityThreshold = 0.85;

/// Lowercases ASCII letters, collapses every whitespace run to a single
/// space, and trims both ends. Idempotent.
std::string normalize(std::string_view text);

/// Gestalt pattern-matching score in [0, 1]: 2*M / (|a| + |b|) where M sums
/// the lengths of recursively matched longest common blocks. Ties between
/// equally long blocks resolve to the earliest start in a, then in b. No
/// junk or popularity heuristics. Two empty strings score 1.
///
/// The score is made symmetric by canonicalizing argument order (the
/// lexicographically smaller string is treated as `a`).
///
/// Throws NotNormalized unless both inputs are fixed points of normalize().
double ratcliff_obershelp(std::string_view a, std::string_view b);

} // namespace confaudit
