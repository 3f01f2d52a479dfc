#pragma once

#include <set>
#include <span>
#include <vector>

#include "confaudit/log_model.hpp"
#include "confaudit/similarity.hpp"

namespace confaudit {

/// RRR at or above this value marks a memory as frozen.
inline constexpr double kFrozenCutoff = 0.5;

/// Reflection repetition rate for one environment's memory.
/// value = |repeated| / (n - 1) for n >= 2 reflections, else 0.
/// Index i >= 1 is repeated when some earlier reflection is at least
/// `threshold`-similar after normalization.
struct RrrResult {
    double value = 0.0;
    std::set<std::size_t> repeated_indices;
    double threshold = kSimilarityThreshold;
};

struct FrozenFlag {
    bool frozen = false;
    double rrr = 0.0;
};

enum class FailureCategory { MemoryHarmful, TaskHard, NotApplicable };

struct DomainSummary {
    Domain domain = Domain::Synthetic;
    int analyzed = 0;     // environments with at least one reflection
    int frozen_count = 0; // among analyzed
    std::optional<double> frozen_rate; // frozen_count / analyzed
    std::optional<double> avg_rrr;     // unweighted mean over analyzed
};

/// Throws std::invalid_argument unless threshold is in (0, 1].
RrrResult rrr(std::span<const Reflection> memory, double threshold = kSimilarityThreshold);

FrozenFlag classify_frozen(const RrrResult& result, double cutoff = kFrozenCutoff);

/// Index of the first Success trajectory; DNF (absent) when none.
TrialsToSolve trials_to_solve(const EnvironmentRun& run);

/// Spearman rank correlation: ties get average ranks, then Pearson on the
/// rank vectors. Throws DegenerateInput when sizes differ, size < 3, or a
/// side has fewer than two distinct values.
double spearman(std::span<const double> xs, std::span<const double> ys);

/// Compares matched runs with and without memory. Values are 0-based solve
/// indices (absent = DNF); budget is the trial budget, so a present index
/// must be < budget or BudgetExceeded is thrown.
FailureCategory classify_failure_category(TrialsToSolve with_memory,
                                          TrialsToSolve without_memory,
                                          int budget);

DomainSummary summarize_domain(const RunLog& log, double threshold = kSimilarityThreshold,
                               double frozen_cutoff = kFrozenCutoff);

} // namespace confaudit
