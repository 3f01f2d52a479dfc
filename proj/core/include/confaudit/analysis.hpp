#pragma once

#include <optional>
#include <string>
#include <vector>

#include "confaudit/confab.hpp"
#include "confaudit/log_model.hpp"
#include "confaudit/metrics.hpp"

namespace confaudit {

struct AnalysisOptions {
    double similarity_threshold = kSimilarityThreshold;
    double frozen_cutoff = kFrozenCutoff;
};

struct EnvAnalysis {
    std::string env_id;
    RrrResult rrr;
    bool frozen = false;
    TrialsToSolve trials_to_solve;
    std::optional<MentionReport> mention;   // present when a gamefile parses
    std::optional<ConfabPattern> pattern;
};

/// Per-environment audit plus the domain roll-up. per_env holds only
/// analyzed environments (those with at least one reflection); the
/// summary is recomputable from it. correlation is Spearman of RRR vs
/// trials-to-solve with DNF ranked after every finisher, absent when the
/// population is degenerate.
struct AnalysisReport {
    Domain domain = Domain::Synthetic;
    FeedbackKind feedback_kind = FeedbackKind::Binary;
    int total_environments = 0;
    std::vector<EnvAnalysis> per_env;
    DomainSummary summary;
    std::optional<double> correlation;
};

AnalysisReport analyze_run_log(const RunLog& log, const AnalysisOptions& options = {});

/// Rank value used for the correlation: solve index, or DNF mapped to
/// (longest trial count in the log) + 1 so non-finishers rank last.
double dnf_rank_value(const RunLog& log);

std::string render_analysis_human(const AnalysisReport& report);
std::string render_analysis_machine(const AnalysisReport& report);

std::string render_report_row_human(const std::string& label, const AnalysisReport& report);
std::string render_report_row_machine(const std::string& label, const AnalysisReport& report);

} // namespace confaudit
