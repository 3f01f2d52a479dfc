#pragma once

#include <optional>
#include <string>
#include <vector>

namespace confaudit {

enum class Domain { Alfworld, Webshop, Hotpotqa, Humaneval, Synthetic };

enum class FeedbackKind { Binary, UnitTests };

enum class Outcome { Success, Failure };

/// One agent action and the environment's response to it.
/// Both texts are non-empty after whitespace trimming; the loader strips
/// trailing newline characters only and otherwise preserves bytes.
struct Step {
    int index = 0; // 0-based, contiguous within a trajectory
    std::string action;
    std::string observation;
};

struct Trajectory {
    int trial = 0; // 0-based, contiguous within an environment
    std::string task_line;
    std::vector<Step> steps; // empty only for a degenerate success-at-step-0 log
    Outcome outcome = Outcome::Failure;
};

/// A self-reflection written after a failed trial. At most one per trial.
struct Reflection {
    int trial = 0;
    std::string text; // byte-identical to the source log
};

/// Index of the first Success trajectory; absent means did-not-finish.
/// Internal values are 0-based; render 1-based for humans ("8 trials").
using TrialsToSolve = std::optional<int>;

struct EnvironmentRun {
    std::string env_id;
    std::optional<std::string> gamefile;
    std::vector<Trajectory> trajectories; // ordered by trial
    std::vector<Reflection> reflections;  // ordered by trial, strictly increasing
    TrialsToSolve trials_to_solve;
};

struct RunLog {
    Domain domain = Domain::Synthetic;
    FeedbackKind feedback_kind = FeedbackKind::Binary;
    std::vector<EnvironmentRun> environments; // unique env_ids, file order
};

/// Canonical lowercase tokens used by the file format and machine reports.
std::string to_token(Domain d);
std::string to_token(FeedbackKind f);
std::string to_token(Outcome o);
std::optional<Domain> domain_from_token(const std::string& token);
std::optional<FeedbackKind> feedback_from_token(const std::string& token);
std::optional<Outcome> outcome_from_token(const std::string& token);

/// Styled names for human-facing tables ("ALFWorld", "Unit tests").
std::string display_name(Domain d);
std::string display_name(FeedbackKind f);

/// The task sentence for a trajectory: the text after the "Your task is
/// to:" marker on the first observation when present, else the task_line
/// field. Throws TaskLineMissing when neither source yields one.
std::string extract_task_line(const Trajectory& trajectory);

} // namespace confaudit
