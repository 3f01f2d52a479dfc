#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "confaudit/feedback.hpp"
#include "confaudit/log_model.hpp"

namespace confaudit {

struct PromptPayload {
    std::string task_line;
    std::vector<FailureEvent> failures;
    std::string scenario; // full rendered trajectory text
    std::vector<std::string> previous_plans;
};

/// Failure-enriched reflection prompt. Sections, in order: preamble,
/// "YOUR TASK WAS:", the "SPECIFIC FAILURES EXTRACTED FROM YOUR TRACE:"
/// block ("Failure N (kind):" with "Action you took : " and
/// "Environment said: " lines), the grounding instruction paragraph,
/// "Experience:", "Previous plans:" with "Attempt N:" lines, and the
/// trailing "New plan:" cue. With no failures the failures block becomes
/// the single line "No specific failure signals were extracted from your
/// trace." Whitespace is normative; goldens live under templates/.
std::string build_enriched_prompt(const PromptPayload& payload);

/// Structured-reflection prompt: the FAILED STEP / ROOT CAUSE / NEW PLAN
/// skeleton followed by the scenario, verbatim.
std::string build_grounded_prompt(std::string_view scenario);

/// Strips analysis sections from earlier reflections so only actionable
/// plan text is carried forward. Content after the first "NEW PLAN" /
/// "New plan" marker wins; otherwise text is cut at the first line
/// starting with "FAILED STEP" or "ROOT CAUSE"; otherwise unchanged.
std::vector<std::string> truncate_previous_plans(std::span<const std::string> plans);

/// Canonical trajectory text used as the prompt scenario: "> action" and
/// observation lines per step.
std::string render_scenario(const Trajectory& trajectory);

} // namespace confaudit
