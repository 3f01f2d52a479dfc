#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "confaudit/log_model.hpp"

namespace confaudit {

inline constexpr int kLoopThreshold = 3;
inline constexpr int kMaxEvents = 5;

enum class FailureKind { NoEffect, Loop, FailingAssert, RuntimeError };

/// One grounded failure signal recovered from a trajectory or test output.
struct FailureEvent {
    FailureKind kind = FailureKind::NoEffect;
    std::string action;   // agent action, failing assert text, or error type
    std::string response; // environment response or error message
    int step_index = 0;   // trajectory step, or 0-based line for test output
    int count = 1;        // occurrences; run length for Loop
};

/// Household-environment extraction.
/// NoEffect: one event per distinct action whose trimmed observation is
/// "Nothing happens." or "Nothing happens"; count = occurrences,
/// step_index = first occurrence. Loop: one event per distinct action
/// repeated >= loop_threshold times consecutively (first qualifying run),
/// unless the action already produced a NoEffect event. Events are ordered
/// by step_index and truncated to max_events.
std::vector<FailureEvent> extract_alfworld(const Trajectory& trajectory,
                                           int loop_threshold = kLoopThreshold,
                                           int max_events = kMaxEvents);

/// Unit-test output extraction.
/// A line whose trimmed text starts with "assert " and that precedes an
/// error-token line (capitalized identifier ending in "Error") yields a
/// FailingAssert pairing the assert text with that error line. Error
/// tokens never claimed by an assert yield one RuntimeError per type with
/// count = occurrences. step_index is the 0-based line number.
std::vector<FailureEvent> extract_humaneval(std::string_view test_output);

std::string to_token(FailureKind k);

} // namespace confaudit
