#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confaudit/log_model.hpp"

namespace confaudit {

/// Task identity parsed from a gamefile name such as
/// "pick_cool_then_place_in_recep-Mug-None-CoffeeMachine-10".
struct TaskSpec {
    std::string task_type;
    std::string object;
    std::optional<std::string> object2; // absent when the raw field is "None"
    std::string receptacle;
    int variant = 0;

    /// Serializes back with '-' separators; byte-exact round trip for any
    /// name parse_gamefile accepts.
    std::string to_name() const;
};

struct MentionReport {
    int mentioned = 0;
    int total = 0;
    std::vector<bool> per_reflection;
};

enum class ConfabPattern {
    FullTaskSubstitution,   // neither object nor receptacle ever mentioned
    ObjectSubstitutionOnly, // receptacle mentioned, object never
    NotConfabulated,        // object mentioned at least once
    Indeterminate           // no receptacle available to test
};

/// Splits from the right: variant, receptacle, object2, object; the
/// remainder (which may contain no '-') is the task type. Throws
/// MalformedGamefile on fewer than five fields, an empty object or
/// receptacle, or a variant that is not a canonical decimal integer.
TaskSpec parse_gamefile(std::string_view name);

/// Case-insensitive whole-word match of an object name in free text.
/// Word boundaries are transitions to non-alphanumeric characters. Matches
/// the raw name as one word ("soapbar"), its camel-case split as adjacent
/// words ("soap bar"), and therefore also the instance form ("mug 1").
bool mentions_object(std::string_view reflection_text, std::string_view object_name);

/// Applies mentions_object(spec.object) to each reflection in order.
MentionReport mention_report(const EnvironmentRun& run, const TaskSpec& spec);

/// Throws EmptyMemory when the run has no reflections.
ConfabPattern classify_pattern(const EnvironmentRun& run, const TaskSpec& spec);

std::string to_token(ConfabPattern p);

} // namespace confaudit
