#include "confaudit/prompt.hpp"

#include <algorithm>

namespace confaudit {

namespace {

constexpr std::string_view kPreamble =
    "You will be given the history of a past experience in which you were placed in an "
    "environment and given a task to complete. You were unsuccessful.";

constexpr std::string_view kInstruction =
    "Using the specific failures listed above (do not invent your own interpretation), "
    "explain in one sentence WHY each failure occurred. Then write a concise step-by-step "
    "New plan that avoids those exact failures. Name the exact objects and locations from "
    "your trace.";

constexpr std::string_view kNoFailures =
    "No specific failure signals were extracted from your trace.";

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

// Earliest occurrence of any plan marker, with the marker length so the
// caller can skip past it.
std::size_t find_plan_marker(std::string_view text, std::size_t& marker_len) {
    std::size_t best = std::string_view::npos;
    for (std::string_view marker : {std::string_view("NEW PLAN"), std::string_view("New plan")}) {
        std::size_t pos = text.find(marker);
        if (pos != std::string_view::npos && (best == std::string_view::npos || pos < best)) {
            best = pos;
            marker_len = marker.size();
        }
    }
    return best;
}

bool starts_analysis_section(std::string_view line) {
    std::string_view t = trim_view(line);
    return t.rfind("FAILED STEP", 0) == 0 || t.rfind("ROOT CAUSE", 0) == 0;
}

} // namespace

std::string build_enriched_prompt(const PromptPayload& payload) {
    std::string out;
    out += kPreamble;
    out += "\n\nYOUR TASK WAS: ";
    out += payload.task_line;
    out += "\n\n";

    if (payload.failures.empty()) {
        out += kNoFailures;
        out += '\n';
    } else {
        out += "SPECIFIC FAILURES EXTRACTED FROM YOUR TRACE:\n";
        int n = 1;
        for (const FailureEvent& failure : payload.failures) {
            out += "  Failure " + std::to_string(n++) + " (" + to_token(failure.kind) + "):\n";
            out += "    Action you took : " + failure.action + "\n";
            out += "    Environment said: " + failure.response + "\n";
        }
    }

    out += '\n';
    out += kInstruction;
    out += "\n\nExperience: ";
    out += payload.scenario;
    out += "\n\nPrevious plans:\n";
    int n = 1;
    for (const std::string& plan : payload.previous_plans) {
        out += "  Attempt " + std::to_string(n++) + ": " + plan + "\n";
    }
    out += "\nNew plan:\n";
    return out;
}

std::string build_grounded_prompt(std::string_view scenario) {
    std::string out;
    out += "You failed to complete the task in the experience below. Reflect on it and "
           "respond in exactly this format:\n\n";
    out += "FAILED STEP:\n  [exact action + environment response]\n";
    out += "ROOT CAUSE:\n  [one sentence why that action failed]\n";
    out += "NEW PLAN:\n  [specific plan naming exact objects]\n\n";
    out += scenario;
    out += '\n';
    return out;
}

std::vector<std::string> truncate_previous_plans(std::span<const std::string> plans) {
    std::vector<std::string> out;
    out.reserve(plans.size());
    for (const std::string& plan : plans) {
        std::size_t marker_len = 0;
        std::size_t pos = find_plan_marker(plan, marker_len);
        if (pos != std::string::npos) {
            std::string_view rest = std::string_view(plan).substr(pos + marker_len);
            if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
            out.emplace_back(trim_view(rest));
            continue;
        }
        // No plan marker: drop everything from the first analysis header on.
        std::size_t cut = std::string::npos;
        std::size_t line_start = 0;
        while (line_start <= plan.size()) {
            std::size_t nl = plan.find('\n', line_start);
            std::string_view line = std::string_view(plan).substr(
                line_start, nl == std::string::npos ? std::string::npos : nl - line_start);
            if (starts_analysis_section(line)) {
                cut = line_start;
                break;
            }
            if (nl == std::string::npos) break;
            line_start = nl + 1;
        }
        if (cut == std::string::npos) {
            out.push_back(plan);
        } else {
            out.emplace_back(trim_view(std::string_view(plan).substr(0, cut)));
        }
    }
    return out;
}

std::string render_scenario(const Trajectory& trajectory) {
    std::string out;
    for (const Step& step : trajectory.steps) {
        out += "> ";
        out += step.action;
        out += '\n';
        out += step.observation;
        out += '\n';
    }
    while (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

} // namespace confaudit
