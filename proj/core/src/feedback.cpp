#include "confaudit/feedback.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace confaudit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
        s.remove_suffix(1);
    }
    return s;
}

// The household simulator reports a rejected action with this sentinel;
// some log writers drop the period.
bool is_no_effect(std::string_view observation) {
    std::string_view t = trim(observation);
    return t == "Nothing happens." || t == "Nothing happens";
}

bool is_ident_char(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_error_token(std::string_view token) {
    if (token.size() < 5) return false;
    if (token[0] < 'A' || token[0] > 'Z') return false;
    return token.substr(token.size() - 5) == "Error";
}

// First identifier-shaped token ending in "Error", if any.
std::string find_error_token(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && !is_ident_char(line[i])) ++i;
        std::size_t start = i;
        while (i < line.size() && is_ident_char(line[i])) ++i;
        std::string_view token = line.substr(start, i - start);
        if (is_error_token(token)) return std::string(token);
    }
    return {};
}

} // namespace

std::vector<FailureEvent> extract_alfworld(const Trajectory& trajectory, int loop_threshold,
                                           int max_events) {
    if (loop_threshold < 2) throw std::invalid_argument("loop threshold must be at least 2");
    if (max_events < 1) throw std::invalid_argument("max events must be positive");

    std::vector<FailureEvent> events;
    std::map<std::string, std::size_t> no_effect_at; // action -> event index
    const auto& steps = trajectory.steps;

    for (const Step& step : steps) {
        if (!is_no_effect(step.observation)) continue;
        auto it = no_effect_at.find(step.action);
        if (it != no_effect_at.end()) {
            ++events[it->second].count;
            continue;
        }
        FailureEvent event;
        event.kind = FailureKind::NoEffect;
        event.action = step.action;
        event.response = step.observation;
        event.step_index = step.index;
        event.count = 1;
        no_effect_at.emplace(step.action, events.size());
        events.push_back(std::move(event));
    }

    // First qualifying consecutive run per action; actions that already
    // produced a NoEffect event are claimed by it.
    std::map<std::string, bool> looped;
    std::size_t i = 0;
    while (i < steps.size()) {
        std::size_t j = i;
        while (j + 1 < steps.size() && steps[j + 1].action == steps[i].action) ++j;
        std::size_t run = j - i + 1;
        if (run >= static_cast<std::size_t>(loop_threshold) &&
            no_effect_at.find(steps[i].action) == no_effect_at.end() && !looped[steps[i].action]) {
            FailureEvent event;
            event.kind = FailureKind::Loop;
            event.action = steps[i].action;
            event.response = steps[i].observation;
            event.step_index = steps[i].index;
            event.count = static_cast<int>(run);
            looped[steps[i].action] = true;
            events.push_back(std::move(event));
        }
        i = j + 1;
    }

    std::stable_sort(events.begin(), events.end(),
                     [](const FailureEvent& a, const FailureEvent& b) {
                         return a.step_index < b.step_index;
                     });
    if (events.size() > static_cast<std::size_t>(max_events)) {
        events.resize(static_cast<std::size_t>(max_events));
    }
    return events;
}

std::vector<FailureEvent> extract_humaneval(std::string_view test_output) {
    struct Line {
        std::string text; // trimmed
        int number = 0;
    };
    std::vector<Line> asserts;
    std::vector<Line> errors;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= test_output.size()) {
        std::size_t nl = test_output.find('\n', pos);
        std::string_view raw = test_output.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        std::string_view line = trim(raw);
        if (line.rfind("assert ", 0) == 0) {
            asserts.push_back({std::string(line), line_no});
        } else {
            std::string token = find_error_token(line);
            if (!token.empty()) errors.push_back({std::string(line), line_no});
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
        ++line_no;
    }

    std::vector<FailureEvent> events;
    std::vector<bool> claimed(errors.size(), false);

    // A failing assert is an assert line followed by an error marker.
    for (const Line& a : asserts) {
        for (std::size_t e = 0; e < errors.size(); ++e) {
            if (claimed[e] || errors[e].number < a.number) continue;
            FailureEvent event;
            event.kind = FailureKind::FailingAssert;
            event.action = a.text;
            event.response = errors[e].text;
            event.step_index = a.number;
            event.count = 1;
            claimed[e] = true;
            events.push_back(std::move(event));
            break;
        }
    }

    std::map<std::string, std::size_t> runtime_at; // error type -> event index
    for (std::size_t e = 0; e < errors.size(); ++e) {
        if (claimed[e]) continue;
        std::string type = find_error_token(errors[e].text);
        auto it = runtime_at.find(type);
        if (it != runtime_at.end()) {
            ++events[it->second].count;
            continue;
        }
        FailureEvent event;
        event.kind = FailureKind::RuntimeError;
        event.action = type;
        event.response = errors[e].text;
        event.step_index = errors[e].number;
        event.count = 1;
        runtime_at.emplace(type, events.size());
        events.push_back(std::move(event));
    }

    std::stable_sort(events.begin(), events.end(),
                     [](const FailureEvent& a, const FailureEvent& b) {
                         return a.step_index < b.step_index;
                     });
    return events;
}

std::string to_token(FailureKind k) {
    switch (k) {
    case FailureKind::NoEffect: return "NoEffect";
    case FailureKind::Loop: return "Loop";
    case FailureKind::FailingAssert: return "FailingAssert";
    case FailureKind::RuntimeError: return "RuntimeError";
    }
    return "NoEffect";
}

} // namespace confaudit
