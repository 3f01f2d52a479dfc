#include "confaudit/log_model.hpp"

#include "confaudit/errors.hpp"

namespace confaudit {

namespace {

bool blank(std::string_view s) {
    for (char c : s) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') return false;
    }
    return true;
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

} // namespace

std::string extract_task_line(const Trajectory& trajectory) {
    static constexpr std::string_view kMarker = "Your task is to:";
    if (!trajectory.steps.empty()) {
        std::string_view obs = trajectory.steps.front().observation;
        std::size_t pos = obs.find(kMarker);
        if (pos != std::string_view::npos) {
            std::string_view rest = obs.substr(pos + kMarker.size());
            std::size_t eol = rest.find('\n');
            if (eol != std::string_view::npos) rest = rest.substr(0, eol);
            rest = trim_view(rest);
            if (!rest.empty()) return std::string(rest);
        }
    }
    if (!blank(trajectory.task_line)) return trajectory.task_line;
    throw TaskLineMissing();
}

} // namespace confaudit
