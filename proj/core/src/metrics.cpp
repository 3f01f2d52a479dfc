#include "confaudit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "confaudit/errors.hpp"

namespace confaudit {

RrrResult rrr(std::span<const Reflection> memory, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw std::invalid_argument("similarity threshold must be in (0, 1]");
    }
    RrrResult result;
    result.threshold = threshold;
    if (memory.size() <= 1) return result;

    std::vector<std::string> norm;
    norm.reserve(memory.size());
    for (const Reflection& r : memory) norm.push_back(normalize(r.text));

    for (std::size_t i = 1; i < norm.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (ratcliff_obershelp(norm[i], norm[j]) >= threshold) {
                result.repeated_indices.insert(i);
                break;
            }
        }
    }
    result.value = static_cast<double>(result.repeated_indices.size()) /
                   static_cast<double>(memory.size() - 1);
    return result;
}

FrozenFlag classify_frozen(const RrrResult& result, double cutoff) {
    return FrozenFlag{result.value >= cutoff, result.value};
}

TrialsToSolve trials_to_solve(const EnvironmentRun& run) {
    for (std::size_t i = 0; i < run.trajectories.size(); ++i) {
        if (run.trajectories[i].outcome == Outcome::Success) {
            return static_cast<int>(i);
        }
    }
    return std::nullopt;
}

namespace {

std::vector<double> average_ranks(std::span<const double> xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return xs[l] < xs[r]; });
    std::vector<double> ranks(xs.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
        double avg = (static_cast<double>(i + j)) / 2.0 + 1.0; // 1-based average rank
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

bool has_two_distinct(std::span<const double> xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] != xs[0]) return true;
    }
    return false;
}

} // namespace

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DegenerateInput("rank correlation needs paired inputs");
    if (xs.size() < 3) throw DegenerateInput("rank correlation needs at least 3 pairs");
    if (!has_two_distinct(xs) || !has_two_distinct(ys)) {
        throw DegenerateInput("rank correlation needs at least two distinct values per side");
    }
    std::vector<double> rx = average_ranks(xs);
    std::vector<double> ry = average_ranks(ys);

    double n = static_cast<double>(rx.size());
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    double rho = cov / std::sqrt(vx * vy);
    return std::clamp(rho, -1.0, 1.0);
}

FailureCategory classify_failure_category(TrialsToSolve with_memory,
                                          TrialsToSolve without_memory, int budget) {
    if (budget < 1) throw std::invalid_argument("trial budget must be positive");
    // A 0-based solve index of `budget` or more would mean more trials than
    // the budget allows.
    if (with_memory && *with_memory >= budget) {
        throw BudgetExceeded("with-memory solve index " + std::to_string(*with_memory) +
                             " exceeds budget " + std::to_string(budget));
    }
    if (without_memory && *without_memory >= budget) {
        throw BudgetExceeded("without-memory solve index " + std::to_string(*without_memory) +
                             " exceeds budget " + std::to_string(budget));
    }
    if (!without_memory) return FailureCategory::TaskHard;
    if (!with_memory || *with_memory > *without_memory) return FailureCategory::MemoryHarmful;
    return FailureCategory::NotApplicable;
}

DomainSummary summarize_domain(const RunLog& log, double threshold, double frozen_cutoff) {
    DomainSummary summary;
    summary.domain = log.domain;
    double rrr_sum = 0.0;
    for (const EnvironmentRun& env : log.environments) {
        if (env.reflections.empty()) continue;
        ++summary.analyzed;
        RrrResult r = rrr(env.reflections, threshold);
        rrr_sum += r.value;
        if (classify_frozen(r, frozen_cutoff).frozen) ++summary.frozen_count;
    }
    if (summary.analyzed > 0) {
        summary.frozen_rate = static_cast<double>(summary.frozen_count) /
                              static_cast<double>(summary.analyzed);
        summary.avg_rrr = rrr_sum / static_cast<double>(summary.analyzed);
    }
    return summary;
}

} // namespace confaudit
