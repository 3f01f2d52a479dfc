#include "confaudit/analysis.hpp"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "confaudit/errors.hpp"

namespace confaudit {

namespace {

using nlohmann::ordered_json;

std::string fixed(double value, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, value);
    return buf;
}

std::string pad(std::string text, std::size_t width) {
    if (text.size() < width) text.append(width - text.size(), ' ');
    return text;
}

std::string render_tts(TrialsToSolve tts) {
    // 1-based for humans: solving at index 7 reads "8 trials".
    if (!tts) return "DNF";
    return std::to_string(*tts + 1);
}

std::string frozen_cell(const DomainSummary& summary) {
    if (summary.analyzed == 0) return "n/a";
    return fixed(*summary.frozen_rate * 100.0, 0) + "% (" + std::to_string(summary.frozen_count) +
           "/" + std::to_string(summary.analyzed) + ")";
}

} // namespace

double dnf_rank_value(const RunLog& log) {
    std::size_t max_trials = 0;
    for (const EnvironmentRun& env : log.environments) {
        max_trials = std::max(max_trials, env.trajectories.size());
    }
    return static_cast<double>(max_trials + 1);
}

AnalysisReport analyze_run_log(const RunLog& log, const AnalysisOptions& options) {
    AnalysisReport report;
    report.domain = log.domain;
    report.feedback_kind = log.feedback_kind;
    report.total_environments = static_cast<int>(log.environments.size());
    report.summary.domain = log.domain;

    double rrr_sum = 0.0;
    double dnf_value = dnf_rank_value(log);
    std::vector<double> xs;
    std::vector<double> ys;

    for (const EnvironmentRun& env : log.environments) {
        if (env.reflections.empty()) continue;
        EnvAnalysis entry;
        entry.env_id = env.env_id;
        entry.rrr = rrr(env.reflections, options.similarity_threshold);
        entry.frozen = classify_frozen(entry.rrr, options.frozen_cutoff).frozen;
        entry.trials_to_solve = trials_to_solve(env);
        if (env.gamefile) {
            try {
                TaskSpec spec = parse_gamefile(*env.gamefile);
                entry.mention = mention_report(env, spec);
                entry.pattern = classify_pattern(env, spec);
            } catch (const MalformedGamefile&) {
                // Mention analysis is unavailable without a parsable task
                // identity; the metric columns still apply.
            }
        }
        rrr_sum += entry.rrr.value;
        if (entry.frozen) ++report.summary.frozen_count;
        xs.push_back(entry.rrr.value);
        ys.push_back(entry.trials_to_solve ? static_cast<double>(*entry.trials_to_solve)
                                           : dnf_value);
        report.per_env.push_back(std::move(entry));
    }

    report.summary.analyzed = static_cast<int>(report.per_env.size());
    if (report.summary.analyzed > 0) {
        report.summary.frozen_rate = static_cast<double>(report.summary.frozen_count) /
                                     static_cast<double>(report.summary.analyzed);
        report.summary.avg_rrr = rrr_sum / static_cast<double>(report.summary.analyzed);
    }
    if (xs.size() >= 3) {
        try {
            report.correlation = spearman(xs, ys);
        } catch (const DegenerateInput&) {
            // Constant RRR or uniform outcomes: no rank correlation to report.
        }
    }
    return report;
}

std::string render_analysis_human(const AnalysisReport& report) {
    std::string out;
    out += "Domain: " + display_name(report.domain) + " (" +
           display_name(report.feedback_kind) + " feedback)\n";
    out += "Environments: " + std::to_string(report.total_environments) + " total, " +
           std::to_string(report.summary.analyzed) + " analyzed\n";
    out += "Frozen memories: " + frozen_cell(report.summary) + "\n";
    out += "Average RRR: " +
           (report.summary.avg_rrr ? fixed(*report.summary.avg_rrr, 2) : std::string("n/a")) + "\n";
    out += "RRR vs trials-to-solve (Spearman): " +
           (report.correlation ? fixed(*report.correlation, 3) : std::string("n/a")) + "\n";
    if (report.per_env.empty()) return out;

    std::size_t id_width = 4;
    for (const EnvAnalysis& entry : report.per_env) {
        id_width = std::max(id_width, entry.env_id.size());
    }
    out += "\n" + pad("env", id_width) + "    RRR  frozen  trials  mentions  pattern\n";
    for (const EnvAnalysis& entry : report.per_env) {
        out += pad(entry.env_id, id_width);
        out += pad("  " + fixed(entry.rrr.value, 3), 7);
        out += entry.frozen ? "     yes" : "      no";
        out += pad("  " + render_tts(entry.trials_to_solve), 8);
        if (entry.mention) {
            out += pad("  " + std::to_string(entry.mention->mentioned) + "/" +
                           std::to_string(entry.mention->total),
                       10);
        } else {
            out += pad("  -", 10);
        }
        out += entry.pattern ? to_token(*entry.pattern) : "-";
        out += '\n';
    }
    return out;
}

std::string render_analysis_machine(const AnalysisReport& report) {
    std::string out;
    ordered_json header;
    header["report"] = "analyze";
    header["version"] = 1;
    header["domain"] = to_token(report.domain);
    header["feedback"] = to_token(report.feedback_kind);
    header["total_environments"] = report.total_environments;
    out += header.dump();
    out += '\n';

    for (const EnvAnalysis& entry : report.per_env) {
        ordered_json row;
        row["env_id"] = entry.env_id;
        row["rrr"] = entry.rrr.value;
        row["frozen"] = entry.frozen;
        if (entry.trials_to_solve) {
            row["solved_at_index"] = *entry.trials_to_solve;
        } else {
            row["solved_at_index"] = nullptr;
        }
        if (entry.mention) {
            row["mentions"] = {{"mentioned", entry.mention->mentioned},
                               {"total", entry.mention->total}};
        } else {
            row["mentions"] = nullptr;
        }
        if (entry.pattern) {
            row["pattern"] = to_token(*entry.pattern);
        } else {
            row["pattern"] = nullptr;
        }
        out += row.dump();
        out += '\n';
    }

    ordered_json footer;
    footer["summary"] = true;
    footer["analyzed"] = report.summary.analyzed;
    footer["frozen_count"] = report.summary.frozen_count;
    if (report.summary.frozen_rate) {
        footer["frozen_rate"] = *report.summary.frozen_rate;
    } else {
        footer["frozen_rate"] = nullptr;
    }
    if (report.summary.avg_rrr) {
        footer["avg_rrr"] = *report.summary.avg_rrr;
    } else {
        footer["avg_rrr"] = nullptr;
    }
    if (report.correlation) {
        footer["correlation"] = *report.correlation;
    } else {
        footer["correlation"] = nullptr;
    }
    out += footer.dump();
    out += '\n';
    return out;
}

std::string render_report_row_human(const std::string& label, const AnalysisReport& report) {
    std::string out;
    out += pad(display_name(report.domain), 11);
    out += pad(display_name(report.feedback_kind), 12);
    out += pad(std::to_string(report.summary.analyzed), 10);
    out += pad(frozen_cell(report.summary), 14);
    out += report.summary.avg_rrr ? fixed(*report.summary.avg_rrr, 2) : "n/a";
    out += "  ";
    out += label;
    out += '\n';
    return out;
}

std::string render_report_row_machine(const std::string& label, const AnalysisReport& report) {
    ordered_json row;
    row["file"] = label;
    row["domain"] = to_token(report.domain);
    row["feedback"] = to_token(report.feedback_kind);
    row["analyzed"] = report.summary.analyzed;
    row["frozen_count"] = report.summary.frozen_count;
    if (report.summary.frozen_rate) {
        row["frozen_rate"] = *report.summary.frozen_rate;
    } else {
        row["frozen_rate"] = nullptr;
    }
    if (report.summary.avg_rrr) {
        row["avg_rrr"] = *report.summary.avg_rrr;
    } else {
        row["avg_rrr"] = nullptr;
    }
    if (report.correlation) {
        row["correlation"] = *report.correlation;
    } else {
        row["correlation"] = nullptr;
    }
    return row.dump() + "\n";
}

} // namespace confaudit
