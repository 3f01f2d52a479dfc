// confaudit: audit reflective-agent run logs for memory confabulation.
//
// Exit codes: 0 success, 1 partial failure (report), 2 malformed input,
// 3 unknown environment or trial.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "confaudit/analysis.hpp"
#include "confaudit/errors.hpp"
#include "confaudit/feedback.hpp"
#include "confaudit/log_io.hpp"
#include "confaudit/metrics.hpp"
#include "confaudit/prompt.hpp"
#include "confaudit/simulate.hpp"

namespace {

using namespace confaudit;

constexpr int kExitPartial = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitUnknown = 3;

std::string default_format() {
    const char* env = std::getenv("CONFAUDIT_FORMAT");
    if (env != nullptr) {
        std::string value(env);
        if (value == "machine" || value == "human") return value;
    }
    return "human";
}

const EnvironmentRun& find_env(const RunLog& log, const std::string& env_id) {
    for (const EnvironmentRun& env : log.environments) {
        if (env.env_id == env_id) return env;
    }
    throw UnknownEnvironment(env_id);
}

const Trajectory& find_trial(const EnvironmentRun& env, int trial) {
    if (trial < 0 || trial >= static_cast<int>(env.trajectories.size())) {
        throw UnknownTrial(env.env_id, trial);
    }
    return env.trajectories[static_cast<std::size_t>(trial)];
}

std::vector<FailureEvent> extract_for(const RunLog& log, const EnvironmentRun& env,
                                      const Trajectory& trajectory, const std::string& mode,
                                      int loop_threshold, int max_events) {
    bool humaneval = mode == "humaneval" ||
                     (mode == "auto" && log.domain == Domain::Humaneval);
    if (!humaneval) return extract_alfworld(trajectory, loop_threshold, max_events);
    std::string text;
    for (const Step& step : trajectory.steps) {
        if (!text.empty()) text += '\n';
        text += step.observation;
    }
    (void)env;
    return extract_humaneval(text);
}

std::string render_events_human(const std::vector<FailureEvent>& events) {
    if (events.empty()) return "No grounded failure signals extracted.\n";
    std::string out;
    int n = 1;
    for (const FailureEvent& event : events) {
        out += std::to_string(n++) + ". Action: " + event.action + "\n";
        out += "   Response: " + event.response + "\n";
        out += "   Kind: " + to_token(event.kind) + " (count " + std::to_string(event.count) +
               ", first at step " + std::to_string(event.step_index) + ")\n";
    }
    return out;
}

std::string render_events_machine(const std::string& env_id, int trial,
                                  const std::vector<FailureEvent>& events) {
    nlohmann::ordered_json header;
    header["report"] = "extract";
    header["version"] = 1;
    header["env_id"] = env_id;
    header["trial"] = trial;
    std::string out = header.dump() + "\n";
    for (const FailureEvent& event : events) {
        nlohmann::ordered_json row;
        row["kind"] = to_token(event.kind);
        row["action"] = event.action;
        row["response"] = event.response;
        row["step_index"] = event.step_index;
        row["count"] = event.count;
        out += row.dump() + "\n";
    }
    return out;
}

int exit_code_for(const Error& error) {
    if (dynamic_cast<const UnknownEnvironment*>(&error) != nullptr ||
        dynamic_cast<const UnknownTrial*>(&error) != nullptr) {
        return kExitUnknown;
    }
    return kExitMalformed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Audit reflective-agent run logs for memory confabulation"};
    app.require_subcommand(1);

    std::string format = default_format();
    double threshold = kSimilarityThreshold;
    double frozen_cutoff = kFrozenCutoff;
    int loop_threshold = kLoopThreshold;
    int max_events = kMaxEvents;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Per-environment repetition audit for one log");
    std::string analyze_path;
    analyze->add_option("log", analyze_path, "run log file")->required();
    analyze->add_option("--threshold", threshold, "similarity threshold for repetition")
        ->check(CLI::Range(0.0001, 1.0))
        ->capture_default_str();
    analyze->add_option("--frozen-cutoff", frozen_cutoff, "RRR at or above this is frozen")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    analyze->add_option("--format", format, "human or machine")
        ->check(CLI::IsMember({"human", "machine"}));

    // extract
    auto* extract = app.add_subcommand("extract", "Grounded failure signals for one trial");
    std::string extract_path, extract_env, domain_mode = "auto";
    int extract_trial = 0;
    extract->add_option("log", extract_path, "run log file")->required();
    extract->add_option("--env", extract_env, "environment id")->required();
    extract->add_option("--trial", extract_trial, "0-based trial index")->required();
    extract->add_option("--domain-mode", domain_mode, "auto, alfworld, or humaneval")
        ->check(CLI::IsMember({"auto", "alfworld", "humaneval"}))
        ->capture_default_str();
    extract->add_option("--loop-threshold", loop_threshold, "consecutive repeats that count as a loop")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
    extract->add_option("--max-events", max_events, "cap on reported events")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    extract->add_option("--format", format, "human or machine")
        ->check(CLI::IsMember({"human", "machine"}));

    // prompt
    auto* prompt = app.add_subcommand("prompt", "Render a reflection prompt for one trial");
    std::string prompt_path, prompt_env, prompt_mode;
    int prompt_trial = 0;
    prompt->add_option("log", prompt_path, "run log file")->required();
    prompt->add_option("--env", prompt_env, "environment id")->required();
    prompt->add_option("--trial", prompt_trial, "0-based trial index")->required();
    prompt->add_option("--mode", prompt_mode, "enriched or grounded")
        ->check(CLI::IsMember({"enriched", "grounded"}))
        ->required();
    prompt->add_option("--domain-mode", domain_mode, "auto, alfworld, or humaneval")
        ->check(CLI::IsMember({"auto", "alfworld", "humaneval"}));
    prompt->add_option("--loop-threshold", loop_threshold, "consecutive repeats that count as a loop")
        ->check(CLI::Range(2, 1000));
    prompt->add_option("--max-events", max_events, "cap on reported events")
        ->check(CLI::Range(1, 1000));

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic run log");
    SimConfig sim_config;
    std::string sim_feedback = "binary", sim_out;
    simulate_cmd->add_option("--envs", sim_config.n_envs, "number of environments")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    simulate_cmd->add_option("--max-trials", sim_config.max_trials, "trial budget per environment")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
    simulate_cmd->add_option("--confab", sim_config.confab_strength,
                             "probability a memory substitutes the task")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    simulate_cmd->add_option("--feedback", sim_feedback, "binary or extracted")
        ->check(CLI::IsMember({"binary", "extracted"}))
        ->capture_default_str();
    simulate_cmd->add_option("--seed", sim_config.seed, "base RNG seed")->capture_default_str();
    simulate_cmd->add_option("--out", sim_out, "output path")->required();

    // report
    auto* report = app.add_subcommand("report", "Cross-domain summary over several logs");
    std::vector<std::string> report_paths;
    report->add_option("logs", report_paths, "run log files")->required();
    report->add_option("--format", format, "human or machine")
        ->check(CLI::IsMember({"human", "machine"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            RunLog log = load_run_log(analyze_path);
            AnalysisOptions options{threshold, frozen_cutoff};
            AnalysisReport result = analyze_run_log(log, options);
            std::cout << (format == "machine" ? render_analysis_machine(result)
                                              : render_analysis_human(result));
            return 0;
        }

        if (*extract) {
            RunLog log = load_run_log(extract_path);
            const EnvironmentRun& env = find_env(log, extract_env);
            const Trajectory& trajectory = find_trial(env, extract_trial);
            auto events =
                extract_for(log, env, trajectory, domain_mode, loop_threshold, max_events);
            std::cout << (format == "machine"
                              ? render_events_machine(extract_env, extract_trial, events)
                              : render_events_human(events));
            return 0;
        }

        if (*prompt) {
            RunLog log = load_run_log(prompt_path);
            const EnvironmentRun& env = find_env(log, prompt_env);
            const Trajectory& trajectory = find_trial(env, prompt_trial);
            if (prompt_mode == "grounded") {
                std::cout << build_grounded_prompt(render_scenario(trajectory));
                return 0;
            }
            PromptPayload payload;
            payload.task_line = extract_task_line(trajectory);
            payload.failures =
                extract_for(log, env, trajectory, domain_mode, loop_threshold, max_events);
            payload.scenario = render_scenario(trajectory);
            std::vector<std::string> earlier;
            for (const Reflection& r : env.reflections) {
                if (r.trial < prompt_trial) earlier.push_back(r.text);
            }
            payload.previous_plans = truncate_previous_plans(earlier);
            std::cout << build_enriched_prompt(payload);
            return 0;
        }

        if (*simulate_cmd) {
            sim_config.feedback_mode =
                sim_feedback == "extracted" ? SimFeedback::Extracted : SimFeedback::Binary;
            RunLog log = simulate(sim_config);
            save_run_log(log, sim_out);
            std::cout << "seed: " << sim_config.seed << "\n";
            std::cout << "wrote " << log.environments.size() << " environments to " << sim_out
                      << "\n";
            return 0;
        }

        if (*report) {
            std::string out;
            bool machine = format == "machine";
            int failures = 0;
            if (machine) {
                nlohmann::ordered_json header;
                header["report"] = "report";
                header["version"] = 1;
                header["files"] = report_paths.size();
                out += header.dump() + "\n";
            } else {
                out += "Domain     Feedback    Analyzed  Frozen        Avg RRR\n";
            }
            for (const std::string& path : report_paths) {
                try {
                    RunLog log = load_run_log(path);
                    AnalysisReport result = analyze_run_log(log, AnalysisOptions{threshold, frozen_cutoff});
                    out += machine ? render_report_row_machine(path, result)
                                   : render_report_row_human(path, result);
                } catch (const Error& error) {
                    ++failures;
                    std::cerr << path << ": " << error.what() << "\n";
                }
            }
            std::cout << out;
            return failures == 0 ? 0 : kExitPartial;
        }
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return exit_code_for(error);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitMalformed;
    }
    return 0;
}
