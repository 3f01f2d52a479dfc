#include "confaudit/log_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "confaudit/errors.hpp"

namespace confaudit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool blank(std::string_view s) {
    for (char c : s) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') return false;
    }
    return true;
}

// Trailing newline characters are presentation noise from upstream log
// writers; interior whitespace and case are meaningful and kept.
std::string trim_trailing_newlines(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

std::string require_text(const json& record, const char* field, std::size_t line) {
    if (!record.contains(field) || !record[field].is_string()) {
        throw MalformedRecord(line, std::string(field) + " must be a string");
    }
    std::string value = trim_trailing_newlines(record[field].get<std::string>());
    if (blank(value)) throw MalformedRecord(line, std::string(field) + " is empty");
    return value;
}

int require_index(const json& record, const char* field, std::size_t line) {
    if (!record.contains(field) || !record[field].is_number_integer()) {
        throw MalformedRecord(line, std::string(field) + " must be an integer");
    }
    auto value = record[field].get<std::int64_t>();
    if (value < 0 || value > 1'000'000) throw MalformedRecord(line, std::string(field) + " out of range");
    return static_cast<int>(value);
}

struct PendingReflection {
    Reflection reflection;
    std::size_t line = 0;
};

class Parser {
public:
    RunLog parse(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line_no_ == 1) {
                read_header(line);
                continue;
            }
            read_record(line);
        }
        if (line_no_ == 0) throw MalformedRecord(1, "missing header record");
        close_env();
        return std::move(log_);
    }

private:
    void read_header(const std::string& line) {
        json header = json::parse(line, nullptr, false);
        if (header.is_discarded() || !header.is_object()) {
            throw MalformedRecord(1, "header is not an object");
        }
        if (!header.contains("schema_version") || !header["schema_version"].is_number_integer() ||
            header["schema_version"].get<int>() != 1) {
            throw MalformedRecord(1, "schema_version must be 1");
        }
        auto domain = domain_from_token(require_text(header, "domain", 1));
        if (!domain) throw MalformedRecord(1, "unknown domain token");
        auto feedback = feedback_from_token(require_text(header, "feedback", 1));
        if (!feedback) throw MalformedRecord(1, "unknown feedback token");
        log_.domain = *domain;
        log_.feedback_kind = *feedback;
    }

    void read_record(const std::string& line) {
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw MalformedRecord(line_no_, "record is not an object");
        }
        if (!record.contains("kind") || !record["kind"].is_string()) {
            throw MalformedRecord(line_no_, "missing kind discriminator");
        }
        std::string kind = record["kind"].get<std::string>();
        if (kind == "env") {
            read_env(record);
        } else if (kind == "trajectory") {
            read_trajectory(record);
        } else if (kind == "step") {
            read_step(record);
        } else if (kind == "reflection") {
            read_reflection(record);
        } else {
            throw MalformedRecord(line_no_, "unknown kind: " + kind);
        }
    }

    void read_env(const json& record) {
        close_env();
        EnvironmentRun env;
        env.env_id = require_text(record, "env_id", line_no_);
        if (!seen_ids_.insert(env.env_id).second) throw DuplicateEnvironment(env.env_id);
        if (record.contains("gamefile")) {
            if (!record["gamefile"].is_string()) {
                throw MalformedRecord(line_no_, "gamefile must be a string");
            }
            env.gamefile = require_text(record, "gamefile", line_no_);
        }
        if (record.contains("trials_to_solve")) {
            env.trials_to_solve = require_index(record, "trials_to_solve", line_no_);
        }
        current_ = std::move(env);
        have_env_ = true;
        pending_.clear();
    }

    void read_trajectory(const json& record) {
        if (!have_env_) throw MalformedRecord(line_no_, "trajectory outside an environment");
        close_trajectory();
        Trajectory traj;
        traj.trial = require_index(record, "trial", line_no_);
        if (traj.trial != static_cast<int>(current_.trajectories.size())) {
            throw MalformedRecord(line_no_, "trajectory trials must be contiguous from 0");
        }
        traj.task_line = require_text(record, "task_line", line_no_);
        if (!record.contains("outcome") || !record["outcome"].is_string()) {
            throw MalformedRecord(line_no_, "outcome must be a string");
        }
        auto outcome = outcome_from_token(record["outcome"].get<std::string>());
        if (!outcome) throw MalformedRecord(line_no_, "unknown outcome token");
        traj.outcome = *outcome;
        current_.trajectories.push_back(std::move(traj));
        in_trajectory_ = true;
        trajectory_line_ = line_no_;
    }

    void read_step(const json& record) {
        if (!have_env_ || !in_trajectory_) throw MalformedRecord(line_no_, "step outside a trajectory");
        Trajectory& traj = current_.trajectories.back();
        Step step;
        step.index = require_index(record, "index", line_no_);
        if (step.index != static_cast<int>(traj.steps.size())) {
            throw MalformedRecord(line_no_, "step indices must be contiguous from 0");
        }
        step.action = require_text(record, "action", line_no_);
        step.observation = require_text(record, "observation", line_no_);
        traj.steps.push_back(std::move(step));
    }

    void read_reflection(const json& record) {
        if (!have_env_) throw MalformedRecord(line_no_, "reflection outside an environment");
        close_trajectory();
        PendingReflection pending;
        pending.reflection.trial = require_index(record, "trial", line_no_);
        pending.reflection.text = require_text(record, "text", line_no_);
        pending.line = line_no_;
        if (!pending_.empty() && pending.reflection.trial <= pending_.back().reflection.trial) {
            throw MalformedRecord(line_no_, "reflection trials must be strictly increasing");
        }
        pending_.push_back(std::move(pending));
    }

    void close_trajectory() {
        if (!in_trajectory_) return;
        const Trajectory& traj = current_.trajectories.back();
        if (traj.steps.empty() && traj.outcome == Outcome::Failure) {
            throw MalformedRecord(trajectory_line_, "failure trajectory has no steps");
        }
        in_trajectory_ = false;
    }

    void close_env() {
        if (!have_env_) return;
        close_trajectory();
        for (const PendingReflection& p : pending_) {
            int trial = p.reflection.trial;
            if (trial >= static_cast<int>(current_.trajectories.size())) {
                throw MalformedRecord(p.line, "reflection references trial " + std::to_string(trial) +
                                                  " but the environment has " +
                                                  std::to_string(current_.trajectories.size()) +
                                                  " trajectories");
            }
            if (current_.trajectories[static_cast<std::size_t>(trial)].outcome != Outcome::Failure) {
                throw MalformedRecord(p.line, "reflection references a non-failure trial");
            }
            current_.reflections.push_back(p.reflection);
        }
        validate_trials_to_solve();
        log_.environments.push_back(std::move(current_));
        current_ = EnvironmentRun{};
        have_env_ = false;
        pending_.clear();
    }

    void validate_trials_to_solve() {
        int first_success = -1;
        for (std::size_t i = 0; i < current_.trajectories.size(); ++i) {
            if (current_.trajectories[i].outcome == Outcome::Success) {
                first_success = static_cast<int>(i);
                break;
            }
        }
        if (current_.trials_to_solve) {
            if (*current_.trials_to_solve != first_success) {
                throw InconsistentOutcome(current_.env_id,
                                          "trials_to_solve does not match the first success");
            }
        } else if (first_success >= 0) {
            throw InconsistentOutcome(current_.env_id,
                                      "success recorded but trials_to_solve is absent");
        }
    }

    RunLog log_;
    EnvironmentRun current_;
    std::vector<PendingReflection> pending_;
    std::set<std::string> seen_ids_;
    std::size_t line_no_ = 0;
    std::size_t trajectory_line_ = 0;
    bool have_env_ = false;
    bool in_trajectory_ = false;
};

} // namespace

std::string to_token(Domain d) {
    switch (d) {
    case Domain::Alfworld: return "alfworld";
    case Domain::Webshop: return "webshop";
    case Domain::Hotpotqa: return "hotpotqa";
    case Domain::Humaneval: return "humaneval";
    case Domain::Synthetic: return "synthetic";
    }
    return "synthetic";
}

std::string to_token(FeedbackKind f) {
    return f == FeedbackKind::Binary ? "binary" : "unit_tests";
}

std::string to_token(Outcome o) {
    return o == Outcome::Success ? "success" : "failure";
}

std::optional<Domain> domain_from_token(const std::string& token) {
    if (token == "alfworld") return Domain::Alfworld;
    if (token == "webshop") return Domain::Webshop;
    if (token == "hotpotqa") return Domain::Hotpotqa;
    if (token == "humaneval") return Domain::Humaneval;
    if (token == "synthetic") return Domain::Synthetic;
    return std::nullopt;
}

std::optional<FeedbackKind> feedback_from_token(const std::string& token) {
    if (token == "binary") return FeedbackKind::Binary;
    if (token == "unit_tests") return FeedbackKind::UnitTests;
    return std::nullopt;
}

std::optional<Outcome> outcome_from_token(const std::string& token) {
    if (token == "success") return Outcome::Success;
    if (token == "failure") return Outcome::Failure;
    return std::nullopt;
}

std::string display_name(Domain d) {
    switch (d) {
    case Domain::Alfworld: return "ALFWorld";
    case Domain::Webshop: return "WebShop";
    case Domain::Hotpotqa: return "HotpotQA";
    case Domain::Humaneval: return "HumanEval";
    case Domain::Synthetic: return "Synthetic";
    }
    return "Synthetic";
}

std::string display_name(FeedbackKind f) {
    return f == FeedbackKind::Binary ? "Binary" : "Unit tests";
}

RunLog parse_run_log(std::istream& in) {
    Parser parser;
    return parser.parse(in);
}

RunLog load_run_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return parse_run_log(in);
}

std::string serialize_run_log(const RunLog& log) {
    std::string out;
    ordered_json header;
    header["schema_version"] = 1;
    header["domain"] = to_token(log.domain);
    header["feedback"] = to_token(log.feedback_kind);
    out += header.dump();
    out += '\n';

    for (const EnvironmentRun& env : log.environments) {
        ordered_json e;
        e["kind"] = "env";
        e["env_id"] = env.env_id;
        if (env.gamefile) e["gamefile"] = *env.gamefile;
        if (env.trials_to_solve) e["trials_to_solve"] = *env.trials_to_solve;
        out += e.dump();
        out += '\n';
        for (const Trajectory& traj : env.trajectories) {
            ordered_json t;
            t["kind"] = "trajectory";
            t["trial"] = traj.trial;
            t["task_line"] = traj.task_line;
            t["outcome"] = to_token(traj.outcome);
            out += t.dump();
            out += '\n';
            for (const Step& step : traj.steps) {
                ordered_json s;
                s["kind"] = "step";
                s["index"] = step.index;
                s["action"] = step.action;
                s["observation"] = step.observation;
                out += s.dump();
                out += '\n';
            }
        }
        for (const Reflection& r : env.reflections) {
            ordered_json j;
            j["kind"] = "reflection";
            j["trial"] = r.trial;
            j["text"] = r.text;
            out += j.dump();
            out += '\n';
        }
    }
    return out;
}

void save_run_log(const RunLog& log, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << serialize_run_log(log);
}

} // namespace confaudit
