#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confaudit {

/// Base class for all library errors. Catching this catches everything
/// confaudit throws deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A run-log line that does not satisfy the schema. `line` is 1-based
/// (line 1 is the header record).
class MalformedRecord : public Error {
public:
    MalformedRecord(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateEnvironment : public Error {
public:
    explicit DuplicateEnvironment(const std::string& env_id)
        : Error("duplicate environment: " + env_id) {}
};

/// trials_to_solve on an env record contradicts the recorded trajectory
/// outcomes.
class InconsistentOutcome : public Error {
public:
    InconsistentOutcome(const std::string& env_id, const std::string& detail)
        : Error("environment " + env_id + ": " + detail) {}
};

class TaskLineMissing : public Error {
public:
    TaskLineMissing() : Error("no task line: first observation lacks the marker and task_line is empty") {}
};

/// Similarity inputs must already be in normalized form (lowercase,
/// single-spaced, trimmed).
class NotNormalized : public Error {
public:
    explicit NotNormalized(const std::string& which)
        : Error("input not normalized: " + which) {}
};

class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& reason) : Error(reason) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& reason) : Error(reason) {}
};

class MalformedGamefile : public Error {
public:
    explicit MalformedGamefile(const std::string& name)
        : Error("malformed gamefile name: " + name) {}
};

class EmptyMemory : public Error {
public:
    explicit EmptyMemory(const std::string& env_id)
        : Error("environment " + env_id + " has no reflections") {}
};

class UnknownEnvironment : public Error {
public:
    explicit UnknownEnvironment(const std::string& env_id)
        : Error("unknown environment: " + env_id) {}
};

class UnknownTrial : public Error {
public:
    UnknownTrial(const std::string& env_id, int trial)
        : Error("environment " + env_id + " has no trial " + std::to_string(trial)) {}
};

} // namespace confaudit
