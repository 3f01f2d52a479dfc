#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "confaudit/log_model.hpp"

namespace confaudit {

/// Line-oriented run-log format. Line 1 is a header record carrying
/// schema_version (must be 1), domain, and feedback; every other line is
/// an object with a `kind` discriminator in {env, trajectory, step,
/// reflection}. Text payloads are standard JSON strings; the loader trims
/// trailing newline characters from them and otherwise keeps bytes intact.
/// Throws MalformedRecord, DuplicateEnvironment, or InconsistentOutcome.
RunLog parse_run_log(std::istream& in);

RunLog load_run_log(const std::filesystem::path& path);

/// Canonical serialization: header, then per environment the env record,
/// each trajectory followed by its steps, then reflections. Deterministic
/// bytes; load(serialize(x)) is structurally identical to x.
std::string serialize_run_log(const RunLog& log);

void save_run_log(const RunLog& log, const std::filesystem::path& path);

} // namespace confaudit
