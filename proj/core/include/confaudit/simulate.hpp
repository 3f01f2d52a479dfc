#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "confaudit/confab.hpp"
#include "confaudit/log_model.hpp"
#include "confaudit/metrics.hpp"

namespace confaudit {

enum class SimFeedback { Binary, Extracted };

struct SimConfig {
    int n_envs = 10;
    int max_trials = 10;
    double confab_strength = 0.0; // probability a memory substitutes the task
    SimFeedback feedback_mode = SimFeedback::Binary;
    std::uint64_t seed = 0;
};

struct SimWorld {
    std::vector<std::string> objects;
    std::vector<std::string> receptacles;
    TaskSpec target;
    std::string object_location; // receptacle actually holding the target
};

struct SweepPoint {
    double strength = 0.0;
    DomainSummary summary;
    double mean_trials_to_solve = 0.0; // 1-based trials; DNF counts max_trials + 1
};

/// splitmix64 of (base + (index + 1) * phi64 + stream * theta64): the fixed
/// mixing function behind every derived seed, so environments are
/// independent and reproducible in isolation.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

/// Deterministic world composition for one environment.
SimWorld make_sim_world(std::uint64_t env_seed);

/// Generates a synthetic run log. Identical configs produce identical
/// logs. Environment i draws everything from mix_seed(seed, stream, i),
/// including the confabulation coin, so the confabulated set at strength
/// s is a superset of the set at any s' < s for a fixed seed.
///
/// Script per environment: trial 0 fails while probing a wrong location.
/// Binary feedback with a confabulated coin leaves the agent rewriting
/// near-copies of the wrong-task reflection until the budget runs out
/// (DNF); otherwise the reflection names the true task and trial 1
/// succeeds. Extracted feedback always quotes the trajectory's first
/// no-effect failure and the true task line, so trial 1 succeeds.
RunLog simulate(const SimConfig& config);

/// Runs simulate once per strength (same base seed; per-environment
/// sub-seeds are derived inside simulate).
std::vector<SweepPoint> sweep(const SimConfig& base, std::span<const double> strengths);

} // namespace confaudit
