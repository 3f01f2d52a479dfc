#include "confaudit/simulate.hpp"

#include <stdexcept>

#include "confaudit/feedback.hpp"

namespace confaudit {

namespace {

constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kTheta = 0xD1B54A32D192ED03ull;

// Seed streams. The confab coin gets its own stream so the coin for
// environment i depends only on (seed, i), never on the strength: raising
// the strength can only add confabulated environments.
constexpr std::uint64_t kEnvStream = 1;
constexpr std::uint64_t kWorldStream = 2;
constexpr std::uint64_t kCoinStream = 3;

std::uint64_t splitmix64(std::uint64_t z) {
    z += kPhi;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += kPhi;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

const std::vector<std::string>& object_pool() {
    static const std::vector<std::string> pool = {"Mug",    "SoapBar",    "Book",
                                                  "Tomato", "Pencil",     "Watch",
                                                  "AlarmClock", "CreditCard"};
    return pool;
}

const std::vector<std::string>& receptacle_pool() {
    static const std::vector<std::string> pool = {"CoffeeMachine", "Shelf",  "Microwave",
                                                  "DeskLamp",      "Safe",   "Drawer",
                                                  "SideTable",     "GarbageCan"};
    return pool;
}

const std::vector<std::string>& family_pool() {
    static const std::vector<std::string> pool = {
        "look_at_obj_in_light",          "pick_clean_then_place_in_recep",
        "pick_and_place_simple",         "pick_cool_then_place_in_recep",
        "pick_heat_then_place_in_recep", "pick_two_obj_and_place"};
    return pool;
}

std::string lower_concat(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c);
    }
    return out;
}

std::string task_line_for(const std::string& family, const std::string& object,
                          const std::string& receptacle) {
    std::string obj = lower_concat(object);
    std::string recep = lower_concat(receptacle);
    if (family == "look_at_obj_in_light") return "examine the " + obj + " with the " + recep + ".";
    if (family == "pick_clean_then_place_in_recep") return "put a clean " + obj + " in " + recep + ".";
    if (family == "pick_cool_then_place_in_recep") return "put a cool " + obj + " in " + recep + ".";
    if (family == "pick_heat_then_place_in_recep") return "put a hot " + obj + " in " + recep + ".";
    if (family == "pick_two_obj_and_place") return "put two " + obj + " in " + recep + ".";
    return "put a " + obj + " in " + recep + ".";
}

Trajectory probe_trajectory(const std::string& task_line, const std::string& object,
                            const std::string& wrong_location) {
    std::string obj = lower_concat(object);
    std::string loc = lower_concat(wrong_location);
    Trajectory traj;
    traj.trial = 0;
    traj.task_line = task_line;
    traj.outcome = Outcome::Failure;
    traj.steps = {
        {0, "go to " + loc + " 1", "You arrive at " + loc + " 1."},
        {1, "take " + obj + " 1 from " + loc + " 1", "Nothing happens."},
        {2, "examine " + loc + " 1", "There is nothing useful on the " + loc + " 1."},
    };
    return traj;
}

Trajectory confab_trajectory(int trial, const std::string& task_line,
                             const std::string& decoy_object, const std::string& decoy_location) {
    std::string obj = lower_concat(decoy_object);
    std::string loc = lower_concat(decoy_location);
    Trajectory traj;
    traj.trial = trial;
    traj.task_line = task_line;
    traj.outcome = Outcome::Failure;
    traj.steps = {
        {0, "go to " + loc + " 1", "You arrive at " + loc + " 1."},
        {1, "take " + obj + " 1 from " + loc + " 1", "Nothing happens."},
        {2, "put " + obj + " 1 in " + loc + " 1", "Nothing happens."},
    };
    return traj;
}

Trajectory solving_trajectory(int trial, const std::string& task_line, const std::string& object,
                              const std::string& location, const std::string& receptacle) {
    std::string obj = lower_concat(object);
    std::string loc = lower_concat(location);
    std::string recep = lower_concat(receptacle);
    Trajectory traj;
    traj.trial = trial;
    traj.task_line = task_line;
    traj.outcome = Outcome::Success;
    traj.steps = {
        {0, "go to " + loc + " 1", "You arrive at " + loc + " 1."},
        {1, "take " + obj + " 1 from " + loc + " 1",
         "You pick up the " + obj + " 1 from the " + loc + " 1."},
        {2, "go to " + recep + " 1", "You arrive at " + recep + " 1."},
        {3, "put " + obj + " 1 in " + recep + " 1",
         "You put the " + obj + " 1 in the " + recep + " 1."},
    };
    return traj;
}

} // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(base + kPhi * (index + 1) + kTheta * stream);
}

SimWorld make_sim_world(std::uint64_t env_seed) {
    Rng rng(mix_seed(env_seed, kWorldStream, 0));
    SimWorld world;
    world.objects = object_pool();
    world.receptacles = receptacle_pool();

    const auto& objects = world.objects;
    const auto& receptacles = world.receptacles;
    world.target.task_type = family_pool()[rng.below(family_pool().size())];
    world.target.object = objects[rng.below(objects.size())];
    world.target.receptacle = receptacles[rng.below(receptacles.size())];
    world.target.variant = 0;

    // The object sits somewhere other than the goal receptacle so every
    // solve requires the fetch-then-place script.
    do {
        world.object_location = receptacles[rng.below(receptacles.size())];
    } while (world.object_location == world.target.receptacle);
    return world;
}

RunLog simulate(const SimConfig& config) {
    if (config.n_envs < 1) throw std::invalid_argument("n_envs must be positive");
    if (config.max_trials < 2) throw std::invalid_argument("max_trials must be at least 2");
    if (!(config.confab_strength >= 0.0 && config.confab_strength <= 1.0)) {
        throw std::invalid_argument("confab_strength must be in [0, 1]");
    }

    RunLog log;
    log.domain = Domain::Synthetic;
    log.feedback_kind =
        config.feedback_mode == SimFeedback::Binary ? FeedbackKind::Binary : FeedbackKind::UnitTests;

    for (int i = 0; i < config.n_envs; ++i) {
        std::uint64_t env_seed = mix_seed(config.seed, kEnvStream, static_cast<std::uint64_t>(i));
        SimWorld world = make_sim_world(env_seed);
        world.target.variant = i;
        Rng script(env_seed);
        double coin = Rng(mix_seed(env_seed, kCoinStream, 0)).unit();
        bool confabulated = coin < config.confab_strength;

        const std::string& object = world.target.object;
        const std::string& receptacle = world.target.receptacle;
        const std::string& true_location = world.object_location;
        std::string task_line =
            task_line_for(world.target.task_type, object, receptacle);

        std::string decoy_object;
        do {
            decoy_object = world.objects[script.below(world.objects.size())];
        } while (decoy_object == object);
        std::string decoy_location;
        do {
            decoy_location = world.receptacles[script.below(world.receptacles.size())];
        } while (decoy_location == true_location || decoy_location == receptacle);

        EnvironmentRun env;
        env.env_id = "env_" + std::to_string(i);
        env.gamefile = world.target.to_name();
        env.trajectories.push_back(probe_trajectory(task_line, object, decoy_location));

        std::string obj_l = lower_concat(object);
        std::string recep_l = lower_concat(receptacle);
        std::string loc_l = lower_concat(true_location);
        std::string decoy_obj_l = lower_concat(decoy_object);
        std::string decoy_loc_l = lower_concat(decoy_location);

        if (config.feedback_mode == SimFeedback::Extracted) {
            // Grounded reflections quote the first no-effect failure and
            // restate the true task, so the memory never drifts.
            auto events = extract_alfworld(env.trajectories[0]);
            std::string quoted_action = events.empty() ? "(none)" : events[0].action;
            std::string quoted_response = events.empty() ? "(none)" : events[0].response;
            env.reflections.push_back(
                {0, "Failed action: '" + quoted_action + "' -> '" + quoted_response +
                        "'. Your task is to: " + task_line + " I will go to the " + loc_l +
                        " 1, take the " + obj_l + " 1, and put it in the " + recep_l + " 1."});
            env.trajectories.push_back(
                solving_trajectory(1, task_line, object, true_location, receptacle));
            env.trials_to_solve = 1;
        } else if (confabulated) {
            std::string base = "I could not find the " + decoy_obj_l +
                               " 1 anywhere. The task must be to put the " + decoy_obj_l +
                               " 1 in the " + decoy_loc_l + " 1, so next time I will go straight to the " +
                               decoy_loc_l + " 1, take the " + decoy_obj_l +
                               " 1, and place it inside.";
            env.reflections.push_back({0, base});
            for (int t = 1; t < config.max_trials; ++t) {
                env.trajectories.push_back(
                    confab_trajectory(t, task_line, decoy_object, decoy_location));
                env.reflections.push_back({t, base + " (trial " + std::to_string(t) + ")"});
            }
        } else {
            env.reflections.push_back(
                {0, "I went to the " + decoy_loc_l + " 1 but the " + obj_l +
                        " 1 was not there. Next trial I will go to the " + loc_l +
                        " 1, take the " + obj_l + " 1, and put it in the " + recep_l + " 1."});
            env.trajectories.push_back(
                solving_trajectory(1, task_line, object, true_location, receptacle));
            env.trials_to_solve = 1;
        }

        log.environments.push_back(std::move(env));
    }
    return log;
}

std::vector<SweepPoint> sweep(const SimConfig& base, std::span<const double> strengths) {
    std::vector<SweepPoint> points;
    points.reserve(strengths.size());
    for (double strength : strengths) {
        SimConfig config = base;
        config.confab_strength = strength;
        RunLog log = simulate(config);

        SweepPoint point;
        point.strength = strength;
        point.summary = summarize_domain(log);
        double total = 0.0;
        for (const EnvironmentRun& env : log.environments) {
            TrialsToSolve tts = trials_to_solve(env);
            total += tts ? static_cast<double>(*tts + 1)
                         : static_cast<double>(config.max_trials + 1);
        }
        point.mean_trials_to_solve = total / static_cast<double>(log.environments.size());
        points.push_back(std::move(point));
    }
    return points;
}

} // namespace confaudit
