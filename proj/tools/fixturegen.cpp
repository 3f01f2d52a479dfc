// Regenerates the shipped fixture logs under fixtures/ and asserts every
// aggregate they exist to reproduce. A drifted library breaks this tool
// before it breaks the test suite, and the asserts double as a readable
// statement of what the fixtures encode.
//
// The construction is exact, not sampled: a reflection either copies an
// earlier one (base text plus an " (attempt N)" tag, similarity well above
// the 0.85 threshold) or comes from a bank of pairwise-dissimilar novel
// sentences, so every environment's repetition rate is a known rational.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "confaudit/analysis.hpp"
#include "confaudit/confab.hpp"
#include "confaudit/log_io.hpp"
#include "confaudit/metrics.hpp"
#include "confaudit/similarity.hpp"

namespace {

using namespace confaudit;

void check(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "fixturegen: check failed: " << what << "\n";
        std::exit(1);
    }
}

std::string lower(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') c += 32;
    }
    return s;
}

// Human task sentence for a parsed gamefile, same phrasing the simulator uses.
std::string task_sentence(const TaskSpec& spec) {
    std::string obj = lower(spec.object);
    std::string recep = lower(spec.receptacle);
    if (spec.task_type == "look_at_obj_in_light") return "examine the " + obj + " with the " + recep + ".";
    if (spec.task_type == "pick_two_obj_and_place") return "put two " + obj + " in " + recep + ".";
    if (spec.task_type == "pick_clean_then_place_in_recep") return "put a clean " + obj + " in " + recep + ".";
    if (spec.task_type == "pick_heat_then_place_in_recep") return "put a hot " + obj + " in " + recep + ".";
    if (spec.task_type == "pick_cool_then_place_in_recep") return "put a cool " + obj + " in " + recep + ".";
    return "put a " + obj + " in " + recep + ".";
}

Trajectory household_trial(int trial, const std::string& task, bool success) {
    Trajectory t;
    t.trial = trial;
    t.task_line = task;
    t.outcome = success ? Outcome::Success : Outcome::Failure;
    t.steps.push_back({0, "look", "You are in the middle of a room. Your task is to: " + task});
    if (success) {
        t.steps.push_back({1, "put it where the task says", "You complete the task."});
    } else {
        t.steps.push_back({1, "inventory", "You are carrying nothing."});
    }
    return t;
}

Trajectory coding_trial(int trial, const std::string& task, bool success) {
    Trajectory t;
    t.trial = trial;
    t.task_line = task;
    t.outcome = success ? Outcome::Success : Outcome::Failure;
    t.steps.push_back({0, "submit solution",
                       success ? "All hidden tests passed." : "The hidden tests rejected this solution."});
    return t;
}

// Base text followed by count-1 tagged near-copies: every index past 0
// repeats, so the repetition rate is exactly 1.
std::vector<std::string> frozen_memory(const std::string& base, int count) {
    std::vector<std::string> memory{base};
    for (int i = 1; i < count; ++i) {
        memory.push_back(base + " (attempt " + std::to_string(i + 1) + ")");
    }
    return memory;
}

// repeats interleaved novel/copy pairs, then the leftover novels: exactly
// `repeats` indices have an earlier match, all others are first sightings.
std::vector<std::string> paired_memory(const std::vector<std::string>& novels, int repeats) {
    check(static_cast<int>(novels.size()) >= repeats, "paired_memory needs novels >= repeats");
    std::vector<std::string> memory;
    for (int i = 0; i < repeats; ++i) {
        memory.push_back(novels[static_cast<std::size_t>(i)]);
        memory.push_back(novels[static_cast<std::size_t>(i)] + " (attempt " +
                         std::to_string(memory.size() + 1) + ")");
    }
    for (std::size_t i = static_cast<std::size_t>(repeats); i < novels.size(); ++i) {
        memory.push_back(novels[i]);
    }
    return memory;
}

std::vector<std::string> pick(const std::vector<std::string>& bank, int offset, int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(bank[static_cast<std::size_t>(offset + i) % bank.size()]);
    }
    return out;
}

struct EnvPlan {
    std::string env_id;
    std::optional<std::string> gamefile;
    std::vector<std::string> memory;
    bool solved = false;
    std::string task;
    int expected_repeats = 0;
};

EnvironmentRun realize(const EnvPlan& plan, bool household) {
    EnvironmentRun env;
    env.env_id = plan.env_id;
    env.gamefile = plan.gamefile;
    int trials = static_cast<int>(plan.memory.size());
    for (int t = 0; t < trials; ++t) {
        env.trajectories.push_back(household ? household_trial(t, plan.task, false)
                                             : coding_trial(t, plan.task, false));
        env.reflections.push_back({t, plan.memory[static_cast<std::size_t>(t)]});
    }
    if (plan.solved) {
        env.trajectories.push_back(household ? household_trial(trials, plan.task, true)
                                             : coding_trial(trials, plan.task, true));
        env.trials_to_solve = trials;
    }

    RrrResult result = rrr(env.reflections);
    int denom = trials - 1;
    check(static_cast<int>(result.repeated_indices.size()) == plan.expected_repeats,
          plan.env_id + ": repeat count " + std::to_string(result.repeated_indices.size()) +
              " != " + std::to_string(plan.expected_repeats));
    check(result.value == static_cast<double>(plan.expected_repeats) / denom,
          plan.env_id + ": RRR not the planned rational");
    return env;
}

void check_bank_dissimilar(const std::vector<std::string>& bank, const std::string& name) {
    for (std::size_t i = 0; i < bank.size(); ++i) {
        for (std::size_t j = i + 1; j < bank.size(); ++j) {
            double sim = ratcliff_obershelp(normalize(bank[i]), normalize(bank[j]));
            check(sim < kSimilarityThreshold,
                  name + " bank entries " + std::to_string(i) + "," + std::to_string(j) +
                      " too similar (" + std::to_string(sim) + ")");
        }
    }
    for (const std::string& base : bank) {
        double sim = ratcliff_obershelp(normalize(base), normalize(base + " (attempt 12)"));
        check(sim >= 0.87, name + " tagged copy fell near the threshold");
    }
}

// Frozen household environments: id, gamefile, reflection count, and the
// confabulated theme every reflection restates. Reflections never name the
// gamefile object; the last three name the true receptacle and nothing else.
struct FrozenSpec {
    int id;
    const char* gamefile;
    int size;
    const char* base;
    ConfabPattern expected;
};

const FrozenSpec kFrozen[] = {
    {4, "pick_two_obj_and_place-Book-None-Drawer-424", 3,
     "I need to clean the plate in the sink and set it on the counter before the timer runs out.",
     ConfabPattern::FullTaskSubstitution},
    {20, "pick_two_obj_and_place-SoapBar-None-GarbageCan-7", 6,
     "The cloth must be rinsed under the faucet and hung on the towel rack beside the mirror.",
     ConfabPattern::FullTaskSubstitution},
    {22, "pick_cool_then_place_in_recep-Mug-None-CoffeeMachine-10", 14,
     "I keep trying to heat the tomato in the microwave, so I will slice it first and heat it again.",
     ConfabPattern::FullTaskSubstitution},
    {31, "pick_and_place_simple-Pencil-None-Shelf-303", 7,
     "My plan is to take the remote control to the armchair and examine it under the floor lamp.",
     ConfabPattern::FullTaskSubstitution},
    {35, "pick_and_place_simple-Watch-None-Safe-29", 13,
     "I should search the kitchen cabinets for a spoon and place it on the dining table next time.",
     ConfabPattern::FullTaskSubstitution},
    {40, "pick_cool_then_place_in_recep-Tomato-None-SideTable-55", 6,
     "I will warm the cup of water on the stove burner and carry it to the desk in the study.",
     ConfabPattern::FullTaskSubstitution},
    {41, "pick_heat_then_place_in_recep-Potato-None-Fridge-102", 13,
     "The lettuce should be chilled before serving, so I will find a cooler and wait by the counter.",
     ConfabPattern::FullTaskSubstitution},
    {56, "pick_heat_then_place_in_recep-Bread-None-CounterTop-88", 2,
     "I must toast the bagel and butter it at the kitchen island before bringing it to the table.",
     ConfabPattern::FullTaskSubstitution},
    {77, "look_at_obj_in_light-AlarmClock-None-DeskLamp-308", 6,
     "I should inspect the vase under the tall floor light near the sofa and report the pattern on it.",
     ConfabPattern::FullTaskSubstitution},
    {80, "look_at_obj_in_light-CD-None-FloorLamp-12", 5,
     "I will study the statue under the lamp on the desk and note the inscription on the base.",
     ConfabPattern::FullTaskSubstitution},
    {82, "pick_clean_then_place_in_recep-Lettuce-None-DiningTable-19", 7,
     "The apple needs washing in the sink before I put it on the wooden bench by the window.",
     ConfabPattern::FullTaskSubstitution},
    {86, "pick_clean_then_place_in_recep-Spatula-None-Drawer-5", 4,
     "I will grab the ladle from the pot rack and lay it on the counter next to the stove.",
     ConfabPattern::FullTaskSubstitution},
    {97, "pick_and_place_simple-CreditCard-None-Dresser-21", 8,
     "Next time I will look for the keys on the coffee table and put them in the bowl by the door.",
     ConfabPattern::FullTaskSubstitution},
    {106, "pick_and_place_simple-KeyChain-None-Ottoman-213", 6,
     "Something small is hiding near the ottoman, so I will lift the cushion and check under it.",
     ConfabPattern::ObjectSubstitutionOnly},
    {113, "pick_heat_then_place_in_recep-Egg-None-GarbageCan-31", 9,
     "I should heat the leftover rice and then throw the wrapper into the garbage can when done.",
     ConfabPattern::ObjectSubstitutionOnly},
    {118, "pick_clean_then_place_in_recep-SoapBottle-None-Toilet-411", 12,
     "After wiping the sink I will clean the toilet rim and leave the sponge on its tank lid.",
     ConfabPattern::ObjectSubstitutionOnly},
};

const std::vector<std::string> kHouseholdNovel = {
    "I opened the cabinet above the sink but found only plates, so I will try the pantry next.",
    "The knife was in the second compartment all along; next time I will check there before searching.",
    "Heating failed because the microwave door was open; I must close it before pressing start.",
    "I wasted three turns walking between rooms; a better route is kitchen, hall, then bedroom.",
    "The examine action only works when I stand at the desk, so I will move there first.",
    "My earlier plan ignored the locked cupboard; I should look for the key on the hook.",
    "Two objects are required for this task and I only carried one; I will make two trips.",
    "The faucet must be turned on before rinsing, otherwise the clean action does nothing.",
    "I placed the item on the wrong surface; the goal names a specific target, not any table.",
    "Cooling requires the item to sit inside for a turn; I removed it too early last time.",
    "The lamp switch is separate from the examine step; I need to toggle it and then look.",
    "I kept taking the duplicate from the same spot; the second one is in the other room.",
};

const std::vector<std::string> kCodingNovel = {
    "The loop stops one element early; the range should extend to the final index inclusive.",
    "I forgot to handle the empty list, which makes the max call raise before any comparison runs.",
    "Integer division truncates toward zero here; the task wants floor semantics for negatives.",
    "The pattern misses uppercase vowels, so mixed-case words are counted wrong in the tally.",
    "Sorting must be stable on the second key; I should sort by value then by original index.",
    "My base case returns zero but the recurrence needs one, which shifts every later term.",
    "String slicing dropped the last character because the end bound is exclusive here.",
    "The set removes duplicates too early; counting must happen before deduplication, not after.",
    "I compared floats with equality; an epsilon tolerance fixes the failing boundary cases.",
    "The helper mutates its argument list, so the second call sees leftover state from the first.",
    "Modulo of a negative number surprised me; adding the modulus before reducing fixes signs.",
    "I built the result with append inside the wrong loop, duplicating each row three times.",
    "The prime check treats one as prime; starting the divisor scan at two is not enough.",
    "Rounding half values goes to even by default; the task expects away-from-zero rounding.",
    "My stack never pops on closing brackets, so every nested case reports an imbalance.",
    "The accumulator starts at the first element, but an initial value of zero is required.",
    "I reversed the string before filtering; the filter must run first to keep the order.",
    "Dictionary iteration order saved me locally but the judge shuffles keys; sort them.",
    "The memo table is shared across calls, which leaks values between separate test cases.",
    "Unicode whitespace is not matched by a plain space split; I need a broader split rule.",
    "The window length is off by one: size k spans indices i through i plus k minus one.",
    "The gcd loop swaps operands in the wrong order, so it never terminates for some pairs.",
    "I return inside the for loop on the first match, but all matches must be collected.",
    "Casting to int floors negatives the wrong way for this task; use an explicit floor.",
    "The palindrome check ignores case but the task is case sensitive; drop the lowering.",
    "My binary search uses the wrong midpoint bias and loops forever on two-element ranges.",
    "Appending to the list I am iterating grows it forever; iterate over a copy instead.",
    "The separator joins every character because I passed a string where a list was expected.",
    "The exponent grows faster than my loop bound; compute the bound from the input, not a constant.",
    "I swallowed the conversion error, hiding the malformed row instead of skipping just that row.",
    "The judge expects a new list, but I sorted in place and returned the sort's null result.",
    "Zero is even but my parity check starts at one, so the zero input takes the odd branch.",
    "The nested comprehension shadows the outer variable, pairing each item with itself only.",
    "The threshold comparison should be strict; equal elements must not count as close pairs.",
    "I formatted with the plain string call but the expected output shows quoted representations.",
    "Slicing with a negative step skips the first element unless the stop is left open.",
};

RunLog build_household() {
    RunLog log;
    log.domain = Domain::Alfworld;
    log.feedback_kind = FeedbackKind::Binary;

    std::vector<int> ids;
    for (int i = 0; i <= 38; ++i) ids.push_back(i);
    for (int i : {40, 41, 56, 77, 80, 82, 86, 97, 106, 113, 118}) ids.push_back(i);

    int plain = 0; // position among environments that are not frozen
    for (int id : ids) {
        const FrozenSpec* frozen = nullptr;
        for (const FrozenSpec& spec : kFrozen) {
            if (spec.id == id) frozen = &spec;
        }
        EnvPlan plan;
        plan.env_id = "env_" + std::to_string(id);
        if (frozen != nullptr) {
            plan.gamefile = frozen->gamefile;
            plan.memory = frozen_memory(frozen->base, frozen->size);
            plan.solved = false;
            plan.task = task_sentence(parse_gamefile(frozen->gamefile));
            plan.expected_repeats = frozen->size - 1;
        } else if (plain < 17) {
            plan.memory = paired_memory(pick(kHouseholdNovel, plain * 3, 8), 6);
            plan.solved = true;
            plan.task = "put a statue on the sidetable.";
            plan.expected_repeats = 6;
            ++plain;
        } else {
            plan.memory = paired_memory(pick(kHouseholdNovel, plain * 3, 9), 7);
            plan.solved = true;
            plan.task = "put a statue on the sidetable.";
            plan.expected_repeats = 7;
            ++plain;
        }
        log.environments.push_back(realize(plan, true));
    }
    check(plain == 34, "household non-frozen count");
    return log;
}

RunLog build_coding() {
    RunLog log;
    log.domain = Domain::Humaneval;
    log.feedback_kind = FeedbackKind::UnitTests;

    struct CodingFrozen {
        int id;
        bool solved;
        const char* base;
    };
    const CodingFrozen frozen[] = {
        {32, false,
         "The polynomial root search diverges; I will bisect on a sign change instead of stepping blindly."},
        {77, true,
         "My cube root check casts to float and loses precision; I should round and compare integers."},
        {84, false,
         "I keep returning the binary string without summing digits first; sum then convert next time."},
        {87, true,
         "Row order is wrong in my result; sort rows ascending and columns descending inside each row."},
    };
    const std::vector<int> plain_ids = {0,  3,  7,  12, 18, 21, 25, 33, 39, 44,
                                        50, 58, 61, 66, 72, 79, 88, 93, 99};

    std::vector<int> ids = plain_ids;
    for (const CodingFrozen& f : frozen) ids.push_back(f.id);
    std::sort(ids.begin(), ids.end());

    int plain = 0;
    for (int id : ids) {
        const CodingFrozen* f = nullptr;
        for (const CodingFrozen& candidate : frozen) {
            if (candidate.id == id) f = &candidate;
        }
        EnvPlan plan;
        plan.env_id = "HumanEval/" + std::to_string(id);
        plan.task = "Complete the function and pass the hidden unit tests.";
        if (f != nullptr) {
            plan.memory = frozen_memory(f->base, 9);
            plan.solved = f->solved;
            plan.expected_repeats = 8;
        } else {
            plan.memory = paired_memory(pick(kCodingNovel, plain * 5, 32), 30);
            plan.solved = true;
            plan.expected_repeats = 30;
            ++plain;
        }
        log.environments.push_back(realize(plan, false));
    }
    check(plain == 19, "coding non-frozen count");
    return log;
}

void check_household_mentions(const RunLog& log) {
    int mentioned_total = 0;
    int reflection_total = 0;
    for (const FrozenSpec& spec : kFrozen) {
        std::string env_id = "env_" + std::to_string(spec.id);
        const EnvironmentRun* env = nullptr;
        for (const EnvironmentRun& candidate : log.environments) {
            if (candidate.env_id == env_id) env = &candidate;
        }
        check(env != nullptr, env_id + " missing");
        TaskSpec parsed = parse_gamefile(*env->gamefile);
        check(parsed.to_name() == *env->gamefile, env_id + ": gamefile does not round trip");
        MentionReport report = mention_report(*env, parsed);
        mentioned_total += report.mentioned;
        reflection_total += report.total;
        check(report.mentioned == 0, env_id + ": a reflection names the true object");
        check(classify_pattern(*env, parsed) == spec.expected, env_id + ": wrong pattern");
        if (spec.id == 22) {
            check(report.total == 14, "env_22 reflection count");
        }
    }
    check(mentioned_total == 0 && reflection_total == 121,
          "frozen mention roll-up is not 0/121");
}

void check_aggregates(const RunLog& log, int analyzed, int frozen, double target_avg,
                      const std::string& name) {
    AnalysisReport report = analyze_run_log(log);
    check(report.summary.analyzed == analyzed, name + ": analyzed count");
    check(report.summary.frozen_count == frozen, name + ": frozen count");
    check(report.summary.avg_rrr.has_value(), name + ": no average");
    double avg = *report.summary.avg_rrr;
    check(avg > target_avg - 0.01 && avg < target_avg + 0.01,
          name + ": average repetition rate " + std::to_string(avg) + " misses " +
              std::to_string(target_avg));
    if (log.domain == Domain::Alfworld) {
        check(report.correlation.has_value() && *report.correlation >= 0.8,
              name + ": repetition/outcome correlation below 0.8");
    }
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    check(static_cast<bool>(out), "cannot open " + path.string());
    out << bytes;
    check(static_cast<bool>(out), "short write to " + path.string());
}

void emit(const RunLog& log, const std::filesystem::path& path) {
    std::string bytes = serialize_run_log(log);
    write_file(path, bytes);
    RunLog reloaded = load_run_log(path);
    check(serialize_run_log(reloaded) == bytes, path.string() + ": reload is not byte-stable");
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);

    check_bank_dissimilar(kHouseholdNovel, "household");
    check_bank_dissimilar(kCodingNovel, "coding");

    RunLog household = build_household();
    check(household.environments.size() == 50, "household environment count");
    check_household_mentions(household);
    check_aggregates(household, 50, 16, 0.64, "household");
    emit(household, dir / "alfworld_reference_runs.jsonl");

    RunLog coding = build_coding();
    check(coding.environments.size() == 23, "coding environment count");
    check_aggregates(coding, 23, 4, 0.59, "coding");
    emit(coding, dir / "humaneval_reference_runs.jsonl");

    std::string names;
    for (const FrozenSpec& spec : kFrozen) {
        names += spec.gamefile;
        names += '\n';
    }
    write_file(dir / "gamefile_names.txt", names);

    AnalysisReport hh = analyze_run_log(household);
    AnalysisReport cc = analyze_run_log(coding);
    std::printf("alfworld: %d envs, frozen %d/%d, avg RRR %.6f, correlation %.4f\n",
                hh.total_environments, hh.summary.frozen_count, hh.summary.analyzed,
                *hh.summary.avg_rrr, *hh.correlation);
    std::printf("humaneval: %d envs, frozen %d/%d, avg RRR %.6f\n", cc.total_environments,
                cc.summary.frozen_count, cc.summary.analyzed, *cc.summary.avg_rrr);
    std::printf("all checks passed; wrote %s\n", dir.string().c_str());
    return 0;
}
