#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "confaudit/errors.hpp"
#include "confaudit/feedback.hpp"
#include "confaudit/log_model.hpp"
#include "confaudit/prompt.hpp"

using namespace confaudit;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

const char* kScenario =
    "> go to diningtable 1\n"
    "On the diningtable 1, you see a lettuce 1.\n"
    "> take lettuce 1 from diningtable 1\n"
    "Nothing happens.";

PromptPayload golden_payload() {
    PromptPayload payload;
    payload.task_line = "put a clean lettuce in diningtable.";
    payload.failures.push_back(
        {FailureKind::NoEffect, "take lettuce 1 from diningtable 1", "Nothing happens.", 2, 2});
    payload.failures.push_back(
        {FailureKind::Loop, "go to shelf 1", "You arrive at shelf 1.", 5, 3});
    payload.scenario = kScenario;
    payload.previous_plans = {
        "go to sinkbasin 1, clean the lettuce, then put it on the diningtable",
        "take the lettuce from the diningtable and wash it before placing it back",
    };
    return payload;
}

} // namespace

TEST_CASE("enriched prompt matches the golden bytes") {
    std::string golden = read_file(CONFAUDIT_TEMPLATE_DIR "/enriched_golden.txt");
    CHECK(build_enriched_prompt(golden_payload()) == golden);
}

TEST_CASE("empty failure list collapses to the sentinel line") {
    PromptPayload payload = golden_payload();
    payload.failures.clear();
    payload.previous_plans.clear();
    std::string golden = read_file(CONFAUDIT_TEMPLATE_DIR "/enriched_no_failures_golden.txt");
    std::string got = build_enriched_prompt(payload);
    CHECK(got == golden);
    CHECK(got.find("SPECIFIC FAILURES") == std::string::npos);
    CHECK(got.find("  Attempt") == std::string::npos);
}

TEST_CASE("grounded prompt matches the golden bytes") {
    std::string golden = read_file(CONFAUDIT_TEMPLATE_DIR "/grounded_golden.txt");
    std::string got = build_grounded_prompt(kScenario);
    CHECK(got == golden);
    std::size_t failed = got.find("FAILED STEP:");
    std::size_t cause = got.find("ROOT CAUSE:");
    std::size_t plan = got.find("NEW PLAN:");
    REQUIRE(failed != std::string::npos);
    REQUIRE(cause != std::string::npos);
    REQUIRE(plan != std::string::npos);
    CHECK(failed < cause);
    CHECK(cause < plan);
}

TEST_CASE("single no-effect failure renders the two field lines verbatim") {
    PromptPayload payload;
    payload.task_line = "put a cool mug in coffeemachine.";
    payload.failures.push_back(
        {FailureKind::NoEffect, "put mug 1 in coffeemachine 1", "Nothing happens.", 4, 1});
    payload.scenario = "> put mug 1 in coffeemachine 1\nNothing happens.";
    std::string got = build_enriched_prompt(payload);
    CHECK(got.find("    Action you took : put mug 1 in coffeemachine 1\n") != std::string::npos);
    CHECK(got.find("    Environment said: Nothing happens.\n") != std::string::npos);
    CHECK(got.find("  Failure 1 (NoEffect):\n") != std::string::npos);
}

TEST_CASE("plan truncation keeps only the actionable tail") {
    std::vector<std::string> plans = {
        "ROOT CAUSE: the mug was never taken. NEW PLAN: go to shelf 1",
        "FAILED STEP:\n  take mug\nROOT CAUSE:\n  wrong room\nNEW PLAN:\n  go to kitchen, take mug 1",
        "New plan: open the drawer before reaching inside",
        "just walk to the desk and grab the pencil",
    };
    auto out = truncate_previous_plans(plans);
    REQUIRE(out.size() == 4);
    CHECK(out[0] == "go to shelf 1");
    CHECK(out[1] == "go to kitchen, take mug 1");
    CHECK(out[2] == "open the drawer before reaching inside");
    CHECK(out[3] == "just walk to the desk and grab the pencil");
}

TEST_CASE("analysis headers without a plan marker are cut away") {
    std::vector<std::string> plans = {
        "try the cabinet first\nFAILED STEP: took the wrong item\nmore analysis",
        "ROOT CAUSE: bad route\nwhatever follows",
    };
    auto out = truncate_previous_plans(plans);
    CHECK(out[0] == "try the cabinet first");
    CHECK(out[1] == ""); // nothing actionable before the analysis header
}

TEST_CASE("scenario rendering and trailing newline trim") {
    Trajectory t;
    t.trial = 0;
    t.task_line = "task";
    t.steps.push_back({0, "go to desk 1", "You arrive at desk 1.\n"});
    t.steps.push_back({1, "look", "The desk is empty."});
    CHECK(render_scenario(t) ==
          "> go to desk 1\nYou arrive at desk 1.\n\n> look\nThe desk is empty.");
    Trajectory empty;
    CHECK(render_scenario(empty) == "");
}

TEST_CASE("task line extraction prefers the in-trace marker") {
    Trajectory t;
    t.trial = 0;
    t.task_line = "fallback line";
    t.steps.push_back({0, "look",
                       "You are in a room. Your task is to: put a mug in the sink.  \nA shelf is here."});
    CHECK(extract_task_line(t) == "put a mug in the sink.");

    Trajectory no_marker;
    no_marker.trial = 0;
    no_marker.task_line = "put two books in the drawer.";
    no_marker.steps.push_back({0, "look", "Nothing of note."});
    CHECK(extract_task_line(no_marker) == "put two books in the drawer.");

    Trajectory nothing;
    nothing.trial = 0;
    nothing.task_line = "   ";
    nothing.steps.push_back({0, "look", "Nothing of note."});
    CHECK_THROWS_AS(extract_task_line(nothing), TaskLineMissing);
}
