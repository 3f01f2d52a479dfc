#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "confaudit/errors.hpp"
#include "confaudit/log_io.hpp"

using namespace confaudit;

namespace {

RunLog parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_run_log(in);
}

const char* kHeader = R"({"schema_version":1,"domain":"alfworld","feedback":"binary"})";

std::string lines(std::initializer_list<const char*> rows) {
    std::string out;
    for (const char* row : rows) {
        out += row;
        out += '\n';
    }
    return out;
}

RunLog sample_log() {
    RunLog log;
    log.domain = Domain::Alfworld;
    log.feedback_kind = FeedbackKind::Binary;

    EnvironmentRun solved;
    solved.env_id = "env_0";
    solved.gamefile = "pick_and_place_simple-Mug-None-Shelf-3";
    Trajectory fail;
    fail.trial = 0;
    fail.task_line = "put a mug in shelf.";
    fail.steps.push_back({0, "go to shelf 1", "You arrive at shelf 1."});
    fail.steps.push_back({1, "take mug 1 from shelf 1", "Nothing happens."});
    fail.outcome = Outcome::Failure;
    Trajectory win;
    win.trial = 1;
    win.task_line = "put a mug in shelf.";
    win.steps.push_back({0, "take mug 1 from sidetable 1", "You pick up the mug 1."});
    win.steps.push_back({1, "put mug 1 in shelf 1", "You put the mug 1 on the shelf 1."});
    win.outcome = Outcome::Success;
    solved.trajectories = {fail, win};
    solved.reflections = {{0, "I reached for the mug on the wrong surface; it sits on the sidetable."}};
    solved.trials_to_solve = 1;

    EnvironmentRun stuck;
    stuck.env_id = "env_1";
    Trajectory only;
    only.trial = 0;
    only.task_line = "examine the book with the desklamp.";
    only.steps.push_back({0, "look", "You see a desk."});
    only.outcome = Outcome::Failure;
    stuck.trajectories = {only};
    stuck.reflections = {{0, "the lamp was never switched on\nso the examine step cannot work"}};

    log.environments = {solved, stuck};
    return log;
}

} // namespace

TEST_CASE("serialize then parse is structurally lossless and byte-stable") {
    RunLog log = sample_log();
    std::string bytes = serialize_run_log(log);
    RunLog back = parse_text(bytes);

    CHECK(back.domain == Domain::Alfworld);
    CHECK(back.feedback_kind == FeedbackKind::Binary);
    REQUIRE(back.environments.size() == 2);
    const EnvironmentRun& solved = back.environments[0];
    CHECK(solved.env_id == "env_0");
    REQUIRE(solved.gamefile.has_value());
    CHECK(*solved.gamefile == "pick_and_place_simple-Mug-None-Shelf-3");
    CHECK(solved.trials_to_solve == 1);
    REQUIRE(solved.trajectories.size() == 2);
    CHECK(solved.trajectories[0].steps[1].observation == "Nothing happens.");
    CHECK(solved.trajectories[1].outcome == Outcome::Success);
    REQUIRE(solved.reflections.size() == 1);

    const EnvironmentRun& stuck = back.environments[1];
    CHECK_FALSE(stuck.gamefile.has_value());
    CHECK_FALSE(stuck.trials_to_solve.has_value());
    // Interior newlines survive the round trip byte for byte.
    CHECK(stuck.reflections[0].text == "the lamp was never switched on\nso the examine step cannot work");

    CHECK(serialize_run_log(back) == bytes);
}

TEST_CASE("file save and load round trip") {
    RunLog log = sample_log();
    std::filesystem::path path =
        std::filesystem::temp_directory_path() / "confaudit_io_test.jsonl";
    save_run_log(log, path);
    RunLog back = load_run_log(path);
    CHECK(serialize_run_log(back) == serialize_run_log(log));
    std::filesystem::remove(path);
}

TEST_CASE("missing or bad header") {
    CHECK_THROWS_AS(parse_text(""), MalformedRecord);
    CHECK_THROWS_AS(parse_text("\n"), MalformedRecord);
    CHECK_THROWS_AS(parse_text("not json\n"), MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({R"({"domain":"alfworld","feedback":"binary"})"})),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({R"({"schema_version":2,"domain":"alfworld","feedback":"binary"})"})),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({R"({"schema_version":1,"domain":"mars","feedback":"binary"})"})),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({R"({"schema_version":1,"domain":"alfworld","feedback":"vibes"})"})),
                    MalformedRecord);
    try {
        parse_text("not json\n");
        FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("unknown kinds and stray records") {
    CHECK_THROWS_AS(parse_text(lines({kHeader, R"({"kind":"mystery"})"})), MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({kHeader, R"({"no_kind":true})"})), MalformedRecord);
    // Trajectory, step, reflection each require an open scope.
    CHECK_THROWS_AS(
        parse_text(lines({kHeader, R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})"})),
        MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({kHeader, R"({"kind":"step","index":0,"action":"a","observation":"o"})"})),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({kHeader, R"({"kind":"reflection","trial":0,"text":"t"})"})),
                    MalformedRecord);
}

TEST_CASE("duplicate environment ids are rejected") {
    CHECK_THROWS_AS(parse_text(lines({kHeader,
                                      R"({"kind":"env","env_id":"env_0"})",
                                      R"({"kind":"env","env_id":"env_0"})"})),
                    DuplicateEnvironment);
}

TEST_CASE("trial and step indices must be contiguous from zero") {
    CHECK_THROWS_AS(parse_text(lines({kHeader,
                                      R"({"kind":"env","env_id":"env_0"})",
                                      R"({"kind":"trajectory","trial":1,"task_line":"t","outcome":"failure"})",
                                      R"({"kind":"step","index":0,"action":"a","observation":"o"})"})),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({kHeader,
                                      R"({"kind":"env","env_id":"env_0"})",
                                      R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                                      R"({"kind":"step","index":1,"action":"a","observation":"o"})"})),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_text(lines({kHeader,
                                      R"({"kind":"env","env_id":"env_0"})",
                                      R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                                      R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                                      R"({"kind":"step","index":2,"action":"a","observation":"o"})"})),
                    MalformedRecord);
}

TEST_CASE("a failure trajectory needs at least one step") {
    CHECK_THROWS_AS(parse_text(lines({kHeader,
                                      R"({"kind":"env","env_id":"env_0"})",
                                      R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})"})),
                    MalformedRecord);
}

TEST_CASE("reflections must point at earlier failed trials") {
    // Reflection names trial 3 but the environment only has 2 trajectories.
    std::string text = lines({kHeader,
                              R"({"kind":"env","env_id":"env_0"})",
                              R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                              R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                              R"({"kind":"trajectory","trial":1,"task_line":"t","outcome":"failure"})",
                              R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                              R"({"kind":"reflection","trial":3,"text":"late"})"});
    try {
        parse_text(text);
        FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
        CHECK(e.line() == 7); // blamed on the reflection, not the close
    }

    // Reflection on a successful trial.
    CHECK_THROWS_AS(
        parse_text(lines({kHeader,
                          R"({"kind":"env","env_id":"env_0","trials_to_solve":0})",
                          R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"success"})",
                          R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                          R"({"kind":"reflection","trial":0,"text":"why reflect on a win"})"})),
        MalformedRecord);

    // Trials must strictly increase.
    CHECK_THROWS_AS(
        parse_text(lines({kHeader,
                          R"({"kind":"env","env_id":"env_0"})",
                          R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                          R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                          R"({"kind":"reflection","trial":0,"text":"first"})",
                          R"({"kind":"reflection","trial":0,"text":"again"})"})),
        MalformedRecord);
}

TEST_CASE("trials_to_solve must match the recorded outcomes") {
    // Claims solved but no success exists.
    CHECK_THROWS_AS(
        parse_text(lines({kHeader,
                          R"({"kind":"env","env_id":"env_0","trials_to_solve":1})",
                          R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                          R"({"kind":"step","index":0,"action":"a","observation":"o"})"})),
        InconsistentOutcome);
    // Success exists but the field is absent.
    CHECK_THROWS_AS(
        parse_text(lines({kHeader,
                          R"({"kind":"env","env_id":"env_0"})",
                          R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"success"})",
                          R"({"kind":"step","index":0,"action":"a","observation":"o"})"})),
        InconsistentOutcome);
    // Points at the wrong trial.
    CHECK_THROWS_AS(
        parse_text(lines({kHeader,
                          R"({"kind":"env","env_id":"env_0","trials_to_solve":1})",
                          R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"success"})",
                          R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                          R"({"kind":"trajectory","trial":1,"task_line":"t","outcome":"failure"})",
                          R"({"kind":"step","index":0,"action":"a","observation":"o"})"})),
        InconsistentOutcome);
    // Matching claim parses.
    RunLog ok = parse_text(lines({kHeader,
                                  R"({"kind":"env","env_id":"env_0","trials_to_solve":0})",
                                  R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"success"})",
                                  R"({"kind":"step","index":0,"action":"a","observation":"o"})"}));
    CHECK(ok.environments[0].trials_to_solve == 0);
}

TEST_CASE("text payloads drop trailing newlines only") {
    RunLog log = parse_text(lines({kHeader,
                                   R"({"kind":"env","env_id":"env_0"})",
                                   R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                                   R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                                   R"({"kind":"reflection","trial":0,"text":"keep\ninner\n\n"})"}));
    CHECK(log.environments[0].reflections[0].text == "keep\ninner");

    // Whitespace-only text is as bad as missing text.
    CHECK_THROWS_AS(parse_text(lines({kHeader,
                                      R"({"kind":"env","env_id":"env_0"})",
                                      R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                                      R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                                      R"({"kind":"reflection","trial":0,"text":"\n\n"})"})),
                    MalformedRecord);
}

TEST_CASE("carriage returns are tolerated at line ends") {
    std::string text = lines({kHeader,
                              R"({"kind":"env","env_id":"env_0"})",
                              R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                              R"({"kind":"step","index":0,"action":"a","observation":"o"})"});
    std::string crlf;
    for (char c : text) {
        if (c == '\n') crlf += '\r';
        crlf += c;
    }
    RunLog log = parse_text(crlf);
    CHECK(log.environments.size() == 1);
}

TEST_CASE("reflections may interleave with later trajectories") {
    RunLog log = parse_text(lines({kHeader,
                                   R"({"kind":"env","env_id":"env_0"})",
                                   R"({"kind":"trajectory","trial":0,"task_line":"t","outcome":"failure"})",
                                   R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                                   R"({"kind":"reflection","trial":0,"text":"first thoughts"})",
                                   R"({"kind":"trajectory","trial":1,"task_line":"t","outcome":"failure"})",
                                   R"({"kind":"step","index":0,"action":"a","observation":"o"})",
                                   R"({"kind":"reflection","trial":1,"text":"second thoughts"})"}));
    REQUIRE(log.environments[0].reflections.size() == 2);
    CHECK(log.environments[0].reflections[1].text == "second thoughts");
}

TEST_CASE("malformed record reports its line number") {
    std::string text = lines({kHeader,
                              R"({"kind":"env","env_id":"env_0"})",
                              R"(this is not json)"});
    try {
        parse_text(text);
        FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("loading a missing file fails cleanly") {
    CHECK_THROWS_AS(load_run_log("/nonexistent/path/log.jsonl"), Error);
}
