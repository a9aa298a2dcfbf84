#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "ontolearn/cli.hpp"
#include "ontolearn/grading.hpp"
#include "ontolearn/http_service.hpp"
#include "ontolearn/question.hpp"
#include "test_support.hpp"

using namespace ontolearn;
using namespace ontolearn::testing;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args, const cli::Hooks& hooks = {}) {
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(args, out, err, hooks);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

const std::string ag = fixture("data/ontologies/algebra_geometry.json");
const std::string cg = fixture("data/ontologies/computer_graphics.json");

}  // namespace

TEST(CliValidate, ExitCodes) {
    auto r = run({"validate", fixture("sle_chunk.json")});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.out, "");

    r = run({"validate", fixture("empty.json")});
    EXPECT_EQ(r.code, 0);

    r = run({"validate", fixture("cyclic.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("cycle"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find(" -> "), std::string::npos) << r.out;

    r = run({"validate", fixture("malformed.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ParseError"), std::string::npos) << r.err;

    r = run({"validate", fixture("does_not_exist.json")});
    EXPECT_EQ(r.code, 2);
}

TEST(CliValidate, WarningsDoNotFail) {
    TempDir dir;
    std::ofstream(dir.file("orphan.json")) << R"({"discipline_id": "d",
        "chunks": [{"id": "c", "label": "C", "dci": "1"}],
        "objects": [{"id": "o", "category": "Concept", "label": "Loose"}]})";
    const auto r = run({"validate", dir.file("orphan.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("warning: ", 0), 0u) << r.out;
}

TEST(CliGenerate, DeterministicFiles) {
    TempDir dir;
    const auto spec = fixture("generation_spec.json");
    ASSERT_EQ(run({"generate", ag, spec, dir.file("a.json")}).code, 0);
    ASSERT_EQ(run({"generate", ag, spec, dir.file("b.json")}).code, 0);
    EXPECT_EQ(slurp(dir.file("a.json")), slurp(dir.file("b.json")));
    EXPECT_EQ(load_bank(dir.file("a.json")).questions.size(), 20u);

    ASSERT_EQ(run({"generate", ag, spec, dir.file("a.gift"), "--gift"}).code, 0);
    ASSERT_EQ(run({"generate", "--gift", ag, spec, dir.file("b.gift")}).code, 0);
    const auto gift = slurp(dir.file("a.gift"));
    EXPECT_EQ(gift, slurp(dir.file("b.gift")));
    EXPECT_EQ(gift.rfind("// q0001", 0), 0u) << gift.substr(0, 80);
}

TEST(CliGenerate, DeficitNamesTypeAndChunk) {
    TempDir dir;
    std::ofstream(dir.file("spec.json")) << R"({"seed": 1, "counts": {"Mapping": 500}})";
    const auto r = run({"generate", ag, dir.file("spec.json"), dir.file("out.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("InsufficientFacts"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("qtype=Mapping"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("chunk="), std::string::npos) << r.err;
    EXPECT_FALSE(std::filesystem::exists(dir.file("out.json")));
}

TEST(CliCrosslinks, Rows) {
    auto r = run({"crosslinks", ag, cg});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out,
              "algebra_geometry:ag01\tVector\tcomputer_graphics:cg01\tVector\n"
              "algebra_geometry:ag02\tCoordinate System\tcomputer_graphics:cg02\tCoordinate  system \n");

    r = run({"crosslinks", ag, fixture("disjoint.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");

    r = run({"crosslinks", ag, ag});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("SameDiscipline"), std::string::npos);
}

TEST(CliGrade, MatchesLibrary) {
    const auto bank_path = fixture("data/banks/mixed_groups.json");
    auto r = run({"grade", bank_path, fixture("mixed_groups_answers.json"), fixture("mixed_groups_policy.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto bank = load_bank(bank_path);
    const auto report = grade(bank.questions, load_answers(bank, fixture("mixed_groups_answers.json")),
                              load_policy(fixture("mixed_groups_policy.json")));
    const json expected = {{"report", report_to_json(report)}};
    EXPECT_EQ(r.out, expected.dump(2) + "\n");
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["report"]["total"], 65);
    EXPECT_EQ(doc["report"]["passed"], false);

    r = run({"grade", bank_path, fixture("mixed_groups_all_correct.json"), fixture("mixed_groups_policy.json")});
    EXPECT_EQ(json::parse(r.out)["report"]["passed"], true);

    r = run({"grade", bank_path, fixture("empty_answers.json"), fixture("mixed_groups_policy.json")});
    EXPECT_EQ(json::parse(r.out)["report"]["total"], 0);

    r = run({"grade", bank_path, fixture("malformed.json"), fixture("mixed_groups_policy.json")});
    EXPECT_EQ(r.code, 2);
}

TEST(CliUsage, BadArguments) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"grade", "only-one"}).code, 2);
    const auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("crosslinks"), std::string::npos);
}

TEST(CliServe, ServesUntilStopped) {
    TempDir dir;
    copy_data_dir(dir.path() / "data");
    int status = 0;
    json body;
    cli::Hooks hooks;
    hooks.on_listening = [&](HttpService& service, int port) {
        httplib::Client client("127.0.0.1", port);
        if (auto res = client.Get("/ontologies")) {
            status = res->status;
            body = json::parse(res->body);
        }
        service.stop();
    };
    const auto r = run({"serve", "--data-dir", (dir.path() / "data").string(), "--port", "0"}, hooks);
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("listening on 127.0.0.1:", 0), 0u) << r.out;
    EXPECT_EQ(status, 200);
    EXPECT_EQ(body["ontologies"].size(), 2u);
    EXPECT_TRUE(std::filesystem::is_directory(dir.path() / "data/sessions"));
}

TEST(CliServe, EnvironmentFailuresExitTwo) {
    TempDir dir;
    auto r = run({"serve", "--data-dir", dir.file("missing"), "--port", "0"});
    EXPECT_EQ(r.code, 2);

    r = run({"serve", "--data-dir", dir.path().string(), "--port", "0"});  // no ontologies/ or banks/
    EXPECT_EQ(r.code, 2);

    copy_data_dir(dir.path() / "data");
    httplib::Server blocker;
    const int port = blocker.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port, 0);
    r = run({"serve", "--data-dir", (dir.path() / "data").string(), "--port", std::to_string(port)});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("cannot bind"), std::string::npos) << r.err;
}
