#include <gtest/gtest.h>

#include "ontolearn/error.hpp"
#include "ontolearn/grading.hpp"
#include "test_support.hpp"

using namespace ontolearn;
using namespace ontolearn::testing;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an ontolearn::Error";
    return ErrorKind::IoError;
}

std::vector<AnswerRecord> all_correct(const std::vector<Question>& bank) {
    std::vector<AnswerRecord> out;
    for (const auto& q : bank) out.push_back(score_answer(q, q.answer_key));
    return out;
}

}  // namespace

TEST(ScoreAnswer, SignedPoints) {
    const auto q = make_question("q", "1", QuestionType::SA, 7);
    EXPECT_EQ(score_answer(q, q.answer_key).signed_points, 7);
    EXPECT_TRUE(score_answer(q, q.answer_key).correct);
    EXPECT_EQ(score_answer(q, wrong_answer(q)).signed_points, -7);
    EXPECT_EQ(score_answer(q, std::nullopt).signed_points, 0);
    EXPECT_FALSE(score_answer(q, std::nullopt).correct);
}

// Hand-summed oracle: 1.1 = 20+20+20, 1.2 = 10-5+10, 2.1 = 5-10-5.
TEST(Grade, MixedGroupsExample) {
    const auto bank = load_bank(fixture("data/banks/mixed_groups.json"));
    const auto answers = load_answers(bank, fixture("mixed_groups_answers.json"));
    const auto report = grade(bank.questions, answers, load_policy(fixture("mixed_groups_policy.json")));
    EXPECT_EQ(report.group_scores.at("1.1"), 60);
    EXPECT_EQ(report.group_scores.at("1.2"), 15);
    EXPECT_EQ(report.group_scores.at("2.1"), -10);
    EXPECT_EQ(report.total, 65);
    EXPECT_EQ(report.failed_dcis, std::vector<std::string>{"2.1"});
    EXPECT_FALSE(report.passed);
}

TEST(Grade, NoAnswers) {
    const auto bank = load_bank(fixture("data/banks/mixed_groups.json"));
    GradingPolicy policy;
    auto report = grade(bank.questions, {}, policy);
    EXPECT_EQ(report.total, 0);
    EXPECT_TRUE(report.failed_dcis.empty());
    EXPECT_FALSE(report.passed);
    EXPECT_EQ(report.group_scores.size(), 3u);

    policy.pass_mark = 0;
    EXPECT_TRUE(grade(bank.questions, {}, policy).passed);
}

TEST(Grade, UnansweredPenalty) {
    const auto q = make_question("q", "1", QuestionType::TF, 5);
    GradingPolicy policy;
    policy.unanswered_penalty = true;
    policy.pass_mark = -100;
    const auto report = grade({q}, {}, policy);
    EXPECT_EQ(report.total, -5);
    EXPECT_EQ(report.failed_dcis, std::vector<std::string>{"1"});
}

TEST(Grade, AllCorrectUniformWeight) {
    std::vector<Question> bank;
    for (int i = 0; i < 10; ++i) bank.push_back(make_question("q" + std::to_string(i), "1." + std::to_string(i % 3), kAllQuestionTypes[i % 4], 10));
    const auto report = grade(bank, all_correct(bank), GradingPolicy{});
    EXPECT_EQ(report.total, 100);
    EXPECT_TRUE(report.failed_dcis.empty());
    EXPECT_TRUE(report.passed);
    EXPECT_EQ(report.ceiling, Ceiling::Excellent);
}

TEST(Grade, EntryThresholdBlocksPass) {
    const std::vector<Question> bank = {make_question("a", "1", QuestionType::TF, 50), make_question("b", "2", QuestionType::TF, 50),
                                        make_question("c", "2", QuestionType::TF, 10)};
    auto answers = all_correct(bank);
    answers[2] = score_answer(bank[2], wrong_answer(bank[2]));
    GradingPolicy policy;
    policy.entry_thresholds["2"] = 45;
    const auto report = grade(bank, answers, policy);
    EXPECT_EQ(report.total, 90);
    EXPECT_EQ(report.failed_dcis, std::vector<std::string>{"2"});
    EXPECT_FALSE(report.passed);
}

TEST(Grade, RecomputesCorrectnessFromResponse) {
    const auto q = make_question("q", "1", QuestionType::TF, 3);
    AnswerRecord forged{"q", wrong_answer(q), true, 3};
    EXPECT_EQ(grade({q}, {forged}, GradingPolicy{}).total, -3);
}

TEST(Grade, Errors) {
    const auto q = make_question("q", "1", QuestionType::TF, 1);
    EXPECT_EQ(kind_of([&] { grade({q}, {score_answer(make_question("x", "1", QuestionType::TF, 1), TrueFalse{true})}, GradingPolicy{}); }),
              ErrorKind::UnknownQuestion);
    EXPECT_EQ(kind_of([&] { grade({q}, {score_answer(q, TrueFalse{true}), score_answer(q, TrueFalse{false})}, GradingPolicy{}); }),
              ErrorKind::DuplicateAnswer);
}

TEST(Ceiling, Levels) {
    const std::vector<Question> bank = {make_question("i1", "1", QuestionType::TF, 1), make_question("i2", "1", QuestionType::SA, 1),
                                        make_question("ii", "2", QuestionType::MA, 1), make_question("iii", "3", QuestionType::Mapping, 1)};
    auto answers = all_correct(bank);
    EXPECT_EQ(grade_ceiling(bank, answers), Ceiling::Excellent);

    answers[2] = score_answer(bank[2], wrong_answer(bank[2]));
    EXPECT_EQ(grade_ceiling(bank, answers), Ceiling::Satisfactory);

    answers = all_correct(bank);
    answers[3] = score_answer(bank[3], wrong_answer(bank[3]));
    EXPECT_EQ(grade_ceiling(bank, answers), Ceiling::Good);

    answers = all_correct(bank);
    answers.erase(answers.begin());  // one level-I question unanswered
    EXPECT_EQ(grade_ceiling(bank, answers), Ceiling::Fail);
}

TEST(Ceiling, EmptyLevelsAreSatisfied) {
    const std::vector<Question> only_level_one = {make_question("a", "1", QuestionType::TF, 1), make_question("b", "1", QuestionType::SA, 1)};
    EXPECT_EQ(grade_ceiling(only_level_one, all_correct(only_level_one)), Ceiling::Excellent);

    const std::vector<Question> only_level_three = {make_question("m", "1", QuestionType::Mapping, 1)};
    EXPECT_EQ(grade_ceiling(only_level_three, {}), Ceiling::Good);
    EXPECT_EQ(grade_ceiling({}, {}), Ceiling::Excellent);
}

TEST(AnswersJson, RoundTripAndConsistency) {
    const auto bank = load_bank(fixture("data/banks/mixed_groups.json"));
    const auto answers = load_answers(bank, fixture("mixed_groups_answers.json"));
    EXPECT_EQ(answers_from_json(bank, answers_to_json(answers)), answers);

    auto doc = answers_to_json(answers);
    doc["answers"][0]["signed_points"] = 999;
    EXPECT_EQ(kind_of([&] { answers_from_json(bank, doc); }), ErrorKind::ValidationError);

    doc = answers_to_json(answers);
    doc["answers"][0]["question_id"] = "nope";
    EXPECT_EQ(kind_of([&] { answers_from_json(bank, doc); }), ErrorKind::UnknownQuestion);

    doc = answers_to_json(answers);
    doc["answers"][0]["response"] = "yes";
    EXPECT_EQ(kind_of([&] { answers_from_json(bank, doc); }), ErrorKind::ParseError);

    EXPECT_EQ(kind_of([&] { answers_from_json(bank, json{{"responses", json::array()}}); }), ErrorKind::ParseError);
}

TEST(PolicyJson, Parse) {
    const auto p = policy_from_json(json::parse(R"({"pass_mark": 55.5, "entry_thresholds": {"1.2": 3}, "unanswered_penalty": true})"));
    EXPECT_DOUBLE_EQ(p.pass_mark, 55.5);
    EXPECT_DOUBLE_EQ(p.threshold_for("1.2"), 3);
    EXPECT_DOUBLE_EQ(p.threshold_for("9"), 0);
    EXPECT_TRUE(p.unanswered_penalty);
    EXPECT_EQ(policy_from_json(policy_to_json(p)).entry_thresholds, p.entry_thresholds);

    const auto defaults = policy_from_json(json::object());
    EXPECT_DOUBLE_EQ(defaults.pass_mark, 60);
    EXPECT_FALSE(defaults.unanswered_penalty);

    EXPECT_THROW(policy_from_json(json::parse(R"({"entry_thresholds": {"DCI_n": 1}})")), Error);
    EXPECT_THROW(policy_from_json(json::parse(R"({"pass_mark": "sixty"})")), Error);
}

TEST(ReportJson, RoundTrip) {
    const auto bank = load_bank(fixture("data/banks/mixed_groups.json"));
    const auto report = grade(bank.questions, load_answers(bank, fixture("mixed_groups_answers.json")), GradingPolicy{});
    const auto doc = report_to_json(report);
    EXPECT_EQ(doc["total"], 65);
    EXPECT_EQ(doc["failed_dcis"], json::array({"2.1"}));
    EXPECT_EQ(report_from_json(doc), report);
}

// A group with no answers is exempt from its threshold, so answering into it
// can introduce a failure even when the answer is right.
TEST(Grade, FirstAnswerExposesGroupToThreshold) {
    const auto q = make_question("q", "4", QuestionType::TF, 3);
    GradingPolicy policy;
    policy.entry_thresholds["4"] = 5;
    EXPECT_TRUE(grade({q}, {}, policy).failed_dcis.empty());
    EXPECT_EQ(grade({q}, {score_answer(q, q.answer_key)}, policy).failed_dcis, std::vector<std::string>{"4"});
}
