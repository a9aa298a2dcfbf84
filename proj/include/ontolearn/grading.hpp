#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontolearn/question.hpp"
#include "ontolearn/text.hpp"

namespace ontolearn {

// One scored response. `response` is empty for an unanswered question.
// signed_points is +weight when correct, -weight when wrong, 0 when blank.
struct AnswerRecord {
    std::string question_id;
    std::optional<Answer> response;
    bool correct = false;
    Points signed_points = 0;

    bool operator==(const AnswerRecord&) const = default;
};

// Scores `response` against the question's key.
AnswerRecord score_answer(const Question& q, std::optional<Answer> response);

struct GradingPolicy {
    double pass_mark = 60;
    std::map<std::string, double, DciLess> entry_thresholds;  // missing DCIs use 0
    bool unanswered_penalty = false;                          // blanks score -weight when set

    double threshold_for(const std::string& dci) const;
};

enum class Ceiling { Fail, Satisfactory, Good, Excellent };

std::string_view to_string(Ceiling c);
std::optional<Ceiling> parse_ceiling(std::string_view text);

struct GradeReport {
    std::map<std::string, Points, DciLess> group_scores;  // every DCI in the bank
    Points total = 0;
    std::vector<std::string> failed_dcis;  // ascending DCI order
    bool passed = false;
    Ceiling ceiling = Ceiling::Fail;

    bool operator==(const GradeReport&) const = default;
};

// Signed per-DCI sums: inside a group, each wrong answer cancels the points
// of an equal-weight right one. A group with no scored answers is never
// failed. passed requires total >= pass_mark and no failed group.
//
// Correctness is recomputed from each record's response; the record's own
// `correct` and `signed_points` fields are not trusted. Unanswered bank
// questions score 0, or -weight under unanswered_penalty.
//
// Throws UnknownQuestion and DuplicateAnswer.
GradeReport grade(const std::vector<Question>& bank, const std::vector<AnswerRecord>& answers,
                  const GradingPolicy& policy);

// Cumulative gating by difficulty level: any level-I miss is Fail; all of I
// gives Satisfactory, plus all of II gives Good, plus all of III gives
// Excellent. Levels without questions count as satisfied.
Ceiling grade_ceiling(const std::vector<Question>& bank, const std::vector<AnswerRecord>& answers);

nlohmann::json answer_record_to_json(const AnswerRecord& r);
// {"answers": [{"question_id", "response"}...]}. Optional "correct" and
// "signed_points" fields must agree with the key (ValidationError otherwise).
std::vector<AnswerRecord> answers_from_json(const QuestionBank& bank, const nlohmann::json& doc);
nlohmann::json answers_to_json(const std::vector<AnswerRecord>& answers);
std::vector<AnswerRecord> load_answers(const QuestionBank& bank, const std::string& path);

nlohmann::json policy_to_json(const GradingPolicy& p);
GradingPolicy policy_from_json(const nlohmann::json& doc);
GradingPolicy load_policy(const std::string& path);

nlohmann::json report_to_json(const GradeReport& r);
GradeReport report_from_json(const nlohmann::json& value);

}  // namespace ontolearn
