#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace ontolearn {

enum class QuestionType { TF, SA, MA, Mapping };
enum class Competence { Knowledge, Comprehension, Application };
enum class Difficulty { I = 1, II = 2, III = 3 };

inline constexpr QuestionType kAllQuestionTypes[] = {QuestionType::TF, QuestionType::SA, QuestionType::MA,
                                                     QuestionType::Mapping};

std::string_view to_string(QuestionType t);
std::string_view to_string(Competence c);
std::string_view to_string(Difficulty d);
std::optional<QuestionType> parse_question_type(std::string_view text);
std::optional<Competence> parse_competence(std::string_view text);
std::optional<Difficulty> parse_difficulty(std::string_view text);

// Competence/difficulty tags fixed by question type:
// TF, SA -> Knowledge / I; MA -> Comprehension / II; Mapping -> Application / III.
Competence competence_for(QuestionType t);
Difficulty difficulty_for(QuestionType t);

// Answer domains, one per question type. The same shapes carry both the
// key and a candidate's response.
struct TrueFalse {
    bool value = false;
    bool operator==(const TrueFalse&) const = default;
};
struct SingleChoice {
    std::size_t index = 0;
    bool operator==(const SingleChoice&) const = default;
};
struct MultipleChoice {
    std::set<std::size_t> indices;
    bool operator==(const MultipleChoice&) const = default;
};
// right_for_left[i] is the index into `options` matched with match_items[i].
struct Matching {
    std::vector<std::size_t> right_for_left;
    bool operator==(const Matching&) const = default;
};

using Answer = std::variant<TrueFalse, SingleChoice, MultipleChoice, Matching>;

using Points = std::int64_t;

struct Question {
    std::string id;
    std::string dci;
    std::string chunk_id;  // source chunk the DCI was inherited from
    QuestionType qtype = QuestionType::TF;
    Competence competence = Competence::Knowledge;
    Difficulty difficulty = Difficulty::I;
    std::string stem;
    std::vector<std::string> options;      // TF: True/False; Mapping: right-hand items
    std::vector<std::string> match_items;  // Mapping only: left-hand items
    Answer answer_key = TrueFalse{};
    Points weight = 1;

    bool operator==(const Question&) const = default;
};

// Every broken invariant of one question, as human-readable lines.
std::vector<std::string> question_violations(const Question& q);

bool is_correct(const Question& q, const Answer& response);

struct QuestionBank {
    std::string discipline_id;  // home discipline; empty when not tied to one
    std::vector<Question> questions;

    const Question* find(std::string_view question_id) const;

    bool operator==(const QuestionBank&) const = default;
};

// Answer shape for question `q`: TF bool, SA index, MA index array,
// Mapping permutation array. Out-of-domain values throw ParseError.
Answer answer_from_json(const Question& q, const nlohmann::json& value);
nlohmann::json answer_to_json(const Answer& a);

// `include_key` false yields the candidate-facing view.
nlohmann::json question_to_json(const Question& q, bool include_key = true);
Question question_from_json(const nlohmann::json& value, const std::string& path = "$");

nlohmann::json bank_to_json(const QuestionBank& bank);
// Throws ParseError on schema problems and ValidationError on broken
// question invariants or duplicate ids.
QuestionBank bank_from_json(const nlohmann::json& doc);
QuestionBank load_bank(const std::string& path);
void save_bank(const QuestionBank& bank, const std::string& path);
std::string serialize_bank(const QuestionBank& bank);

}  // namespace ontolearn
