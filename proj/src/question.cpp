#include "ontolearn/question.hpp"

#include <algorithm>
#include <map>

#include "json_reader.hpp"
#include "ontolearn/text.hpp"

namespace ontolearn {

using detail::index_path;
using detail::JsonObject;
using nlohmann::json;

std::string_view to_string(QuestionType t) {
    switch (t) {
        case QuestionType::TF: return "TF";
        case QuestionType::SA: return "SA";
        case QuestionType::MA: return "MA";
        case QuestionType::Mapping: return "Mapping";
    }
    return "TF";
}

std::string_view to_string(Competence c) {
    switch (c) {
        case Competence::Knowledge: return "Knowledge";
        case Competence::Comprehension: return "Comprehension";
        case Competence::Application: return "Application";
    }
    return "Knowledge";
}

std::string_view to_string(Difficulty d) {
    switch (d) {
        case Difficulty::I: return "I";
        case Difficulty::II: return "II";
        case Difficulty::III: return "III";
    }
    return "I";
}

std::optional<QuestionType> parse_question_type(std::string_view text) {
    for (auto t : kAllQuestionTypes) {
        if (to_string(t) == text) return t;
    }
    return std::nullopt;
}

std::optional<Competence> parse_competence(std::string_view text) {
    for (auto c : {Competence::Knowledge, Competence::Comprehension, Competence::Application}) {
        if (to_string(c) == text) return c;
    }
    return std::nullopt;
}

std::optional<Difficulty> parse_difficulty(std::string_view text) {
    for (auto d : {Difficulty::I, Difficulty::II, Difficulty::III}) {
        if (to_string(d) == text) return d;
    }
    return std::nullopt;
}

Competence competence_for(QuestionType t) {
    switch (t) {
        case QuestionType::TF:
        case QuestionType::SA: return Competence::Knowledge;
        case QuestionType::MA: return Competence::Comprehension;
        case QuestionType::Mapping: return Competence::Application;
    }
    return Competence::Knowledge;
}

Difficulty difficulty_for(QuestionType t) {
    switch (t) {
        case QuestionType::TF:
        case QuestionType::SA: return Difficulty::I;
        case QuestionType::MA: return Difficulty::II;
        case QuestionType::Mapping: return Difficulty::III;
    }
    return Difficulty::I;
}

namespace {

bool key_shape_matches(QuestionType t, const Answer& a) {
    switch (t) {
        case QuestionType::TF: return std::holds_alternative<TrueFalse>(a);
        case QuestionType::SA: return std::holds_alternative<SingleChoice>(a);
        case QuestionType::MA: return std::holds_alternative<MultipleChoice>(a);
        case QuestionType::Mapping: return std::holds_alternative<Matching>(a);
    }
    return false;
}

bool is_permutation_of_indices(const std::vector<std::size_t>& v) {
    std::vector<bool> seen(v.size(), false);
    for (std::size_t x : v) {
        if (x >= v.size() || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

bool options_distinct(const std::vector<std::string>& options) {
    std::vector<std::string> normalized;
    for (const auto& o : options) normalized.push_back(normalize_label(o));
    std::sort(normalized.begin(), normalized.end());
    return std::adjacent_find(normalized.begin(), normalized.end()) == normalized.end();
}

}  // namespace

std::vector<std::string> question_violations(const Question& q) {
    std::vector<std::string> out;
    if (q.id.empty()) out.push_back("empty question id");
    if (!is_valid_dci(q.dci)) out.push_back("invalid dci '" + q.dci + "'");
    if (q.competence != competence_for(q.qtype) || q.difficulty != difficulty_for(q.qtype)) {
        out.push_back(std::string(to_string(q.qtype)) + " must be tagged " +
                      std::string(to_string(competence_for(q.qtype))) + "/" +
                      std::string(to_string(difficulty_for(q.qtype))));
    }
    if (q.weight <= 0) out.push_back("weight must be positive");
    if (!key_shape_matches(q.qtype, q.answer_key)) {
        out.push_back("answer key shape does not match type " + std::string(to_string(q.qtype)));
        return out;
    }
    switch (q.qtype) {
        case QuestionType::TF:
            break;
        case QuestionType::SA: {
            if (q.options.size() < 2) out.push_back("SA needs at least two options");
            if (!options_distinct(q.options)) out.push_back("options must be pairwise distinct");
            if (std::get<SingleChoice>(q.answer_key).index >= q.options.size()) out.push_back("SA key out of range");
            break;
        }
        case QuestionType::MA: {
            if (q.options.size() < 2) out.push_back("MA needs at least two options");
            if (!options_distinct(q.options)) out.push_back("options must be pairwise distinct");
            const auto& key = std::get<MultipleChoice>(q.answer_key).indices;
            if (key.empty()) out.push_back("MA key must be non-empty");
            if (!key.empty() && *key.rbegin() >= q.options.size()) out.push_back("MA key out of range");
            break;
        }
        case QuestionType::Mapping: {
            if (q.match_items.size() != q.options.size()) out.push_back("Mapping sides differ in length");
            if (q.options.size() < 2) out.push_back("Mapping needs at least two pairs");
            const auto& key = std::get<Matching>(q.answer_key).right_for_left;
            if (key.size() != q.match_items.size() || !is_permutation_of_indices(key)) {
                out.push_back("Mapping key must be a permutation");
            }
            break;
        }
    }
    return out;
}

bool is_correct(const Question& q, const Answer& response) { return response == q.answer_key; }

const Question* QuestionBank::find(std::string_view question_id) const {
    for (const auto& q : questions) {
        if (q.id == question_id) return &q;
    }
    return nullptr;
}

Answer answer_from_json(const Question& q, const json& value) {
    auto fail = [&](const std::string& what) -> Answer {
        throw Error(ErrorKind::ParseError, "response to '" + q.id + "': " + what);
    };
    auto index_in_range = [&](const json& v) -> std::size_t {
        if (!v.is_number_integer()) fail("expected an option index");
        const auto i = v.get<std::int64_t>();
        if (i < 0 || static_cast<std::size_t>(i) >= q.options.size()) fail("option index out of range");
        return static_cast<std::size_t>(i);
    };
    switch (q.qtype) {
        case QuestionType::TF:
            if (!value.is_boolean()) return fail("expected true or false");
            return TrueFalse{value.get<bool>()};
        case QuestionType::SA:
            return SingleChoice{index_in_range(value)};
        case QuestionType::MA: {
            if (!value.is_array()) return fail("expected an array of option indices");
            MultipleChoice mc;
            for (const auto& v : value) mc.indices.insert(index_in_range(v));
            return mc;
        }
        case QuestionType::Mapping: {
            if (!value.is_array() || value.size() != q.match_items.size()) {
                return fail("expected one option index per left item");
            }
            Matching m;
            for (const auto& v : value) m.right_for_left.push_back(index_in_range(v));
            return m;
        }
    }
    return fail("unsupported question type");
}

json answer_to_json(const Answer& a) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TrueFalse>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, SingleChoice>) {
                return v.index;
            } else if constexpr (std::is_same_v<T, MultipleChoice>) {
                return json(std::vector<std::size_t>(v.indices.begin(), v.indices.end()));
            } else {
                return json(v.right_for_left);
            }
        },
        a);
}

json question_to_json(const Question& q, bool include_key) {
    json out = {
        {"id", q.id},
        {"dci", q.dci},
        {"chunk_id", q.chunk_id},
        {"qtype", std::string(to_string(q.qtype))},
        {"competence", std::string(to_string(q.competence))},
        {"difficulty", std::string(to_string(q.difficulty))},
        {"stem", q.stem},
        {"options", q.options},
    };
    if (q.qtype == QuestionType::Mapping) out["match_items"] = q.match_items;
    if (include_key) out["answer_key"] = answer_to_json(q.answer_key);
    out["weight"] = q.weight;
    return out;
}

Question question_from_json(const json& value, const std::string& path) {
    JsonObject o(value, path);
    o.allow_only({"id", "dci", "chunk_id", "qtype", "competence", "difficulty", "stem", "options", "match_items",
                  "answer_key", "weight"});
    Question q;
    q.id = o.string("id");
    q.dci = o.string("dci");
    q.chunk_id = o.string_or("chunk_id", "");

    const auto qtype = parse_question_type(o.string("qtype"));
    if (!qtype) o.fail_at("qtype", "unknown question type '" + o.string("qtype") + "'");
    q.qtype = *qtype;
    // Tags default from the type; when present they are parsed verbatim and
    // checked against the type during validation.
    q.competence = competence_for(q.qtype);
    q.difficulty = difficulty_for(q.qtype);
    if (o.has("competence")) {
        const auto c = parse_competence(o.string("competence"));
        if (!c) o.fail_at("competence", "unknown competence '" + o.string("competence") + "'");
        q.competence = *c;
    }
    if (o.has("difficulty")) {
        const auto d = parse_difficulty(o.string("difficulty"));
        if (!d) o.fail_at("difficulty", "unknown difficulty '" + o.string("difficulty") + "'");
        q.difficulty = *d;
    }
    q.stem = o.string_or("stem", "");
    auto strings = [&](std::string_view key) {
        std::vector<std::string> out;
        const auto& items = o.array_or_empty(key);
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (!items[i].is_string()) {
                throw Error(ErrorKind::ParseError, index_path(o.child_path(key), i) + ": expected a string");
            }
            out.push_back(items[i].get<std::string>());
        }
        return out;
    };
    q.options = strings("options");
    q.match_items = strings("match_items");
    q.weight = o.has("weight") ? o.integer("weight") : 1;

    // Keys share the response decoder, so an out-of-range key is a parse error.
    const auto& key = o.at("answer_key");
    try {
        q.answer_key = answer_from_json(q, key);
    } catch (const Error&) {
        throw Error(ErrorKind::ParseError, o.child_path("answer_key") + ": malformed key for " +
                                               std::string(to_string(q.qtype)) + " question");
    }
    return q;
}

json bank_to_json(const QuestionBank& bank) {
    json questions = json::array();
    for (const auto& q : bank.questions) questions.push_back(question_to_json(q, true));
    json doc = json::object();
    if (!bank.discipline_id.empty()) doc["discipline_id"] = bank.discipline_id;
    doc["questions"] = std::move(questions);
    return doc;
}

QuestionBank bank_from_json(const json& value) {
    JsonObject doc(value, "$");
    doc.allow_only({"discipline_id", "questions"});
    QuestionBank bank;
    bank.discipline_id = doc.string_or("discipline_id", "");
    const auto& items = doc.array("questions");
    for (std::size_t i = 0; i < items.size(); ++i) {
        bank.questions.push_back(question_from_json(items[i], index_path("$.questions", i)));
    }

    std::string problems;
    std::map<std::string, int> seen;
    for (const auto& q : bank.questions) {
        if (++seen[q.id] == 2) problems += "; duplicate question id '" + q.id + "'";
        for (const auto& v : question_violations(q)) problems += "; question '" + q.id + "': " + v;
    }
    if (!problems.empty()) throw Error(ErrorKind::ValidationError, problems.substr(2));
    return bank;
}

QuestionBank load_bank(const std::string& path) { return bank_from_json(detail::read_document(path)); }

std::string serialize_bank(const QuestionBank& bank) { return bank_to_json(bank).dump(2) + "\n"; }

void save_bank(const QuestionBank& bank, const std::string& path) {
    detail::write_text_file(path, serialize_bank(bank));
}

}  // namespace ontolearn
