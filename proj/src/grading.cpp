#include "ontolearn/grading.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json_reader.hpp"
#include "ontolearn/error.hpp"

namespace ontolearn {

using detail::index_path;
using detail::JsonObject;
using nlohmann::json;

AnswerRecord score_answer(const Question& q, std::optional<Answer> response) {
    AnswerRecord r;
    r.question_id = q.id;
    if (response) {
        r.correct = is_correct(q, *response);
        r.signed_points = r.correct ? q.weight : -q.weight;
    }
    r.response = std::move(response);
    return r;
}

double GradingPolicy::threshold_for(const std::string& dci) const {
    auto it = entry_thresholds.find(dci);
    return it == entry_thresholds.end() ? 0.0 : it->second;
}

std::string_view to_string(Ceiling c) {
    switch (c) {
        case Ceiling::Fail: return "Fail";
        case Ceiling::Satisfactory: return "Satisfactory";
        case Ceiling::Good: return "Good";
        case Ceiling::Excellent: return "Excellent";
    }
    return "Fail";
}

std::optional<Ceiling> parse_ceiling(std::string_view text) {
    for (auto c : {Ceiling::Fail, Ceiling::Satisfactory, Ceiling::Good, Ceiling::Excellent}) {
        if (to_string(c) == text) return c;
    }
    return std::nullopt;
}

namespace {

// question id -> response index, checking references and uniqueness.
std::map<std::string, const AnswerRecord*> index_answers(const std::vector<Question>& bank,
                                                         const std::vector<AnswerRecord>& answers) {
    std::set<std::string> known;
    for (const auto& q : bank) known.insert(q.id);
    std::map<std::string, const AnswerRecord*> by_question;
    for (const auto& a : answers) {
        if (!known.count(a.question_id)) {
            throw Error(ErrorKind::UnknownQuestion, "answer references unknown question '" + a.question_id + "'");
        }
        if (!by_question.emplace(a.question_id, &a).second) {
            throw Error(ErrorKind::DuplicateAnswer, "question '" + a.question_id + "' answered more than once");
        }
    }
    return by_question;
}

bool answered_correctly(const Question& q, const std::map<std::string, const AnswerRecord*>& by_question) {
    auto it = by_question.find(q.id);
    return it != by_question.end() && it->second->response && is_correct(q, *it->second->response);
}

Ceiling ceiling_from(const std::vector<Question>& bank, const std::map<std::string, const AnswerRecord*>& by_question) {
    bool level_ok[4] = {true, true, true, true};
    for (const auto& q : bank) {
        if (!answered_correctly(q, by_question)) level_ok[static_cast<int>(q.difficulty)] = false;
    }
    if (!level_ok[1]) return Ceiling::Fail;
    if (!level_ok[2]) return Ceiling::Satisfactory;
    if (!level_ok[3]) return Ceiling::Good;
    return Ceiling::Excellent;
}

}  // namespace

GradeReport grade(const std::vector<Question>& bank, const std::vector<AnswerRecord>& answers,
                  const GradingPolicy& policy) {
    const auto by_question = index_answers(bank, answers);

    GradeReport report;
    std::set<std::string, DciLess> with_evidence;
    for (const auto& q : bank) {
        auto& group = report.group_scores[q.dci];
        auto it = by_question.find(q.id);
        const bool answered = it != by_question.end() && it->second->response.has_value();
        if (answered) {
            group += is_correct(q, *it->second->response) ? q.weight : -q.weight;
            with_evidence.insert(q.dci);
        } else if (policy.unanswered_penalty) {
            group -= q.weight;
            with_evidence.insert(q.dci);
        }
    }

    for (const auto& [dci, score] : report.group_scores) {
        report.total += score;
        if (with_evidence.count(dci) && static_cast<double>(score) < policy.threshold_for(dci)) {
            report.failed_dcis.push_back(dci);
        }
    }
    report.passed = static_cast<double>(report.total) >= policy.pass_mark && report.failed_dcis.empty();
    report.ceiling = ceiling_from(bank, by_question);
    return report;
}

Ceiling grade_ceiling(const std::vector<Question>& bank, const std::vector<AnswerRecord>& answers) {
    return ceiling_from(bank, index_answers(bank, answers));
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

json answer_record_to_json(const AnswerRecord& r) {
    return {{"question_id", r.question_id},
            {"response", r.response ? answer_to_json(*r.response) : json(nullptr)},
            {"correct", r.correct},
            {"signed_points", r.signed_points}};
}

json answers_to_json(const std::vector<AnswerRecord>& answers) {
    json items = json::array();
    for (const auto& a : answers) items.push_back(answer_record_to_json(a));
    return {{"answers", std::move(items)}};
}

std::vector<AnswerRecord> answers_from_json(const QuestionBank& bank, const json& value) {
    JsonObject doc(value, "$");
    doc.allow_only({"answers"});
    const auto& items = doc.array("answers");
    std::vector<AnswerRecord> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        JsonObject o(items[i], index_path("$.answers", i));
        o.allow_only({"question_id", "response", "correct", "signed_points"});
        const auto id = o.string("question_id");
        const auto* q = bank.find(id);
        if (!q) throw Error(ErrorKind::UnknownQuestion, o.path() + ": unknown question '" + id + "'");
        std::optional<Answer> response;
        if (o.has("response") && !o.at("response").is_null()) response = answer_from_json(*q, o.at("response"));
        auto record = score_answer(*q, std::move(response));
        if (o.has("correct") && o.boolean("correct") != record.correct) {
            throw Error(ErrorKind::ValidationError, o.path() + ": 'correct' disagrees with the answer key");
        }
        if (o.has("signed_points") && o.integer("signed_points") != record.signed_points) {
            throw Error(ErrorKind::ValidationError, o.path() + ": 'signed_points' disagrees with the answer key");
        }
        out.push_back(std::move(record));
    }
    return out;
}

std::vector<AnswerRecord> load_answers(const QuestionBank& bank, const std::string& path) {
    return answers_from_json(bank, detail::read_document(path));
}

json policy_to_json(const GradingPolicy& p) {
    json thresholds = json::object();
    for (const auto& [dci, t] : p.entry_thresholds) thresholds[dci] = t;
    return {{"pass_mark", p.pass_mark}, {"entry_thresholds", thresholds}, {"unanswered_penalty", p.unanswered_penalty}};
}

GradingPolicy policy_from_json(const json& value) {
    JsonObject doc(value, "$");
    doc.allow_only({"pass_mark", "entry_thresholds", "unanswered_penalty"});
    GradingPolicy p;
    if (doc.has("pass_mark")) p.pass_mark = doc.number("pass_mark");
    if (!std::isfinite(p.pass_mark)) doc.fail_at("pass_mark", "must be finite");
    if (doc.has("entry_thresholds")) {
        JsonObject thresholds(doc.at("entry_thresholds"), doc.child_path("entry_thresholds"));
        for (const auto& item : thresholds.raw().items()) {
            if (!is_valid_dci(item.key())) thresholds.fail("invalid DCI key '" + item.key() + "'");
            const double t = thresholds.number(item.key());
            if (!std::isfinite(t)) thresholds.fail_at(item.key(), "must be finite");
            p.entry_thresholds[item.key()] = t;
        }
    }
    if (doc.has("unanswered_penalty")) p.unanswered_penalty = doc.boolean("unanswered_penalty");
    return p;
}

GradingPolicy load_policy(const std::string& path) { return policy_from_json(detail::read_document(path)); }

json report_to_json(const GradeReport& r) {
    json groups = json::object();
    for (const auto& [dci, score] : r.group_scores) groups[dci] = score;
    return {{"group_scores", groups},
            {"total", r.total},
            {"failed_dcis", r.failed_dcis},
            {"passed", r.passed},
            {"ceiling", std::string(to_string(r.ceiling))}};
}

GradeReport report_from_json(const json& value) {
    JsonObject o(value, "$.report");
    o.allow_only({"group_scores", "total", "failed_dcis", "passed", "ceiling"});
    GradeReport r;
    JsonObject groups(o.at("group_scores"), o.child_path("group_scores"));
    for (const auto& item : groups.raw().items()) r.group_scores[item.key()] = groups.integer(item.key());
    r.total = o.integer("total");
    for (const auto& v : o.array("failed_dcis")) {
        if (!v.is_string()) o.fail_at("failed_dcis", "expected DCI strings");
        r.failed_dcis.push_back(v.get<std::string>());
    }
    r.passed = o.boolean("passed");
    const auto ceiling = parse_ceiling(o.string("ceiling"));
    if (!ceiling) o.fail_at("ceiling", "unknown ceiling");
    r.ceiling = *ceiling;
    return r;
}

}  // namespace ontolearn
