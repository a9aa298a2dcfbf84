#include "ontolearn/session.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>

#include "json_reader.hpp"
#include "ontolearn/error.hpp"
#include "ontolearn/ontology_io.hpp"
#include "ontolearn/random.hpp"

namespace ontolearn {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(SessionMode m) { return m == SessionMode::Learning ? "learning" : "exam"; }
std::string_view to_string(SessionState s) { return s == SessionState::Active ? "active" : "completed"; }
std::string_view to_string(QuestionOrder o) {
    return o == QuestionOrder::Shuffled ? "shuffled" : "difficulty_ascending";
}

std::optional<SessionMode> parse_session_mode(std::string_view text) {
    if (text == "learning") return SessionMode::Learning;
    if (text == "exam") return SessionMode::Exam;
    return std::nullopt;
}

std::optional<QuestionOrder> parse_question_order(std::string_view text) {
    if (text == "shuffled") return QuestionOrder::Shuffled;
    if (text == "difficulty_ascending") return QuestionOrder::DifficultyAscending;
    return std::nullopt;
}

namespace {

constexpr std::uint64_t kOrderStream = 3;

std::string format_time(std::chrono::system_clock::time_point tp) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(tp.time_since_epoch()).count();
    const std::time_t seconds = static_cast<std::time_t>(ms / 1000);
    std::tm utc{};
    gmtime_r(&seconds, &utc);
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", utc.tm_year + 1900, utc.tm_mon + 1,
                  utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec, static_cast<int>(ms % 1000));
    return buffer;
}

std::optional<std::chrono::system_clock::time_point> parse_time(const std::string& text) {
    std::tm utc{};
    int millis = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ", &utc.tm_year, &utc.tm_mon, &utc.tm_mday,
                    &utc.tm_hour, &utc.tm_min, &utc.tm_sec, &millis) != 7) {
        return std::nullopt;
    }
    utc.tm_year -= 1900;
    utc.tm_mon -= 1;
    const std::time_t seconds = timegm(&utc);
    return std::chrono::system_clock::from_time_t(seconds) + std::chrono::milliseconds(millis);
}

std::string session_id_for(std::uint64_t number) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "s%06llu", static_cast<unsigned long long>(number));
    return buffer;
}

std::optional<std::uint64_t> session_number(const std::string& id) {
    if (id.size() < 2 || id[0] != 's') return std::nullopt;
    std::uint64_t n = 0;
    for (std::size_t i = 1; i < id.size(); ++i) {
        if (id[i] < '0' || id[i] > '9') return std::nullopt;
        n = n * 10 + static_cast<std::uint64_t>(id[i] - '0');
    }
    return n;
}

std::vector<std::string> ordered_question_ids(const QuestionBank& bank, std::uint64_t seed, QuestionOrder order) {
    std::vector<const Question*> questions;
    for (const auto& q : bank.questions) questions.push_back(&q);
    std::mt19937_64 rng(derive_seed(seed, {kOrderStream}));
    stable_shuffle(questions, rng);
    if (order == QuestionOrder::DifficultyAscending) {
        std::stable_sort(questions.begin(), questions.end(),
                         [](const Question* a, const Question* b) { return a->difficulty < b->difficulty; });
    }
    std::vector<std::string> ids;
    for (const auto* q : questions) ids.push_back(q->id);
    return ids;
}

}  // namespace

json session_to_json(const TestSession& s) {
    json answers = json::array();
    for (const auto& a : s.answers) answers.push_back(answer_record_to_json(a));
    json out = {{"id", s.id},
                {"mode", std::string(to_string(s.mode))},
                {"bank_ref", s.bank_ref},
                {"seed", s.seed},
                {"order", std::string(to_string(s.order))},
                {"question_order", s.question_order},
                {"answers", std::move(answers)},
                {"state", std::string(to_string(s.state))},
                {"created_at", s.created_at}};
    if (s.state == SessionState::Completed) {
        out["completed_at"] = s.completed_at;
        if (s.policy) out["policy"] = policy_to_json(*s.policy);
        if (s.report) out["report"] = report_to_json(*s.report);
        out["recommendations"] = recommendations_to_json(s.recommendations);
    }
    return out;
}

Catalog load_catalog(const fs::path& data_dir) {
    const auto ontology_dir = data_dir / "ontologies";
    const auto bank_dir = data_dir / "banks";
    std::error_code ec;
    if (!fs::is_directory(ontology_dir, ec) || !fs::is_directory(bank_dir, ec)) {
        throw Error(ErrorKind::IoError,
                    "data directory '" + data_dir.string() + "' must contain ontologies/ and banks/");
    }
    auto json_files = [](const fs::path& dir) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        return files;
    };

    Catalog catalog;
    for (const auto& path : json_files(ontology_dir)) {
        auto m = load_ontology(path.string());
        const auto id = m.discipline_id;
        if (!catalog.ontologies.emplace(id, std::move(m)).second) {
            throw Error(ErrorKind::ValidationError, "discipline '" + id + "' defined twice in " + ontology_dir.string());
        }
    }
    for (const auto& path : json_files(bank_dir)) {
        auto bank = load_bank(path.string());
        auto home = catalog.ontologies.find(bank.discipline_id);
        if (home == catalog.ontologies.end()) {
            throw Error(ErrorKind::ValidationError,
                        path.string() + ": bank discipline '" + bank.discipline_id + "' has no loaded ontology");
        }
        for (const auto& q : bank.questions) {
            if (home->second.chunks_with_dci(q.dci).empty()) {
                throw Error(ErrorKind::ValidationError,
                            path.string() + ": question '" + q.id + "' DCI '" + q.dci + "' resolves to no chunk");
            }
        }
        catalog.banks.emplace(path.stem().string(), std::move(bank));
    }
    return catalog;
}

json AnswerFeedback::to_json() const {
    if (mode == SessionMode::Exam) return {{"acknowledged", true}};
    return {{"correct", correct}, {"dci", dci}};
}

json ConceptView::to_json() const {
    json chunks_json = json::array();
    for (const auto& c : chunks) {
        json objects = json::array();
        for (const auto& o : c.objects) {
            json attrs = json::array();
            for (const auto& a : o.attributes) {
                json attr = {{"name", a.name}};
                std::visit([&](const auto& v) { attr["value"] = v; }, a.value);
                if (a.unit) attr["unit"] = *a.unit;
                attrs.push_back(std::move(attr));
            }
            objects.push_back({{"id", o.id}, {"category", o.category}, {"label", o.label}, {"attributes", attrs}});
        }
        json materials = json::array();
        for (const auto& mp : c.materials) {
            materials.push_back({{"chunk_id", mp.chunk_id},
                                 {"content_kind", std::string(ontolearn::to_string(mp.content_kind))},
                                 {"content_ref", mp.content_ref},
                                 {"discipline_id", mp.discipline_id}});
        }
        chunks_json.push_back({{"chunk_id", c.chunk.id},
                               {"label", c.chunk.label},
                               {"discipline_id", c.chunk.discipline_id},
                               {"objects", std::move(objects)},
                               {"materials", std::move(materials)}});
    }
    return {{"dci", dci}, {"chunks", std::move(chunks_json)}};
}

json Completion::to_json() const {
    return {{"report", report_to_json(report)}, {"recommendations", recommendations_to_json(recommendations)}};
}

// ---------------------------------------------------------------------------
// SessionManager
// ---------------------------------------------------------------------------

struct SessionManager::Entry {
    std::mutex mutex;
    TestSession session;
};

SessionManager::SessionManager(Catalog catalog, fs::path session_dir, SessionOptions options)
    : catalog_(std::move(catalog)), session_dir_(std::move(session_dir)), options_(options) {
    std::error_code ec;
    fs::create_directories(session_dir_, ec);
    if (!fs::is_directory(session_dir_)) {
        throw Error(ErrorKind::IoError, "cannot create session directory '" + session_dir_.string() + "'");
    }
    recover();
}

SessionManager::~SessionManager() = default;

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& session_id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw Error(ErrorKind::UnknownSession, "no session '" + session_id + "'");
    return it->second;
}

const QuestionBank& SessionManager::bank_for(const TestSession& s) const {
    auto it = catalog_.banks.find(s.bank_ref);
    if (it == catalog_.banks.end()) throw Error(ErrorKind::UnknownBank, "no bank '" + s.bank_ref + "'");
    return it->second;
}

void SessionManager::check_time(const TestSession& s) const {
    if (s.mode != SessionMode::Exam || !options_.exam_time_limit) return;
    const auto created = parse_time(s.created_at);
    if (created && std::chrono::system_clock::now() - *created > *options_.exam_time_limit) {
        throw Error(ErrorKind::SessionClosed, "exam time limit exceeded for '" + s.id + "'");
    }
}

void SessionManager::append(const std::string& session_id, const json& event) const {
    const auto path = session_dir_ / (session_id + ".jsonl");
    std::ofstream out(path, std::ios::app | std::ios::binary);
    out << event.dump() << "\n";
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "cannot append to '" + path.string() + "'");
}

TestSession SessionManager::create_session(const std::string& bank_ref, SessionMode mode, std::uint64_t seed,
                                           QuestionOrder order) {
    auto bank_it = catalog_.banks.find(bank_ref);
    if (bank_it == catalog_.banks.end()) throw Error(ErrorKind::UnknownBank, "no bank '" + bank_ref + "'");
    if (bank_it->second.questions.empty()) throw Error(ErrorKind::EmptyBank, "bank '" + bank_ref + "' is empty");

    auto entry = std::make_shared<Entry>();
    auto& s = entry->session;
    s.mode = mode;
    s.bank_ref = bank_ref;
    s.seed = seed;
    s.order = order;
    s.question_order = ordered_question_ids(bank_it->second, seed, order);
    s.created_at = format_time(std::chrono::system_clock::now());

    std::unique_lock lock(sessions_mutex_);
    s.id = session_id_for(next_number_++);
    append(s.id, {{"event", "created"},
                  {"id", s.id},
                  {"mode", std::string(to_string(s.mode))},
                  {"bank_ref", s.bank_ref},
                  {"seed", s.seed},
                  {"order", std::string(to_string(s.order))},
                  {"question_order", s.question_order},
                  {"created_at", s.created_at}});
    sessions_.emplace(s.id, entry);
    return s;
}

std::optional<Question> SessionManager::next_question(const std::string& session_id) {
    auto entry = find(session_id);
    std::lock_guard lock(entry->mutex);
    const auto& s = entry->session;
    if (s.state == SessionState::Completed) throw Error(ErrorKind::SessionClosed, "session '" + s.id + "' is completed");
    check_time(s);
    std::set<std::string> answered;
    for (const auto& a : s.answers) answered.insert(a.question_id);
    const auto& bank = bank_for(s);
    for (const auto& id : s.question_order) {
        if (!answered.count(id)) return *bank.find(id);
    }
    return std::nullopt;
}

AnswerFeedback SessionManager::submit_answer(const std::string& session_id, const std::string& question_id,
                                             const json& response) {
    auto entry = find(session_id);
    std::lock_guard lock(entry->mutex);
    auto& s = entry->session;
    if (s.state == SessionState::Completed) throw Error(ErrorKind::SessionClosed, "session '" + s.id + "' is completed");
    check_time(s);
    const auto* q = bank_for(s).find(question_id);
    if (!q) throw Error(ErrorKind::UnknownQuestion, "question '" + question_id + "' not in bank '" + s.bank_ref + "'");
    for (const auto& a : s.answers) {
        if (a.question_id == question_id) {
            throw Error(ErrorKind::AlreadyAnswered, "question '" + question_id + "' already answered");
        }
    }
    auto record = score_answer(*q, answer_from_json(*q, response));
    append(s.id, {{"event", "answer"}, {"question_id", question_id}, {"response", response}});
    s.answers.push_back(record);

    AnswerFeedback feedback;
    feedback.mode = s.mode;
    if (s.mode == SessionMode::Learning) {
        feedback.correct = record.correct;
        feedback.dci = q->dci;
    }
    return feedback;
}

ConceptView SessionManager::review_concept(const std::string& session_id, const std::string& dci) {
    auto entry = find(session_id);
    std::lock_guard lock(entry->mutex);
    const auto& s = entry->session;
    if (s.mode == SessionMode::Exam) {
        throw Error(ErrorKind::ModeForbidden, "concept review is not available in exam mode");
    }
    if (s.state == SessionState::Completed) throw Error(ErrorKind::SessionClosed, "session '" + s.id + "' is completed");

    const auto& home = catalog_.ontologies.at(bank_for(s).discipline_id);
    const auto chunks = home.chunks_with_dci(dci);
    if (chunks.empty()) throw Error(ErrorKind::UnknownDci, "no chunk with DCI '" + dci + "'");

    ConceptView view;
    view.dci = dci;
    for (const auto* c : chunks) {
        ConceptChunk cc;
        cc.chunk = *c;
        for (const auto* o : home.bound_objects(c->id)) cc.objects.push_back(*o);
        cc.materials = home.mappings_for(c->id);
        view.chunks.push_back(std::move(cc));
    }
    return view;
}

Completion SessionManager::complete_session(const std::string& session_id, const GradingPolicy& policy,
                                            const RecommendOptions& options) {
    auto entry = find(session_id);
    std::lock_guard lock(entry->mutex);
    auto& s = entry->session;
    if (s.state == SessionState::Completed) return {*s.report, s.recommendations};

    const auto& bank = bank_for(s);
    const auto& home = catalog_.ontologies.at(bank.discipline_id);
    std::vector<const MetaOntology*> others;
    for (const auto& [id, m] : catalog_.ontologies) {
        if (id != home.discipline_id) others.push_back(&m);
    }

    Completion result;
    result.report = grade(bank.questions, s.answers, policy);
    result.recommendations = recommend(result.report, home, others, options);

    const auto completed_at = format_time(std::chrono::system_clock::now());
    append(s.id, {{"event", "completed"},
                  {"completed_at", completed_at},
                  {"policy", policy_to_json(policy)},
                  {"report", report_to_json(result.report)},
                  {"recommendations", recommendations_to_json(result.recommendations)}});
    s.state = SessionState::Completed;
    s.completed_at = completed_at;
    s.policy = policy;
    s.report = result.report;
    s.recommendations = result.recommendations;
    return result;
}

TestSession SessionManager::session(const std::string& session_id) const {
    auto entry = find(session_id);
    std::lock_guard lock(entry->mutex);
    return entry->session;
}

std::vector<std::string> SessionManager::session_ids() const {
    std::shared_lock lock(sessions_mutex_);
    std::vector<std::string> ids;
    for (const auto& [id, _] : sessions_) ids.push_back(id);
    return ids;
}

void SessionManager::recover() {
    std::vector<fs::path> logs;
    for (const auto& item : fs::directory_iterator(session_dir_)) {
        if (item.is_regular_file() && item.path().extension() == ".jsonl") logs.push_back(item.path());
    }
    std::sort(logs.begin(), logs.end());

    for (const auto& path : logs) {
        const auto origin = path.string();
        std::ifstream in(path, std::ios::binary);
        std::string line;
        auto entry = std::make_shared<Entry>();
        auto& s = entry->session;
        bool created = false;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const auto where = origin + ":" + std::to_string(line_no);
            const auto event = detail::parse_document(line, where);
            detail::JsonObject e(event, where);
            const auto kind = e.string("event");
            if (kind == "created") {
                s.id = e.string("id");
                const auto mode = parse_session_mode(e.string("mode"));
                const auto order = parse_question_order(e.string("order"));
                if (!mode || !order) e.fail("bad mode or order");
                s.mode = *mode;
                s.order = *order;
                s.bank_ref = e.string("bank_ref");
                s.seed = e.at("seed").get<std::uint64_t>();
                s.question_order = e.at("question_order").get<std::vector<std::string>>();
                s.created_at = e.string("created_at");
                created = true;
            } else if (!created) {
                e.fail("event before session creation");
            } else if (kind == "answer") {
                const auto* q = bank_for(s).find(e.string("question_id"));
                if (!q) throw Error(ErrorKind::UnknownQuestion, where + ": unknown question");
                s.answers.push_back(score_answer(*q, answer_from_json(*q, e.at("response"))));
            } else if (kind == "completed") {
                s.state = SessionState::Completed;
                s.completed_at = e.string("completed_at");
                s.policy = policy_from_json(e.at("policy"));
                s.report = report_from_json(e.at("report"));
                s.recommendations.clear();
                for (const auto& r : e.at("recommendations")) s.recommendations.push_back(recommendation_from_json(r));
            } else {
                e.fail("unknown event '" + kind + "'");
            }
        }
        if (!created) continue;
        if (auto n = session_number(s.id)) next_number_ = std::max(next_number_, *n + 1);
        sessions_.emplace(s.id, entry);
    }
}

}  // namespace ontolearn
