#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "ontolearn/grading.hpp"
#include "ontolearn/ontology.hpp"
#include "ontolearn/question.hpp"
#include "ontolearn/recommend.hpp"

namespace ontolearn {

enum class SessionMode { Learning, Exam };
enum class SessionState { Active, Completed };
enum class QuestionOrder { Shuffled, DifficultyAscending };

std::string_view to_string(SessionMode m);
std::string_view to_string(SessionState s);
std::string_view to_string(QuestionOrder o);
std::optional<SessionMode> parse_session_mode(std::string_view text);
std::optional<QuestionOrder> parse_question_order(std::string_view text);

struct TestSession {
    std::string id;
    SessionMode mode = SessionMode::Learning;
    std::string bank_ref;
    std::uint64_t seed = 0;
    QuestionOrder order = QuestionOrder::Shuffled;
    std::vector<std::string> question_order;
    std::vector<AnswerRecord> answers;
    SessionState state = SessionState::Active;
    std::string created_at;
    std::string completed_at;
    // Set on completion.
    std::optional<GradingPolicy> policy;
    std::optional<GradeReport> report;
    std::vector<Recommendation> recommendations;
};

// Full serialized form; answer keys never appear in it.
nlohmann::json session_to_json(const TestSession& s);

// Immutable inputs shared by every session: ontologies keyed by discipline id
// and banks keyed by reference (file stem in a data directory).
struct Catalog {
    std::map<std::string, MetaOntology> ontologies;
    std::map<std::string, QuestionBank> banks;
};

// Loads <dir>/ontologies/*.json and <dir>/banks/*.json. Every bank must name
// a loaded home discipline and every question DCI must resolve there.
// Throws IoError when the layout is missing, ParseError / ValidationError on
// bad documents.
Catalog load_catalog(const std::filesystem::path& data_dir);

struct AnswerFeedback {
    SessionMode mode = SessionMode::Learning;
    bool correct = false;  // learning mode only
    std::string dci;       // learning mode only

    nlohmann::json to_json() const;
};

struct ConceptChunk {
    Chunk chunk;
    std::vector<ContentObject> objects;
    std::vector<ContentMapping> materials;
};

struct ConceptView {
    std::string dci;
    std::vector<ConceptChunk> chunks;

    nlohmann::json to_json() const;
};

struct Completion {
    GradeReport report;
    std::vector<Recommendation> recommendations;

    nlohmann::json to_json() const;
};

struct SessionOptions {
    // Wall-clock limit for exam sessions; none by default.
    std::optional<std::chrono::milliseconds> exam_time_limit;
};

// Owns live sessions. Sessions are independent: each one has its own lock,
// and the catalog is read-only. Every state change is appended to
// <session_dir>/<id>.jsonl before the call returns, and the constructor
// replays those logs.
class SessionManager {
public:
    SessionManager(Catalog catalog, std::filesystem::path session_dir, SessionOptions options = {});
    ~SessionManager();

    SessionManager(const SessionManager&) = delete;
    SessionManager& operator=(const SessionManager&) = delete;

    const Catalog& catalog() const noexcept { return catalog_; }

    // Throws UnknownBank / EmptyBank.
    TestSession create_session(const std::string& bank_ref, SessionMode mode, std::uint64_t seed,
                               QuestionOrder order = QuestionOrder::Shuffled);

    // First unanswered question in session order, or nullopt when all are
    // answered. Throws UnknownSession / SessionClosed.
    std::optional<Question> next_question(const std::string& session_id);

    // Throws UnknownSession, SessionClosed, UnknownQuestion, AlreadyAnswered,
    // and ParseError for a response outside the question's answer domain.
    AnswerFeedback submit_answer(const std::string& session_id, const std::string& question_id,
                                 const nlohmann::json& response);

    // Learning mode only. Throws ModeForbidden (exam mode, checked first),
    // UnknownSession, SessionClosed, UnknownDci.
    ConceptView review_concept(const std::string& session_id, const std::string& dci);

    // Grades and closes the session. A completed session returns its stored
    // result unchanged.
    Completion complete_session(const std::string& session_id, const GradingPolicy& policy,
                                const RecommendOptions& options = {});

    TestSession session(const std::string& session_id) const;
    std::vector<std::string> session_ids() const;

private:
    struct Entry;

    std::shared_ptr<Entry> find(const std::string& session_id) const;
    const QuestionBank& bank_for(const TestSession& s) const;
    void check_time(const TestSession& s) const;
    void append(const std::string& session_id, const nlohmann::json& event) const;
    void recover();

    Catalog catalog_;
    std::filesystem::path session_dir_;
    SessionOptions options_;

    mutable std::shared_mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t next_number_ = 1;
};

}  // namespace ontolearn
