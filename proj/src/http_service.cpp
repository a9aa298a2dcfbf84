#include "ontolearn/http_service.hpp"

#include <algorithm>

#include "httplib.h"
#include "json.hpp"

namespace ontolearn {

using nlohmann::json;

int http_status(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::ValidationError: return 400;
        case ErrorKind::ModeForbidden: return 403;
        case ErrorKind::UnknownSession:
        case ErrorKind::UnknownBank:
        case ErrorKind::UnknownQuestion:
        case ErrorKind::UnknownDci:
        case ErrorKind::UnknownChunk: return 404;
        case ErrorKind::SessionClosed:
        case ErrorKind::AlreadyAnswered:
        case ErrorKind::DuplicateAnswer: return 409;
        case ErrorKind::EmptyBank:
        case ErrorKind::UnresolvedDci:
        case ErrorKind::InsufficientFacts:
        case ErrorKind::SameDiscipline: return 422;
        case ErrorKind::IoError: return 500;
    }
    return 500;
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
    send_json(res, http_status(e.kind()), {{"error", std::string(e.name())}, {"detail", e.detail()}});
}

json body_of(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
        auto value = json::parse(req.body);
        if (!value.is_object()) throw Error(ErrorKind::ParseError, "request body must be a JSON object");
        return value;
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("request body: ") + e.what());
    }
}

void reject_unknown_keys(const json& body, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : body.items()) {
        (void)value;
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw Error(ErrorKind::ParseError, "$." + key + ": unknown key");
        }
    }
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const Error& e) {
            send_error(res, e);
        } catch (const json::exception& e) {
            send_error(res, Error(ErrorKind::ParseError, e.what()));
        } catch (const std::exception& e) {
            send_json(res, 500, {{"error", "InternalError"}, {"detail", e.what()}});
        }
    };
}

json summary_of(const TestSession& s) {
    json out = {{"id", s.id},
                {"mode", std::string(to_string(s.mode))},
                {"bank_ref", s.bank_ref},
                {"seed", s.seed},
                {"state", std::string(to_string(s.state))},
                {"progress", {{"answered", s.answers.size()}, {"total", s.question_order.size()}}},
                {"created_at", s.created_at}};
    if (s.state == SessionState::Completed) {
        out["completed_at"] = s.completed_at;
        out["report"] = report_to_json(*s.report);
        out["recommendations"] = recommendations_to_json(s.recommendations);
    }
    return out;
}

}  // namespace

HttpService::HttpService(SessionManager& manager)
    : manager_(manager), server_(std::make_unique<httplib::Server>()) {
    // httplib's default also sets SO_REUSEPORT, which lets a second server
    // share an occupied port. Keep only SO_REUSEADDR so a busy port fails.
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
    });
    install_routes();
}

HttpService::~HttpService() { stop(); }

void HttpService::install_routes() {
    auto& srv = *server_;

    srv.Get("/ontologies", guarded([this](const httplib::Request&, httplib::Response& res) {
        json items = json::array();
        for (const auto& [id, m] : manager_.catalog().ontologies) {
            items.push_back({{"discipline_id", id},
                             {"chunks", m.didactic.chunks.size()},
                             {"objects", m.content.objects.size()}});
        }
        send_json(res, 200, {{"ontologies", items}});
    }));

    srv.Get("/banks", guarded([this](const httplib::Request&, httplib::Response& res) {
        json items = json::array();
        for (const auto& [ref, bank] : manager_.catalog().banks) {
            items.push_back({{"bank_ref", ref},
                             {"discipline_id", bank.discipline_id},
                             {"questions", bank.questions.size()}});
        }
        send_json(res, 200, {{"banks", items}});
    }));

    srv.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const auto body = body_of(req);
        reject_unknown_keys(body, {"bank_ref", "mode", "seed", "order"});
        if (!body.contains("bank_ref") || !body["bank_ref"].is_string()) {
            throw Error(ErrorKind::ParseError, "bank_ref must be a string");
        }
        const auto mode = parse_session_mode(body.value("mode", std::string("learning")));
        if (!mode) throw Error(ErrorKind::ParseError, "mode must be 'learning' or 'exam'");
        std::uint64_t seed = 0;
        if (body.contains("seed")) {
            if (!body["seed"].is_number_integer() || body["seed"].get<std::int64_t>() < 0) {
                throw Error(ErrorKind::ParseError, "seed must be a non-negative integer");
            }
            seed = body["seed"].get<std::uint64_t>();
        }
        const auto order = parse_question_order(body.value("order", std::string("shuffled")));
        if (!order) throw Error(ErrorKind::ParseError, "order must be 'shuffled' or 'difficulty_ascending'");
        const auto session = manager_.create_session(body["bank_ref"].get<std::string>(), *mode, seed, *order);
        send_json(res, 201, summary_of(session));
    }));

    srv.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, summary_of(manager_.session(req.matches[1])));
    }));

    srv.Get(R"(/sessions/([^/]+)/next)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        const auto next = manager_.next_question(id);
        const auto s = manager_.session(id);
        send_json(res, 200,
                  {{"session_id", id},
                   {"question", next ? question_to_json(*next, false) : json(nullptr)},
                   {"progress", {{"answered", s.answers.size()}, {"total", s.question_order.size()}}}});
    }));

    srv.Post(R"(/sessions/([^/]+)/answers)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const auto body = body_of(req);
        reject_unknown_keys(body, {"question_id", "response"});
        if (!body.contains("question_id") || !body["question_id"].is_string()) {
            throw Error(ErrorKind::ParseError, "question_id must be a string");
        }
        if (!body.contains("response")) throw Error(ErrorKind::ParseError, "response is required");
        const auto feedback =
            manager_.submit_answer(req.matches[1], body["question_id"].get<std::string>(), body["response"]);
        send_json(res, 200, feedback.to_json());
    }));

    srv.Get(R"(/sessions/([^/]+)/concepts/([^/]+))",
            guarded([this](const httplib::Request& req, httplib::Response& res) {
                const auto view = manager_.review_concept(req.matches[1], req.matches[2]);
                send_json(res, 200, {{"concept", view.to_json()}});
            }));

    srv.Post(R"(/sessions/([^/]+)/complete)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto body = body_of(req);
        RecommendOptions options;
        if (body.contains("deep")) {
            if (!body["deep"].is_boolean()) throw Error(ErrorKind::ParseError, "deep must be a boolean");
            options.deep = body["deep"].get<bool>();
            body.erase("deep");
        }
        const auto policy = policy_from_json(body);
        send_json(res, 200, manager_.complete_session(req.matches[1], policy, options).to_json());
    }));
}

bool HttpService::bind(const std::string& host, int port) { return server_->bind_to_port(host, port); }

int HttpService::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpService::listen() { return server_->listen_after_bind(); }

void HttpService::stop() {
    if (server_) server_->stop();
}

void HttpService::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace ontolearn
