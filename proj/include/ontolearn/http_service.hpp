#pragma once

#include <memory>
#include <string>

#include "ontolearn/error.hpp"
#include "ontolearn/session.hpp"

namespace httplib {
class Server;
}

namespace ontolearn {

// HTTP status used for each error kind; the body is always
// {"error": <name>, "detail": <text>}.
int http_status(ErrorKind kind);

// JSON-over-HTTP front end for a SessionManager:
//   POST /sessions                       {bank_ref, mode, seed[, order]}
//   GET  /sessions/{id}                  session summary (no answer keys)
//   GET  /sessions/{id}/next             next unanswered question
//   POST /sessions/{id}/answers          {question_id, response}
//   GET  /sessions/{id}/concepts/{dci}   learning mode only
//   POST /sessions/{id}/complete         {pass_mark, entry_thresholds, unanswered_penalty, deep}
//   GET  /ontologies, GET /banks
class HttpService {
public:
    explicit HttpService(SessionManager& manager);
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    // False when the address cannot be bound (port in use, bad host).
    bool bind(const std::string& host, int port);
    // Binds an ephemeral port and returns it, or -1.
    int bind_any_port(const std::string& host);
    // Blocks serving requests until stop().
    bool listen();
    void stop();
    void wait_until_ready() const;

private:
    void install_routes();

    SessionManager& manager_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace ontolearn
