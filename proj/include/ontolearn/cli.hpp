#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "ontolearn/error.hpp"

namespace ontolearn {

class HttpService;

namespace cli {

// 0 success, 1 domain failure, 2 environment failure (I/O, parse, bind).
int exit_code_for(ErrorKind kind);

struct Hooks {
    // Called from the serving thread's caller once the port is bound and
    // the server is about to accept connections.
    std::function<void(HttpService&, int port)> on_listening;
};

// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace cli
}  // namespace ontolearn
