#include <csignal>
#include <iostream>
#include <thread>

#include "ontolearn/cli.hpp"
#include "ontolearn/http_service.hpp"

int main(int argc, char** argv) {
    // SIGINT/SIGTERM are taken by a waiter thread so the server can stop
    // cleanly outside signal-handler context.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    ontolearn::cli::Hooks hooks;
    hooks.on_listening = [signals](ontolearn::HttpService& service, int) {
        std::thread([signals, &service] {
            int received = 0;
            sigwait(&signals, &received);
            service.stop();
        }).detach();
    };

    std::vector<std::string> args(argv + 1, argv + argc);
    return ontolearn::cli::run(args, std::cout, std::cerr, hooks);
}
