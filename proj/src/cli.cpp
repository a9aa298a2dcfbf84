#include "ontolearn/cli.hpp"

#include <filesystem>
#include <fstream>
#include <thread>

#include "CLI11.hpp"
#include "ontolearn/generator.hpp"
#include "ontolearn/gift.hpp"
#include "ontolearn/grading.hpp"
#include "ontolearn/http_service.hpp"
#include "ontolearn/ontology_io.hpp"
#include "ontolearn/session.hpp"

namespace ontolearn::cli {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::IoError: return 2;
        default: return 1;
    }
}

namespace {

int cmd_validate(const std::string& path, std::ostream& out) {
    const auto m = read_ontology(path);
    const auto report = validate(m);
    for (const auto& v : report.violations) out << v.to_string() << "\n";
    return report.has_errors() ? 1 : 0;
}

int cmd_generate(const std::string& ontology_path, const std::string& spec_path, const std::string& out_path,
                 bool gift, std::ostream& out) {
    const auto m = load_ontology(ontology_path);
    const auto spec = load_generation_spec(spec_path);
    const auto bank = generate_bank(m, spec);
    if (gift) {
        export_gift(bank, out_path);
    } else {
        save_bank(bank, out_path);
    }
    out << "wrote " << bank.questions.size() << " questions to " << out_path << "\n";
    return 0;
}

int cmd_crosslinks(const std::string& path_a, const std::string& path_b, std::ostream& out) {
    const auto a = load_ontology(path_a);
    const auto b = load_ontology(path_b);
    for (const auto& pair : shared_chunks(a, b)) {
        out << a.discipline_id << ":" << pair.in_a.id << "\t" << pair.in_a.label << "\t" << b.discipline_id << ":"
            << pair.in_b.id << "\t" << pair.in_b.label << "\n";
    }
    return 0;
}

int cmd_grade(const std::string& bank_path, const std::string& answers_path, const std::string& policy_path,
              std::ostream& out) {
    const auto bank = load_bank(bank_path);
    const auto answers = load_answers(bank, answers_path);
    const auto policy = load_policy(policy_path);
    const auto report = grade(bank.questions, answers, policy);
    out << nlohmann::json{{"report", report_to_json(report)}}.dump(2) << "\n";
    return 0;
}

int cmd_serve(const std::string& data_dir, const std::string& host, int port, double exam_limit_seconds,
              std::ostream& out, std::ostream& err, const Hooks& hooks) {
    std::error_code ec;
    if (!std::filesystem::is_directory(data_dir, ec)) {
        err << "error: data directory '" << data_dir << "' does not exist\n";
        return 2;
    }
    Catalog catalog;
    try {
        catalog = load_catalog(data_dir);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    SessionOptions options;
    if (exam_limit_seconds > 0) {
        options.exam_time_limit = std::chrono::milliseconds(static_cast<long long>(exam_limit_seconds * 1000));
    }
    SessionManager manager(std::move(catalog), std::filesystem::path(data_dir) / "sessions", options);
    HttpService service(manager);
    int bound = port;
    if (port == 0) {
        bound = service.bind_any_port(host);
        if (bound < 0) {
            err << "error: cannot bind " << host << "\n";
            return 2;
        }
    } else if (!service.bind(host, port)) {
        err << "error: cannot bind " << host << ":" << port << "\n";
        return 2;
    }
    out << "listening on " << host << ":" << bound << std::endl;
    std::thread notifier;
    if (hooks.on_listening) {
        notifier = std::thread([&] {
            service.wait_until_ready();
            hooks.on_listening(service, bound);
        });
    }
    service.listen();
    if (notifier.joinable()) notifier.join();
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    CLI::App app{"Ontology-driven assessment engine", "ontolearn"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Validate an ontology file");
    validate_cmd->add_option("path", validate_path, "Ontology JSON file")->required();

    std::string gen_ontology, gen_spec, gen_out;
    bool gen_gift = false;
    auto* generate_cmd = app.add_subcommand("generate", "Generate a question bank");
    generate_cmd->add_option("ontology", gen_ontology, "Ontology JSON file")->required();
    generate_cmd->add_option("spec", gen_spec, "Generation spec JSON file")->required();
    generate_cmd->add_option("out", gen_out, "Output path")->required();
    generate_cmd->add_flag("--gift", gen_gift, "Write Moodle GIFT instead of JSON");

    std::string cross_a, cross_b;
    auto* crosslinks_cmd = app.add_subcommand("crosslinks", "List chunks shared by two disciplines");
    crosslinks_cmd->add_option("a", cross_a, "First ontology")->required();
    crosslinks_cmd->add_option("b", cross_b, "Second ontology")->required();

    std::string grade_bank, grade_answers, grade_policy;
    auto* grade_cmd = app.add_subcommand("grade", "Grade an answer file");
    grade_cmd->add_option("bank", grade_bank, "Question bank JSON")->required();
    grade_cmd->add_option("answers", grade_answers, "Answers JSON")->required();
    grade_cmd->add_option("policy", grade_policy, "Grading policy JSON")->required();

    std::string serve_dir;
    std::string serve_host = "127.0.0.1";
    int serve_port = 8080;
    double exam_limit = 0;
    auto* serve_cmd = app.add_subcommand("serve", "Run the session service");
    serve_cmd->add_option("--data-dir", serve_dir, "Directory with ontologies/ and banks/")->required();
    serve_cmd->add_option("--port", serve_port, "TCP port (0 picks a free one)");
    serve_cmd->add_option("--host", serve_host, "Bind address");
    serve_cmd->add_option("--exam-time-limit", exam_limit, "Exam wall-clock limit in seconds (0 = none)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (*validate_cmd) return cmd_validate(validate_path, out);
        if (*generate_cmd) return cmd_generate(gen_ontology, gen_spec, gen_out, gen_gift, out);
        if (*crosslinks_cmd) return cmd_crosslinks(cross_a, cross_b, out);
        if (*grade_cmd) return cmd_grade(grade_bank, grade_answers, grade_policy, out);
        if (*serve_cmd) return cmd_serve(serve_dir, serve_host, serve_port, exam_limit, out, err, hooks);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    return 2;
}

}  // namespace ontolearn::cli
