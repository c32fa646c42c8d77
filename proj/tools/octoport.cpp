#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "octoport/runner.hpp"

namespace {

int load_config(const std::string& path, octoport::cli::ParseResult& result) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open config file: " << path << "\n";
        return octoport::cli::kValidationFailure;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    result = octoport::cli::parse_config(buf.str());
    if (!result.ok()) {
        std::cerr << "config validation failed:\n";
        for (const auto& e : result.errors) std::cerr << "  - " << e << "\n";
        return octoport::cli::kValidationFailure;
    }
    return octoport::cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eight-port homodyne detection laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    octoport::cli::RunOptions options;

    CLI::App* run_cmd = app.add_subcommand("run", "execute an experiment");
    run_cmd->add_option("config", config_path, "config file")->required();
    run_cmd->add_option("--out", options.out_dir, "output directory");
    run_cmd->add_option("--threads", options.threads,
                        "worker threads (results are order-independent)");
    run_cmd->add_flag("--large-memory", options.large_memory,
                      "allow radii beyond the default memory envelope");

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "parse and validate a config");
    validate_cmd->add_option("config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    octoport::cli::ParseResult parsed;
    int rc = load_config(config_path, parsed);
    if (rc != octoport::cli::kOk) return rc;

    if (validate_cmd->parsed()) {
        std::cout << "config ok: " << kind_name(parsed.config->kind) << "\n";
        return octoport::cli::kOk;
    }

    if (options.threads < 1) options.threads = 1;
    octoport::cli::RunOutcome outcome =
        octoport::cli::run(*parsed.config, options);
    if (!outcome.message.empty()) std::cerr << outcome.message << "\n";
    for (const auto& f : outcome.files) std::cout << "wrote " << f << "\n";
    return outcome.exit_code;
}
