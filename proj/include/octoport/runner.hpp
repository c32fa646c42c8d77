#ifndef OCTOPORT_RUNNER_HPP
#define OCTOPORT_RUNNER_HPP

#include <string>
#include <vector>

#include "octoport/config.hpp"

namespace octoport::cli {

// 0 success, 2 validation failure, 3 numerical-tolerance failure,
// 4 infeasible resources
enum ExitCode {
    kOk = 0,
    kValidationFailure = 2,
    kToleranceFailure = 3,
    kInfeasible = 4,
};

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;  // accepted for interface stability; execution is serial
    bool large_memory = false;
};

struct RunOutcome {
    int exit_code = kOk;
    std::vector<std::string> files;
    std::string message;
};

RunOutcome run(const ExperimentConfig& config, const RunOptions& options);

}  // namespace octoport::cli

#endif
