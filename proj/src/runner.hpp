#ifndef HSMOR_RUNNER_HPP
#define HSMOR_RUNNER_HPP

#include <string>
#include <vector>

#include "config.hpp"

namespace hsmor {

struct RunResult {
    std::vector<std::string> outputs; // file names inside the output directory
};

// Executes the configured task and writes its outputs plus manifest.txt into
// out_dir (created if missing). config_path is echoed into the manifest.
RunResult execute_run(const RunConfig& cfg, const std::string& out_dir, std::size_t workers,
                      const std::string& config_path = "<inline>");

} // namespace hsmor

#endif
