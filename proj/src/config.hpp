#ifndef HSMOR_CONFIG_HPP
#define HSMOR_CONFIG_HPP

#include <optional>
#include <string>
#include <variant>

#include "aura.hpp"
#include "scan.hpp"
#include "trajectory.hpp"
#include "types.hpp"

namespace hsmor {

struct ScanTask {
    ScanGrid grid;
};

enum class DirectionSet { AxisDiagonal, Fibonacci };

struct AuraTask {
    std::optional<double> r_max; // default 50 x fixed-object extent
    DirectionSet direction_set = DirectionSet::AxisDiagonal;
    std::size_t direction_count = 64; // fibonacci only
};

struct ProfileTask {
    std::optional<Vec> origin; // default: fixed-object centroid
    Vec direction;
    std::optional<double> d_min; // default 10 x extent
    std::optional<double> d_max; // default 1000 x extent
    std::size_t samples = 64;
};

struct TrajectoryTask {
    PathSpec path;
};

struct RefineTask {
    Vec point_a;
    Vec point_b;
    double tol = 1e-12;
    std::optional<double> probe_scale; // set = also measure band thickness
};

using TaskSpec = std::variant<ScanTask, AuraTask, ProfileTask, TrajectoryTask, RefineTask>;

struct RunConfig {
    ObjectConfig objects;
    MetricSpec metric;
    IASettings ia;
    TaskSpec task;
    std::string raw_text; // echoed into the run manifest

    const char* task_name() const;
};

// Strict INI-style parser: sections [objects], [metric], [ia], [task];
// "#" starts a comment; unknown sections or keys are errors. Throws
// ConfigError with the offending line number.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::string& path);

} // namespace hsmor

#endif
