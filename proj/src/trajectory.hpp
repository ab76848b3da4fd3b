#ifndef HSMOR_TRAJECTORY_HPP
#define HSMOR_TRAJECTORY_HPP

#include <string>
#include <vector>

#include "scan.hpp"
#include "types.hpp"

namespace hsmor {

enum class PathKind { Segment, Polyline };

struct PathSpec {
    PathKind kind = PathKind::Segment;
    std::vector<Vec> waypoints;       // >= 2, consecutive waypoints distinct
    double samples_per_unit = 64.0;

    void validate() const;
    double total_length() const;
    Vec at(double t) const; // arclength-proportional parameter in [0,1]
};

struct CrossingEvent {
    double t = 0.0; // path parameter of the crossing
    Vec position;
    std::string before;
    std::string after;
    double width = 0.0; // refined bracket width in coordinate units
};

// Samples the path uniformly, bisection-refines every signature change, and
// re-checks at x4 density (one retry at x16 when the two passes disagree on
// the crossing count). Events are ordered by t; an empty list is valid.
std::vector<CrossingEvent> trace_path(const ObjectConfig& cfg, const MetricSpec& spec,
                                      const IASettings& ia, const PathSpec& path);

// Same, against an arbitrary position classifier (used by tests).
std::vector<CrossingEvent> trace_path_with(const Classifier& classify, const PathSpec& path);

} // namespace hsmor

#endif
