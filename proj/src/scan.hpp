#ifndef HSMOR_SCAN_HPP
#define HSMOR_SCAN_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ia.hpp"
#include "metric.hpp"
#include "types.hpp"

namespace hsmor {

// UTF-8 for the tie mark prefixed to signatures of degenerate points.
inline constexpr const char* kDegenerateMark = "\xE2\x8A\xA5";

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t steps = 2;
};

// Rectilinear drifter grid. A plane scan fixes one axis at a constant value;
// a volume scan leaves all axes free. Free axes are listed in ascending axis
// order. Axis positions are lo + i*(hi-lo)/(steps-1) with the endpoints
// included exactly.
struct ScanGrid {
    std::size_t dimension = 3;
    std::optional<std::size_t> fixed_axis;
    double fixed_value = 0.0;
    std::vector<AxisRange> free_axes;
    std::size_t max_points = std::size_t(1) << 24;

    void validate() const;
    std::vector<std::size_t> free_axis_indices() const;
    std::size_t total_points() const;
    // Flat index order: first free axis fastest.
    std::vector<std::size_t> indices(std::size_t flat) const;
    Vec position(std::size_t flat) const;

    static double axis_value(const AxisRange& ax, std::size_t i);
};

struct PointRecord {
    std::string signature; // degenerate points carry the tie-mark prefix
    double omega = 1.0;
    double neg_ln_omega = 0.0;
    int cycles = 0;
    bool degenerate = false;
};

struct LabelField {
    ScanGrid grid;
    std::vector<PointRecord> points; // grid-index order
};

// Classifies one drifter position at a time against a fixed object set.
// Not thread-safe; give each worker its own instance.
class FieldEvaluator {
public:
    FieldEvaluator(ObjectConfig cfg, MetricSpec spec, IASettings ia);

    PointRecord evaluate(const Vec& drifter_position);
    std::string classify(const Vec& drifter_position) { return evaluate(drifter_position).signature; }

    const ObjectConfig& config() const { return cfg_; }

private:
    ObjectConfig cfg_;
    MetricSpec spec_;
    IASettings ia_;
    std::size_t drifter_idx_;
};

// Per-point classification over the grid. Output is independent of worker
// count: every point is a pure function of its position and results are
// assembled in grid-index order.
LabelField scan(const ObjectConfig& cfg, const MetricSpec& spec, const ScanGrid& grid,
                const IASettings& ia, std::size_t workers = 1);

struct TransitionEdge {
    std::size_t from = 0; // flat grid indices, from < to along one axis
    std::size_t to = 0;
    std::size_t axis = 0;
};

// Every axis-aligned neighbor pair with differing signatures, each reported
// exactly once, in ascending (from, axis) order.
std::vector<TransitionEdge> detect_transitions(const LabelField& field);

struct MembranePoint {
    Vec position;
    std::string side_a;
    std::string side_b;
    double width = 0.0;
    Vec direction; // unit vector of the refined segment, a -> b
};

using Classifier = std::function<std::string(const Vec&)>;

// Bisection between two differently-classified positions until the bracket
// is narrower than tol (or max_steps is hit; the achieved width is reported
// either way). A third signature appearing inside moves the search to the
// sub-interval nearest position a.
MembranePoint refine_boundary(const Vec& a, const Vec& b, const Classifier& classify,
                              double tol = 1e-12, int max_steps = 60);

// Width of any contiguous band separating the two ambient regions at the
// boundary. Probes at geometrically shrinking offsets along the refined
// segment's direction to bracket the transition, then locates both ambient
// region edges by bisection; whatever lies between them (a third signature
// or a degenerate sliver) is the band. Returns 0 for a clean boundary.
double measure_ima_thickness(const MembranePoint& entry, const Classifier& classify,
                             double probe_scale);

} // namespace hsmor

#endif
