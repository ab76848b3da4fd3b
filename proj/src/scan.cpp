#include "scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace hsmor {

double ScanGrid::axis_value(const AxisRange& ax, std::size_t i) {
    if (i == 0) return ax.lo;
    if (i == ax.steps - 1) return ax.hi; // endpoints exact
    return ax.lo + static_cast<double>(i) * (ax.hi - ax.lo) / static_cast<double>(ax.steps - 1);
}

void ScanGrid::validate() const {
    const std::size_t expected = fixed_axis ? dimension - 1 : dimension;
    if (dimension < 1) throw ConfigError("grid dimension must be >= 1");
    if (fixed_axis && *fixed_axis >= dimension)
        throw ConfigError("fixed axis index out of range");
    if (free_axes.size() != expected)
        throw ConfigError("grid has " + std::to_string(free_axes.size()) + " free axes, expected " +
                          std::to_string(expected));
    for (const auto& ax : free_axes) {
        if (!(ax.lo < ax.hi)) throw ConfigError("grid axis must have min < max");
        if (ax.steps < 2) throw ConfigError("grid axis needs at least 2 steps");
    }
    // Budget check, guarded against the product itself overflowing.
    std::size_t total = 1;
    for (const auto& ax : free_axes) {
        if (total > std::numeric_limits<std::size_t>::max() / ax.steps)
            throw ConfigError("scan size overflows; reduce steps");
        total *= ax.steps;
    }
    if (total > max_points)
        throw ConfigError("scan would evaluate " + std::to_string(total) +
                          " points, over the budget of " + std::to_string(max_points) +
                          "; reduce steps or raise max_points");
}

std::vector<std::size_t> ScanGrid::free_axis_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < dimension; ++a)
        if (!fixed_axis || a != *fixed_axis) out.push_back(a);
    return out;
}

std::size_t ScanGrid::total_points() const {
    std::size_t total = 1;
    for (const auto& ax : free_axes) total *= ax.steps;
    return total;
}

std::vector<std::size_t> ScanGrid::indices(std::size_t flat) const {
    std::vector<std::size_t> idx(free_axes.size());
    for (std::size_t a = 0; a < free_axes.size(); ++a) {
        idx[a] = flat % free_axes[a].steps;
        flat /= free_axes[a].steps;
    }
    return idx;
}

Vec ScanGrid::position(std::size_t flat) const {
    Vec pos(dimension, 0.0);
    if (fixed_axis) pos[*fixed_axis] = fixed_value;
    const auto free_idx = free_axis_indices();
    const auto steps_idx = indices(flat);
    for (std::size_t a = 0; a < free_axes.size(); ++a)
        pos[free_idx[a]] = axis_value(free_axes[a], steps_idx[a]);
    return pos;
}

FieldEvaluator::FieldEvaluator(ObjectConfig cfg, MetricSpec spec, IASettings ia)
    : cfg_(std::move(cfg)), spec_(std::move(spec)), ia_(std::move(ia)) {
    cfg_.validate();
    spec_.validate();
    ia_.validate();
    drifter_idx_ = cfg_.drifter_index();
}

PointRecord FieldEvaluator::evaluate(const Vec& drifter_position) {
    if (drifter_position.size() != cfg_.dimension())
        throw ConfigError("drifter position has wrong dimension");
    cfg_.objects[drifter_idx_].coords = drifter_position;
    const SquareMatrix s = similarity_matrix(cfg_, spec_);
    const GroupingTree tree = build_grouping_tree(s, ia_, cfg_.drifter_name);

    PointRecord rec;
    rec.degenerate = tree.any_degenerate;
    rec.signature = canonical_signature(tree);
    if (rec.degenerate) rec.signature = std::string(kDegenerateMark) + rec.signature;
    rec.omega = tree.root_omega;
    rec.neg_ln_omega = -std::log(tree.root_omega) + 0.0; // +0.0 folds -0 into 0
    rec.cycles = tree.root_cycles;
    return rec;
}

LabelField scan(const ObjectConfig& cfg, const MetricSpec& spec, const ScanGrid& grid,
                const IASettings& ia, std::size_t workers) {
    cfg.validate();
    grid.validate();
    if (grid.dimension != cfg.dimension())
        throw ConfigError("grid dimension " + std::to_string(grid.dimension) +
                          " does not match object dimension " + std::to_string(cfg.dimension()));

    const std::size_t total = grid.total_points();
    LabelField field;
    field.grid = grid;
    field.points.resize(total);

    const std::size_t nworkers = std::max<std::size_t>(1, std::min(workers, total));
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&](std::size_t begin, std::size_t end) {
        try {
            FieldEvaluator eval(cfg, spec, ia);
            for (std::size_t i = begin; i < end; ++i)
                field.points[i] = eval.evaluate(grid.position(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (nworkers == 1) {
        work(0, total);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(nworkers);
        for (std::size_t w = 0; w < nworkers; ++w) {
            const std::size_t begin = total * w / nworkers;
            const std::size_t end = total * (w + 1) / nworkers;
            threads.emplace_back(work, begin, end);
        }
        for (auto& t : threads) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return field;
}

std::vector<TransitionEdge> detect_transitions(const LabelField& field) {
    const ScanGrid& grid = field.grid;
    std::vector<TransitionEdge> edges;
    std::vector<std::size_t> strides(grid.free_axes.size());
    std::size_t stride = 1;
    for (std::size_t a = 0; a < grid.free_axes.size(); ++a) {
        strides[a] = stride;
        stride *= grid.free_axes[a].steps;
    }
    const std::size_t total = grid.total_points();
    for (std::size_t flat = 0; flat < total; ++flat) {
        const auto idx = grid.indices(flat);
        for (std::size_t a = 0; a < grid.free_axes.size(); ++a) {
            if (idx[a] + 1 >= grid.free_axes[a].steps) continue;
            const std::size_t nb = flat + strides[a];
            if (field.points[flat].signature != field.points[nb].signature)
                edges.push_back({flat, nb, a});
        }
    }
    return edges;
}

namespace {

double distance(const Vec& a, const Vec& b) {
    double sum = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p) {
        const double d = a[p] - b[p];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Vec midpoint(const Vec& a, const Vec& b) {
    Vec m(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) m[p] = 0.5 * (a[p] + b[p]);
    return m;
}

} // namespace

MembranePoint refine_boundary(const Vec& a, const Vec& b, const Classifier& classify,
                              double tol, int max_steps) {
    std::string sig_a = classify(a);
    std::string sig_b = classify(b);
    if (sig_a == sig_b)
        throw std::invalid_argument("refine_boundary endpoints share the signature '" + sig_a + "'");

    Vec lo = a, hi = b;
    int steps = 0;
    while (distance(lo, hi) > tol && steps < max_steps) {
        const Vec mid = midpoint(lo, hi);
        const std::string sig_m = classify(mid);
        if (sig_m == sig_a) {
            lo = mid;
        } else {
            // Either the b side or a third signature; in both cases the
            // boundary nearest to a lies in [lo, mid].
            hi = mid;
            sig_b = sig_m;
        }
        ++steps;
    }

    MembranePoint out;
    out.position = midpoint(lo, hi);
    out.side_a = sig_a;
    out.side_b = sig_b;
    out.width = distance(lo, hi);
    out.direction.resize(a.size());
    const double len = distance(a, b);
    for (std::size_t p = 0; p < a.size(); ++p) out.direction[p] = (b[p] - a[p]) / len;
    return out;
}

double measure_ima_thickness(const MembranePoint& entry, const Classifier& classify,
                             double probe_scale) {
    const auto at = [&](double t) {
        Vec p(entry.position.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = entry.position[i] + t * entry.direction[i];
        return p;
    };

    // Shrink the probe offset until the a-side signature reappears; the
    // classification at the matching opposite offset is the ambient far
    // side (refinement may have recorded an inner band as side_b).
    double d = probe_scale;
    std::string far_side;
    bool bracketed = false;
    for (int k = 0; k < 80; ++k) {
        if (classify(at(-d)) == entry.side_a) {
            far_side = classify(at(d));
            if (far_side != entry.side_a) {
                bracketed = true;
                break;
            }
        }
        d *= 0.5;
    }
    if (!bracketed) return 0.0;

    const int kEdgeSteps = 60;
    // Rightmost extent of the side_a region.
    double lo = -d, hi = d;
    for (int k = 0; k < kEdgeSteps; ++k) {
        const double mid = 0.5 * (lo + hi);
        (classify(at(mid)) == entry.side_a ? lo : hi) = mid;
    }
    const double edge_a = 0.5 * (lo + hi);
    // Leftmost extent of the far-side region.
    lo = -d;
    hi = d;
    for (int k = 0; k < kEdgeSteps; ++k) {
        const double mid = 0.5 * (lo + hi);
        (classify(at(mid)) == far_side ? hi : lo) = mid;
    }
    const double edge_b = 0.5 * (lo + hi);

    return std::max(0.0, edge_b - edge_a);
}

} // namespace hsmor
