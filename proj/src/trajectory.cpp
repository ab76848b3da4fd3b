#include "trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace hsmor {

namespace {

double distance(const Vec& a, const Vec& b) {
    double sum = 0.0;
    for (std::size_t p = 0; p < a.size(); ++p) {
        const double d = a[p] - b[p];
        sum += d * d;
    }
    return std::sqrt(sum);
}

} // namespace

void PathSpec::validate() const {
    if (waypoints.size() < 2) throw ConfigError("path needs at least 2 waypoints");
    if (kind == PathKind::Segment && waypoints.size() != 2)
        throw ConfigError("a segment path has exactly 2 waypoints");
    const std::size_t dim = waypoints.front().size();
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        if (waypoints[i].size() != dim) throw ConfigError("path waypoints have mixed dimensions");
        if (i > 0 && distance(waypoints[i - 1], waypoints[i]) == 0.0)
            throw ConfigError("consecutive path waypoints must be distinct");
    }
    if (!(samples_per_unit > 0.0)) throw ConfigError("samples_per_unit must be > 0");
}

double PathSpec::total_length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i)
        len += distance(waypoints[i - 1], waypoints[i]);
    return len;
}

Vec PathSpec::at(double t) const {
    const double target = std::clamp(t, 0.0, 1.0) * total_length();
    double walked = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        const double seg = distance(waypoints[i - 1], waypoints[i]);
        if (walked + seg >= target || i == waypoints.size() - 1) {
            const double f = seg > 0.0 ? std::min(1.0, (target - walked) / seg) : 0.0;
            Vec p(waypoints[i].size());
            for (std::size_t q = 0; q < p.size(); ++q)
                p[q] = waypoints[i - 1][q] + f * (waypoints[i][q] - waypoints[i - 1][q]);
            return p;
        }
        walked += seg;
    }
    return waypoints.back();
}

namespace {

std::vector<CrossingEvent> trace_once(const Classifier& classify, const PathSpec& path,
                                      std::size_t n_samples) {
    const double length = path.total_length();
    std::vector<CrossingEvent> events;
    std::string sig_prev = classify(path.at(0.0));
    double t_prev = 0.0;
    for (std::size_t i = 1; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_samples - 1);
        const std::string sig = classify(path.at(t));
        if (sig != sig_prev) {
            double lo = t_prev, hi = t;
            std::string sig_lo = sig_prev, sig_hi = sig;
            const double t_tol = 1e-12 / std::max(length, 1e-12);
            for (int step = 0; step < 60 && (hi - lo) > t_tol; ++step) {
                const double mid = 0.5 * (lo + hi);
                const std::string sig_mid = classify(path.at(mid));
                if (sig_mid == sig_lo) {
                    lo = mid;
                } else {
                    hi = mid;
                    sig_hi = sig_mid;
                }
            }
            CrossingEvent ev;
            ev.t = 0.5 * (lo + hi);
            ev.position = path.at(ev.t);
            // Sides are what a re-classification at 1e-9 from the crossing
            // sees; the bracket labels remain the fallback when structure
            // lives below that offset (the bisection may have converged onto
            // a membrane-core sliver narrower than any useful side label).
            const double eps_t = 1e-9 / std::max(length, 1e-12);
            ev.before = classify(path.at(std::max(0.0, ev.t - eps_t)));
            ev.after = classify(path.at(std::min(1.0, ev.t + eps_t)));
            if (ev.before == ev.after) {
                ev.before = sig_lo;
                ev.after = sig_hi;
            }
            ev.width = (hi - lo) * length;
            events.push_back(std::move(ev));
        }
        sig_prev = sig;
        t_prev = t;
    }
    return events;
}

} // namespace

std::vector<CrossingEvent> trace_path_with(const Classifier& classify, const PathSpec& path) {
    path.validate();
    const std::size_t base =
        std::max<std::size_t>(2, static_cast<std::size_t>(
                                     std::ceil(path.total_length() * path.samples_per_unit)) + 1);
    const auto pass1 = trace_once(classify, path, base);
    const auto pass2 = trace_once(classify, path, base * 4);
    if (pass1.size() == pass2.size()) return pass2;
    // The passes disagree; a region slipped below the base resolution.
    return trace_once(classify, path, base * 16);
}

std::vector<CrossingEvent> trace_path(const ObjectConfig& cfg, const MetricSpec& spec,
                                      const IASettings& ia, const PathSpec& path) {
    FieldEvaluator eval(cfg, spec, ia);
    return trace_path_with([&eval](const Vec& p) { return eval.classify(p); }, path);
}

} // namespace hsmor
