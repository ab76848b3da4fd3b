#include "aura.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hsmor {

std::vector<Vec> axis_diagonal_directions(std::size_t dimension) {
    if (dimension < 1) throw ConfigError("direction set needs dimension >= 1");
    std::vector<Vec> out;
    std::vector<int> comp(dimension, -1);
    while (true) {
        double norm2 = 0.0;
        for (int c : comp) norm2 += c * c;
        if (norm2 > 0.0) {
            Vec dir(dimension);
            const double inv = 1.0 / std::sqrt(norm2);
            for (std::size_t p = 0; p < dimension; ++p) dir[p] = comp[p] * inv;
            out.push_back(std::move(dir));
        }
        std::size_t p = 0;
        while (p < dimension && comp[p] == 1) comp[p++] = -1;
        if (p == dimension) break;
        ++comp[p];
    }
    return out;
}

std::vector<Vec> fibonacci_sphere_directions(std::size_t count) {
    if (count < 1) throw ConfigError("direction count must be >= 1");
    std::vector<Vec> out;
    out.reserve(count);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = 2.0 * M_PI * (static_cast<double>(i) / golden -
                                         std::floor(static_cast<double>(i) / golden));
        out.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

double fixed_object_extent(const ObjectConfig& cfg) {
    const std::size_t drifter = cfg.drifter_index();
    double extent = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (i == drifter) continue;
        for (std::size_t j = i + 1; j < cfg.size(); ++j) {
            if (j == drifter) continue;
            double sum = 0.0;
            for (std::size_t p = 0; p < cfg.dimension(); ++p) {
                const double d = cfg.objects[i].coords[p] - cfg.objects[j].coords[p];
                sum += d * d;
            }
            extent = std::max(extent, std::sqrt(sum));
        }
    }
    return extent;
}

Vec fixed_object_centroid(const ObjectConfig& cfg) {
    const std::size_t drifter = cfg.drifter_index();
    Vec c(cfg.dimension(), 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (i == drifter) continue;
        for (std::size_t p = 0; p < cfg.dimension(); ++p) c[p] += cfg.objects[i].coords[p];
        ++count;
    }
    for (double& v : c) v /= static_cast<double>(count);
    return c;
}

namespace {

Vec along(const Vec& origin, const Vec& dir, double t) {
    Vec p(origin.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = origin[i] + t * dir[i];
    return p;
}

} // namespace

AuraReport aura_extent(const ObjectConfig& cfg, const MetricSpec& spec, const IASettings& ia,
                       const std::vector<Vec>& directions, double r_max) {
    cfg.validate();
    if (directions.size() < 26)
        throw ConfigError("aura measurement needs at least 26 directions (got " +
                          std::to_string(directions.size()) + ")");
    for (const Vec& dir : directions)
        if (dir.size() != cfg.dimension())
            throw ConfigError("direction dimension does not match the object dimension");
    const double extent = fixed_object_extent(cfg);
    if (!(extent > 0.0))
        throw ConfigError("fixed objects are coincident; the aura has no reference extent");
    if (!(r_max > extent)) throw ConfigError("r_max must exceed the fixed-object extent");

    FieldEvaluator eval(cfg, spec, ia);
    const Vec centroid = fixed_object_centroid(cfg);
    const double r0 = 0.01 * extent;

    AuraReport report;
    report.fo_extent = extent;
    Vec box_lo(cfg.dimension(), std::numeric_limits<double>::infinity());
    Vec box_hi(cfg.dimension(), -std::numeric_limits<double>::infinity());

    for (const Vec& dir : directions) {
        // Outward march in multiplicative steps, keeping the last change.
        double r_prev = r0;
        std::string sig_prev = eval.classify(along(centroid, dir, r_prev));
        double change_lo = 0.0, change_hi = 0.0;
        bool seen_change = false;
        for (double r = r0 * 1.1; r_prev < r_max; r *= 1.1) {
            r = std::min(r, r_max);
            const std::string sig = eval.classify(along(centroid, dir, r));
            if (sig != sig_prev) {
                change_lo = r_prev;
                change_hi = r;
                seen_change = true;
                sig_prev = sig;
            }
            r_prev = r;
        }
        const std::string outside = sig_prev;

        DirectionRadius dr;
        dr.direction = dir;
        if (seen_change) {
            // Refine the outermost transition radius.
            double lo = change_lo, hi = change_hi;
            const std::string sig_lo = eval.classify(along(centroid, dir, lo));
            for (int step = 0; step < 60 && (hi - lo) > 1e-12; ++step) {
                const double mid = 0.5 * (lo + hi);
                (eval.classify(along(centroid, dir, mid)) == sig_lo ? lo : hi) = mid;
            }
            dr.radius = 0.5 * (lo + hi);

            // Constancy check from 1.5x the outermost radius outward.
            const double verify_from = 1.5 * dr.radius;
            if (verify_from >= r_max)
                throw RuntimeError("aura not enclosed; raise r_max (outermost transition at " +
                                   std::to_string(dr.radius) + ")");
            for (double r = verify_from; r < r_max; r *= 1.1) {
                if (eval.classify(along(centroid, dir, r)) != outside)
                    throw RuntimeError("aura not enclosed; raise r_max (signature still changing "
                                       "beyond 1.5x the outermost transition)");
            }
            if (eval.classify(along(centroid, dir, r_max)) != outside)
                throw RuntimeError("aura not enclosed; raise r_max");

            const Vec p = along(centroid, dir, dr.radius);
            for (std::size_t a = 0; a < p.size(); ++a) {
                box_lo[a] = std::min(box_lo[a], p[a]);
                box_hi[a] = std::max(box_hi[a], p[a]);
            }
        }
        report.directions.push_back(std::move(dr));

        if (report.outside_signature.empty()) {
            report.outside_signature = outside;
        } else if (report.outside_signature != outside) {
            throw RuntimeError("outside signature differs between directions ('" +
                               report.outside_signature + "' vs '" + outside +
                               "'); raise r_max");
        }
    }

    // Outside the aura the drifter must sit alone at the root; the canonical
    // form then puts the bare drifter label second.
    if (report.outside_signature.size() < cfg.drifter_name.size() + 3 ||
        report.outside_signature.compare(
            report.outside_signature.size() - cfg.drifter_name.size() - 3, std::string::npos,
            " - " + cfg.drifter_name) != 0)
        throw RuntimeError("grouping at r_max does not isolate the drifter ('" +
                           report.outside_signature + "'); raise r_max");

    report.box_edges.resize(cfg.dimension(), 0.0);
    double max_edge = 0.0;
    for (std::size_t a = 0; a < cfg.dimension(); ++a) {
        if (box_lo[a] <= box_hi[a]) report.box_edges[a] = box_hi[a] - box_lo[a];
        max_edge = std::max(max_edge, report.box_edges[a]);
    }
    report.ratio = max_edge / extent;
    return report;
}

std::vector<double> omega_field(const LabelField& field) {
    std::vector<double> out;
    out.reserve(field.points.size());
    for (const auto& rec : field.points) out.push_back(rec.neg_ln_omega);
    return out;
}

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw ConfigError("fit needs at least two samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.r2 = 1.0; // constant data is fit exactly by the horizontal line
    } else {
        fit.r2 = (sxy * sxy) / (sxx * syy);
    }
    return fit;
}

RayProfile far_field_profile(const ObjectConfig& cfg, const MetricSpec& spec, const IASettings& ia,
                             const Vec& origin, const Vec& direction, double d_min, double d_max,
                             std::size_t samples) {
    cfg.validate();
    if (samples < 16) throw ConfigError("profile needs at least 16 samples");
    std::string note;
    if (d_max > 1e12) {
        d_max = 1e12; // binary64 similarity underflows long before this
        note = "d_max clamped to 1e12";
    }
    if (!(d_min > 0.0) || !(d_max / d_min >= 10.0))
        throw ConfigError("profile needs d_max/d_min >= 10");
    double norm = 0.0;
    for (double v : direction) norm += v * v;
    if (!(norm > 0.0)) throw ConfigError("profile direction must be nonzero");
    norm = std::sqrt(norm);
    Vec dir(direction.size());
    for (std::size_t p = 0; p < dir.size(); ++p) dir[p] = direction[p] / norm;

    FieldEvaluator eval(cfg, spec, ia);
    RayProfile profile;
    profile.origin = origin;
    profile.direction = dir;
    profile.note = note;
    const double log_ratio = std::log(d_max / d_min);
    for (std::size_t i = 0; i < samples; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(samples - 1);
        const double d = (i == samples - 1) ? d_max : d_min * std::exp(f * log_ratio);
        const PointRecord rec = eval.evaluate(along(origin, dir, d));
        profile.samples.push_back({d, rec.omega, rec.neg_ln_omega, rec.signature});
    }
    profile.outside_signature = profile.samples.back().signature;

    std::vector<double> xs, ys;
    for (const auto& s : profile.samples) {
        if (s.signature != profile.outside_signature) continue;
        xs.push_back(s.distance);
        ys.push_back(s.neg_ln_omega);
    }
    if (xs.size() >= 2) profile.tail_fit = fit_line(xs, ys);
    return profile;
}

} // namespace hsmor
