#include "metric.hpp"

#include <cmath>

namespace hsmor {

namespace {

std::vector<std::string> object_names(const ObjectConfig& cfg) {
    std::vector<std::string> names;
    names.reserve(cfg.objects.size());
    for (const auto& obj : cfg.objects) names.push_back(obj.name);
    return names;
}

bool identical_coords(const Vec& a, const Vec& b) {
    for (std::size_t p = 0; p < a.size(); ++p)
        if (a[p] != b[p]) return false;
    return true;
}

} // namespace

SquareMatrix euclidean_dissimilarity(const ObjectConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.size();
    const std::size_t dim = cfg.dimension();
    SquareMatrix m(object_names(cfg), Semantics::Dissimilarity);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t p = 0; p < dim; ++p) {
                const double d = cfg.objects[i].coords[p] - cfg.objects[j].coords[p];
                sum += d * d;
            }
            m.set(i, j, std::sqrt(sum));
        }
    }
    return m;
}

SquareMatrix monomer_matrix(const ObjectConfig& cfg, std::size_t p, const MetricSpec& spec) {
    cfg.validate();
    spec.validate();
    if (spec.kind == MetricKind::ED)
        throw ConfigError("ED is not hybridized; monomer matrices exist only for CB and XR");
    if (p >= cfg.dimension())
        throw ConfigError("parameter index " + std::to_string(p) + " out of range for dimension " +
                          std::to_string(cfg.dimension()));
    const std::size_t n = cfg.size();
    const bool xr = spec.kind == MetricKind::XR;
    SquareMatrix m(object_names(cfg), xr ? Semantics::Similarity : Semantics::Dissimilarity);
    const double log_b = std::log(spec.b);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double ad = std::fabs(cfg.objects[i].coords[p] - cfg.objects[j].coords[p]);
            m.set(i, j, xr ? std::exp(-ad * log_b) : std::max(ad, spec.cb_floor));
        }
    }
    return m;
}

SquareMatrix hybridize_geometric_mean(const std::vector<SquareMatrix>& monomers) {
    if (monomers.empty()) throw ConfigError("hybridization needs at least one monomer matrix");
    const SquareMatrix& first = monomers.front();
    const std::size_t n = first.size();
    for (const auto& m : monomers) {
        if (m.semantics() != first.semantics())
            throw ConfigError("cannot hybridize monomers with mixed semantics");
        if (m.names() != first.names())
            throw ConfigError("cannot hybridize monomers over different object sets");
    }
    SquareMatrix out(first.names(), first.semantics());
    const double inv_p = 1.0 / static_cast<double>(monomers.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double log_sum = 0.0;
            for (const auto& m : monomers) {
                const double v = m(i, j);
                if (!(v > 0.0))
                    throw ConfigError("hybridization requires positive off-diagonal entries");
                log_sum += std::log(v);
            }
            out.set(i, j, std::exp(log_sum * inv_p));
        }
    }
    return out;
}

namespace {

SquareMatrix reciprocal_similarity(const SquareMatrix& d) {
    SquareMatrix s(d.names(), Semantics::Similarity);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            s.set(i, j, 1.0 / (1.0 + d(i, j)));
    return s;
}

// Identical coordinate vectors mean similarity 1 exactly, regardless of the
// CB floor's residual dissimilarity.
void clamp_duplicates(const ObjectConfig& cfg, SquareMatrix& s) {
    for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.size(); ++j)
            if (identical_coords(cfg.objects[i].coords, cfg.objects[j].coords)) s.set(i, j, 1.0);
}

} // namespace

SquareMatrix similarity_matrix(const ObjectConfig& cfg, const MetricSpec& spec) {
    cfg.validate();
    spec.validate();
    SquareMatrix s;
    if (spec.kind == MetricKind::ED) {
        s = reciprocal_similarity(euclidean_dissimilarity(cfg));
    } else {
        std::vector<SquareMatrix> monomers;
        monomers.reserve(cfg.dimension());
        for (std::size_t p = 0; p < cfg.dimension(); ++p)
            monomers.push_back(monomer_matrix(cfg, p, spec));
        SquareMatrix h = hybridize_geometric_mean(monomers);
        s = (spec.kind == MetricKind::XR) ? std::move(h) : reciprocal_similarity(h);
    }
    clamp_duplicates(cfg, s);
    return s;
}

} // namespace hsmor
