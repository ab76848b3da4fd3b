#ifndef HSMOR_METRIC_HPP
#define HSMOR_METRIC_HPP

#include <vector>

#include "types.hpp"

namespace hsmor {

// Pairwise Euclidean distances over all objects (drifter included).
SquareMatrix euclidean_dissimilarity(const ObjectConfig& cfg);

// Single-parameter matrix for hybridization. CB gives dissimilarities
// max(|dx_p|, cb_floor) off the diagonal; XR gives similarities b^(-|dx_p|).
// ED is not hybridized and is rejected here.
SquareMatrix monomer_matrix(const ObjectConfig& cfg, std::size_t p, const MetricSpec& spec);

// Cell-wise geometric mean of the monomers, computed in log space over the
// off-diagonal cells; the diagonal is carried through unchanged.
SquareMatrix hybridize_geometric_mean(const std::vector<SquareMatrix>& monomers);

// The similarity matrix the grouping engine consumes. XR hybridizes its
// similarity monomers directly; ED and CB produce a dissimilarity first and
// convert with s = 1/(1+d). Pairs of identical coordinate vectors are
// clamped to similarity 1 under every metric.
SquareMatrix similarity_matrix(const ObjectConfig& cfg, const MetricSpec& spec);

} // namespace hsmor

#endif
