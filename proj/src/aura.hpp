#ifndef HSMOR_AURA_HPP
#define HSMOR_AURA_HPP

#include <string>
#include <vector>

#include "scan.hpp"
#include "types.hpp"

namespace hsmor {

struct DirectionRadius {
    Vec direction;       // unit
    double radius = 0.0; // outermost transition distance from the centroid; 0 = none seen
};

struct AuraReport {
    std::vector<DirectionRadius> directions;
    Vec box_edges;                // axis-aligned extent of the transition points
    std::string outside_signature;
    double fo_extent = 0.0;       // diameter of the fixed-object set
    double ratio = 0.0;           // max box edge / fo_extent
};

struct ProfileSample {
    double distance = 0.0;
    double omega = 1.0;
    double neg_ln_omega = 0.0;
    std::string signature;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

struct RayProfile {
    Vec origin;
    Vec direction; // unit
    std::vector<ProfileSample> samples;
    std::string outside_signature; // signature of the farthest sample
    LinearFit tail_fit;            // -ln(omega) vs distance over the outside-signature tail
    std::string note;              // set when inputs had to be adjusted (distance clamp)
};

// All nonzero direction vectors with components in {-1,0,1}, normalized;
// 26 directions in three dimensions.
std::vector<Vec> axis_diagonal_directions(std::size_t dimension);

// Evenly distributed unit vectors on the sphere (3D only).
std::vector<Vec> fibonacci_sphere_directions(std::size_t count);

// Diameter of the fixed-object set (the drifter excluded).
double fixed_object_extent(const ObjectConfig& cfg);

// Mean position of the fixed objects (the drifter excluded).
Vec fixed_object_centroid(const ObjectConfig& cfg);

// Marches outward from the fixed-object centroid along every direction in
// multiplicative steps, records the outermost signature transition, refines
// it by bisection, and verifies the signature stays constant from 1.5x the
// outermost radius to r_max. Throws RuntimeError when the signature is still
// changing near r_max ("aura not enclosed").
AuraReport aura_extent(const ObjectConfig& cfg, const MetricSpec& spec, const IASettings& ia,
                       const std::vector<Vec>& directions, double r_max);

// The -ln(omega) channel of a populated field, in grid-index order.
std::vector<double> omega_field(const LabelField& field);

// Samples omega along a ray at log-spaced distances and fits -ln(omega)
// linearly against distance over the tail that shares the outside signature.
RayProfile far_field_profile(const ObjectConfig& cfg, const MetricSpec& spec, const IASettings& ia,
                             const Vec& origin, const Vec& direction, double d_min, double d_max,
                             std::size_t samples);

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace hsmor

#endif
