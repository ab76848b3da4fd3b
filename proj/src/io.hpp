#ifndef HSMOR_IO_HPP
#define HSMOR_IO_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aura.hpp"
#include "scan.hpp"
#include "trajectory.hpp"

namespace hsmor {

// 17 significant digits; round-trips binary64 exactly.
std::string format_double(double v);

std::uint32_t fnv1a32(std::string_view bytes);

// RGB from the 32-bit signature hash: R=(h>>16)&255, G=(h>>8)&255, B=h&255.
std::array<std::uint8_t, 3> signature_color(const std::string& signature);

// Columns: x,y,z,signature,omega,neg_ln_omega,cycles,degenerate (coordinate
// headers become x1..xP outside of three dimensions). Rows follow grid-index
// order. Throws RuntimeError on non-finite values — NaN is never legal output.
void write_label_csv(const LabelField& field, const std::string& path);

// Columns: x,y,z,sig_a,sig_b,width.
void write_membrane_csv(const std::vector<MembranePoint>& points, std::size_t dimension,
                        const std::string& path);

// Columns: distance,omega,neg_ln_omega,signature.
void write_profile_csv(const RayProfile& profile, const std::string& path);

// Columns: t,x,y,z,sig_a,sig_b,width.
void write_crossings_csv(const std::vector<CrossingEvent>& events, std::size_t dimension,
                         const std::string& path);

// Binary PPM (P6, maxval 255) of a two-free-axes field. Pixel color is the
// signature hash color; degenerate points render white. Row 0 holds the
// maximum of the second free axis.
void write_ppm(const LabelField& field, const std::string& path);

void write_aura_report(const AuraReport& report, const std::string& path);

// Distinct signatures that map to one color, reported in the manifest.
std::vector<std::string> color_collisions(const LabelField& field);

struct ManifestInfo {
    std::string version;
    std::string task;
    std::string config_path;
    std::string config_text;
    std::size_t workers = 1;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;
    std::vector<std::string> collisions;
};

void write_manifest(const ManifestInfo& info, const std::string& path);

} // namespace hsmor

#endif
