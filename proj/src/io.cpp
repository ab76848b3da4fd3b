#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

namespace hsmor {

namespace {

void require_finite(double v, const std::string& what) {
    if (!std::isfinite(v))
        throw RuntimeError("refusing to write non-finite " + what + " (" +
                           std::to_string(v) + ")");
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw RuntimeError("cannot open '" + path + "' for writing");
    return out;
}

void close_checked(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw RuntimeError("write to '" + path + "' failed");
}

std::string coord_header(std::size_t dimension) {
    if (dimension == 3) return "x,y,z";
    std::string h;
    for (std::size_t p = 0; p < dimension; ++p) {
        if (p) h += ',';
        h += "x" + std::to_string(p + 1);
    }
    return h;
}

std::string coords_row(const Vec& pos) {
    std::string row;
    for (std::size_t p = 0; p < pos.size(); ++p) {
        if (p) row += ',';
        require_finite(pos[p], "coordinate");
        row += format_double(pos[p]);
    }
    return row;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint32_t fnv1a32(std::string_view bytes) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 16777619u;
    }
    return h;
}

std::array<std::uint8_t, 3> signature_color(const std::string& signature) {
    const std::uint32_t h = fnv1a32(signature);
    return {static_cast<std::uint8_t>((h >> 16) & 255), static_cast<std::uint8_t>((h >> 8) & 255),
            static_cast<std::uint8_t>(h & 255)};
}

void write_label_csv(const LabelField& field, const std::string& path) {
    auto out = open_out(path);
    out << coord_header(field.grid.dimension) << ",signature,omega,neg_ln_omega,cycles,degenerate\n";
    for (std::size_t i = 0; i < field.points.size(); ++i) {
        const PointRecord& rec = field.points[i];
        require_finite(rec.omega, "omega");
        require_finite(rec.neg_ln_omega, "neg_ln_omega");
        out << coords_row(field.grid.position(i)) << ',' << rec.signature << ','
            << format_double(rec.omega) << ',' << format_double(rec.neg_ln_omega) << ','
            << rec.cycles << ',' << (rec.degenerate ? 1 : 0) << '\n';
    }
    close_checked(out, path);
}

void write_membrane_csv(const std::vector<MembranePoint>& points, std::size_t dimension,
                        const std::string& path) {
    auto out = open_out(path);
    out << coord_header(dimension) << ",sig_a,sig_b,width\n";
    for (const auto& mp : points) {
        require_finite(mp.width, "width");
        out << coords_row(mp.position) << ',' << mp.side_a << ',' << mp.side_b << ','
            << format_double(mp.width) << '\n';
    }
    close_checked(out, path);
}

void write_profile_csv(const RayProfile& profile, const std::string& path) {
    auto out = open_out(path);
    out << "distance,omega,neg_ln_omega,signature\n";
    for (const auto& s : profile.samples) {
        require_finite(s.distance, "distance");
        require_finite(s.omega, "omega");
        require_finite(s.neg_ln_omega, "neg_ln_omega");
        out << format_double(s.distance) << ',' << format_double(s.omega) << ','
            << format_double(s.neg_ln_omega) << ',' << s.signature << '\n';
    }
    close_checked(out, path);
}

void write_crossings_csv(const std::vector<CrossingEvent>& events, std::size_t dimension,
                         const std::string& path) {
    auto out = open_out(path);
    out << "t," << coord_header(dimension) << ",sig_a,sig_b,width\n";
    for (const auto& ev : events) {
        require_finite(ev.t, "t");
        require_finite(ev.width, "width");
        out << format_double(ev.t) << ',' << coords_row(ev.position) << ',' << ev.before << ','
            << ev.after << ',' << format_double(ev.width) << '\n';
    }
    close_checked(out, path);
}

void write_ppm(const LabelField& field, const std::string& path) {
    if (field.grid.free_axes.size() != 2)
        throw ConfigError("raster output needs a plane scan (two free axes)");
    const std::size_t w = field.grid.free_axes[0].steps;
    const std::size_t h = field.grid.free_axes[1].steps;

    auto out = open_out(path, std::ios::binary);
    out << "P6\n" << w << ' ' << h << "\n255\n";
    std::vector<std::uint8_t> row(w * 3);
    for (std::size_t r = 0; r < h; ++r) {
        const std::size_t iy = h - 1 - r; // row 0 = top = max of the second free axis
        for (std::size_t ix = 0; ix < w; ++ix) {
            const PointRecord& rec = field.points[iy * w + ix];
            const auto rgb = rec.degenerate ? std::array<std::uint8_t, 3>{255, 255, 255}
                                            : signature_color(rec.signature);
            row[ix * 3 + 0] = rgb[0];
            row[ix * 3 + 1] = rgb[1];
            row[ix * 3 + 2] = rgb[2];
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    close_checked(out, path);
}

void write_aura_report(const AuraReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "outside_signature = " << report.outside_signature << '\n';
    out << "fo_extent = " << format_double(report.fo_extent) << '\n';
    for (std::size_t a = 0; a < report.box_edges.size(); ++a)
        out << "box_edge_" << a << " = " << format_double(report.box_edges[a]) << '\n';
    out << "ratio = " << format_double(report.ratio) << '\n';
    out << "directions = " << report.directions.size() << '\n';
    for (std::size_t d = 0; d < report.directions.size(); ++d) {
        const auto& dr = report.directions[d];
        out << "dir_" << d << " = ";
        for (std::size_t p = 0; p < dr.direction.size(); ++p) {
            if (p) out << ',';
            out << format_double(dr.direction[p]);
        }
        out << " radius " << format_double(dr.radius) << '\n';
    }
    close_checked(out, path);
}

std::vector<std::string> color_collisions(const LabelField& field) {
    std::map<std::uint32_t, std::set<std::string>> by_color;
    for (const auto& rec : field.points)
        if (!rec.degenerate) by_color[fnv1a32(rec.signature)].insert(rec.signature);
    std::vector<std::string> out;
    for (const auto& [color, sigs] : by_color) {
        if (sigs.size() < 2) continue;
        std::string entry;
        for (const auto& s : sigs) {
            if (!entry.empty()) entry += " / ";
            entry += s;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

void write_manifest(const ManifestInfo& info, const std::string& path) {
    auto out = open_out(path);
    out << "version = " << info.version << '\n';
    out << "task = " << info.task << '\n';
    out << "config_path = " << info.config_path << '\n';
    out << "workers = " << info.workers << '\n';
    out << "wall_time_s = " << format_double(info.wall_seconds) << '\n';
    out << "outputs =";
    for (const auto& o : info.outputs) out << ' ' << o;
    out << '\n';
    out << "color_collisions = ";
    if (info.collisions.empty()) {
        out << "none\n";
    } else {
        out << '\n';
        for (const auto& c : info.collisions) out << "  " << c << '\n';
    }
    out << "--- config ---\n" << info.config_text;
    if (!info.config_text.empty() && info.config_text.back() != '\n') out << '\n';
    close_checked(out, path);
}

} // namespace hsmor
