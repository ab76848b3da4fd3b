#include "runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "io.hpp"
#include "version.hpp"

namespace hsmor {

namespace {

namespace fs = std::filesystem;

struct TaskOutput {
    std::vector<std::string> files;
    std::vector<std::string> collisions;
};

TaskOutput run_scan(const RunConfig& cfg, const ScanTask& task, const fs::path& dir,
                    std::size_t workers) {
    const LabelField field = scan(cfg.objects, cfg.metric, task.grid, cfg.ia, workers);
    TaskOutput out;
    write_label_csv(field, (dir / "labels.csv").string());
    out.files.push_back("labels.csv");
    if (field.grid.free_axes.size() == 2) {
        write_ppm(field, (dir / "field.ppm").string());
        out.files.push_back("field.ppm");
    }
    out.collisions = color_collisions(field);
    return out;
}

TaskOutput run_aura(const RunConfig& cfg, const AuraTask& task, const fs::path& dir) {
    const double extent = fixed_object_extent(cfg.objects);
    const double r_max = task.r_max ? *task.r_max : 50.0 * extent;
    const auto directions = task.direction_set == DirectionSet::AxisDiagonal
                                ? axis_diagonal_directions(cfg.objects.dimension())
                                : fibonacci_sphere_directions(task.direction_count);
    const AuraReport report = aura_extent(cfg.objects, cfg.metric, cfg.ia, directions, r_max);
    write_aura_report(report, (dir / "aura.txt").string());
    return {{"aura.txt"}, {}};
}

TaskOutput run_profile(const RunConfig& cfg, const ProfileTask& task, const fs::path& dir) {
    const double extent = fixed_object_extent(cfg.objects);
    const Vec origin = task.origin ? *task.origin : fixed_object_centroid(cfg.objects);
    const double d_min = task.d_min ? *task.d_min : 10.0 * extent;
    const double d_max = task.d_max ? *task.d_max : 1000.0 * extent;
    const RayProfile profile = far_field_profile(cfg.objects, cfg.metric, cfg.ia, origin,
                                                 task.direction, d_min, d_max, task.samples);
    write_profile_csv(profile, (dir / "profile.csv").string());

    std::ofstream fit((dir / "fit.txt").string());
    fit << "outside_signature = " << profile.outside_signature << '\n';
    fit << "slope = " << format_double(profile.tail_fit.slope) << '\n';
    fit << "intercept = " << format_double(profile.tail_fit.intercept) << '\n';
    fit << "r2 = " << format_double(profile.tail_fit.r2) << '\n';
    if (!profile.note.empty()) fit << "note = " << profile.note << '\n';
    if (!fit) throw RuntimeError("write to fit.txt failed");
    return {{"profile.csv", "fit.txt"}, {}};
}

TaskOutput run_trajectory(const RunConfig& cfg, const TrajectoryTask& task, const fs::path& dir) {
    const auto events = trace_path(cfg.objects, cfg.metric, cfg.ia, task.path);
    write_crossings_csv(events, cfg.objects.dimension(), (dir / "crossings.csv").string());
    return {{"crossings.csv"}, {}};
}

TaskOutput run_refine(const RunConfig& cfg, const RefineTask& task, const fs::path& dir) {
    FieldEvaluator eval(cfg.objects, cfg.metric, cfg.ia);
    const Classifier classify = [&eval](const Vec& p) { return eval.classify(p); };
    if (classify(task.point_a) == classify(task.point_b))
        throw RuntimeError("refine endpoints share one signature; nothing to refine");
    const MembranePoint mp = refine_boundary(task.point_a, task.point_b, classify, task.tol);
    write_membrane_csv({mp}, cfg.objects.dimension(), (dir / "membrane.csv").string());

    std::ofstream txt((dir / "refine.txt").string());
    txt << "sig_a = " << mp.side_a << '\n';
    txt << "sig_b = " << mp.side_b << '\n';
    txt << "width = " << format_double(mp.width) << '\n';
    if (task.probe_scale) {
        const double band = measure_ima_thickness(mp, classify, *task.probe_scale);
        txt << "band_thickness = " << format_double(band) << '\n';
    }
    if (!txt) throw RuntimeError("write to refine.txt failed");
    return {{"membrane.csv", "refine.txt"}, {}};
}

} // namespace

RunResult execute_run(const RunConfig& cfg, const std::string& out_dir, std::size_t workers,
                      const std::string& config_path) {
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw RuntimeError("cannot create output directory '" + out_dir + "': " + ec.message());

    TaskOutput task_out;
    switch (cfg.task.index()) {
        case 0: task_out = run_scan(cfg, std::get<ScanTask>(cfg.task), dir, workers); break;
        case 1: task_out = run_aura(cfg, std::get<AuraTask>(cfg.task), dir); break;
        case 2: task_out = run_profile(cfg, std::get<ProfileTask>(cfg.task), dir); break;
        case 3: task_out = run_trajectory(cfg, std::get<TrajectoryTask>(cfg.task), dir); break;
        default: task_out = run_refine(cfg, std::get<RefineTask>(cfg.task), dir); break;
    }

    const auto end = std::chrono::steady_clock::now();
    ManifestInfo info;
    info.version = kVersion;
    info.task = cfg.task_name();
    info.config_path = config_path;
    info.config_text = cfg.raw_text;
    info.workers = workers;
    info.wall_seconds = std::chrono::duration<double>(end - start).count();
    info.outputs = task_out.files;
    info.collisions = task_out.collisions;
    write_manifest(info, (dir / "manifest.txt").string());

    RunResult result;
    result.outputs = task_out.files;
    result.outputs.push_back("manifest.txt");
    return result;
}

} // namespace hsmor
