#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "config.hpp"
#include "io.hpp"
#include "runner.hpp"
#include "support.hpp"

using namespace hsmor;
namespace fs = std::filesystem;

namespace {

const char* kBaseConfig =
    "# two fixed objects and a drifter\n"
    "[objects]\n"
    "A = 1,1,0\n"
    "B = 0,0,1\n"
    "Dr = 0,0,0\n"
    "[metric]\n"
    "kind = xr\n"
    "b = 1.5\n"
    "[ia]\n"
    "max_cycles = 10000\n"
    "tie_epsilon = 1e-13\n";

std::string with_task(const std::string& task_block) {
    return std::string(kBaseConfig) + "[task]\n" + task_block;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("hsmor_io_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

LabelField tiny_field() {
    LabelField f;
    f.grid.dimension = 3;
    f.grid.fixed_axis = 2;
    f.grid.fixed_value = 0.5;
    f.grid.free_axes = {{0.0, 1.0, 2}, {0.0, 1.0, 2}};
    f.points.resize(4);
    f.points[0] = {"AB - Dr", 0.25, -std::log(0.25), 3, false};
    f.points[1] = {"A - BDr", 0.5, -std::log(0.5), 2, false};
    f.points[2] = {"B - ADr", 0.125, -std::log(0.125), 4, false};
    f.points[3] = {std::string(kDegenerateMark) + "A - BDr", 1.0, 0.0, 2, true};
    return f;
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("a full scan config") {
        const RunConfig cfg = parse_config(with_task("type = scan\nfixed_axis = z\n"
                                                     "fixed_value = 0.5\nmin = -3,-3\n"
                                                     "max = 4,4\nsteps = 64,64\n"));
        CHECK(cfg.objects.dimension() == 3);
        CHECK(cfg.objects.size() == 3);
        CHECK(cfg.metric.kind == MetricKind::XR);
        CHECK(cfg.metric.b == 1.5);
        CHECK(cfg.ia.max_cycles == 10000);
        REQUIRE(std::holds_alternative<ScanTask>(cfg.task));
        const auto& grid = std::get<ScanTask>(cfg.task).grid;
        CHECK(grid.fixed_axis == 2);
        CHECK(grid.fixed_value == 0.5);
        CHECK(grid.free_axes[0].steps == 64);
        CHECK(std::string(cfg.task_name()) == "scan");
    }
    SUBCASE("dimension mismatch names the object and line") {
        const std::string bad =
            "[objects]\nA = 1,1,0\nB = 0,0\nDr = 0,0,0\n[metric]\nkind = ed\n[task]\ntype = aura\n";
        CHECK_THROWS_WITH_AS(parse_config(bad), doctest::Contains("line 3"), ConfigError);
    }
    SUBCASE("b must exceed 1") {
        const std::string bad = std::string(kBaseConfig) + "[task]\ntype = aura\n";
        std::string text = bad;
        const auto pos = text.find("b = 1.5");
        text.replace(pos, 7, "b = 1.0");
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
    SUBCASE("unknown keys are rejected with their line") {
        CHECK_THROWS_WITH_AS(parse_config(with_task("type = aura\nbogus = 1\n")),
                             doctest::Contains("bogus"), ConfigError);
    }
    SUBCASE("unknown sections are rejected") {
        CHECK_THROWS_AS(parse_config("[nonsense]\nx = 1\n"), ConfigError);
    }
    SUBCASE("missing sections are rejected") {
        CHECK_THROWS_AS(parse_config("[objects]\nA = 1,1,0\nB = 0,0,1\nDr = 0,0,0\n"), ConfigError);
    }
    SUBCASE("duplicate object names are rejected") {
        const std::string bad =
            "[objects]\nA = 1,1,0\nA = 0,0,1\nDr = 0,0,0\n[metric]\nkind = ed\n[task]\ntype = aura\n";
        CHECK_THROWS_AS(parse_config(bad), ConfigError);
    }
    SUBCASE("drifter key renames the drifter") {
        const std::string text =
            "[objects]\ndrifter = T\nA = 1,1,0\nB = 0,0,1\nT = 0,0,0\n[metric]\nkind = ed\n"
            "[task]\ntype = aura\n";
        const RunConfig cfg = parse_config(text);
        CHECK(cfg.objects.drifter_name == "T");
    }
    SUBCASE("task type must be known") {
        CHECK_THROWS_AS(parse_config(with_task("type = dance\n")), ConfigError);
    }
    SUBCASE("trajectory waypoints") {
        const RunConfig cfg = parse_config(
            with_task("type = trajectory\nwaypoints = 0,0,0; 1,0,0; 1,1,0\nsamples_per_unit = 32\n"));
        const auto& path = std::get<TrajectoryTask>(cfg.task).path;
        CHECK(path.waypoints.size() == 3);
        CHECK(path.kind == PathKind::Polyline);
        CHECK(path.samples_per_unit == 32.0);
    }
    SUBCASE("refine points") {
        const RunConfig cfg = parse_config(
            with_task("type = refine\npoint_a = 0,0,0.5\npoint_b = 1,1,0.5\nprobe_scale = 0.1\n"));
        const auto& task = std::get<RefineTask>(cfg.task);
        CHECK(task.point_a == Vec{0.0, 0.0, 0.5});
        CHECK(task.tol == 1e-12);
        CHECK(task.probe_scale == 0.1);
    }
    SUBCASE("omega-profile needs a direction") {
        CHECK_THROWS_AS(parse_config(with_task("type = omega-profile\nsamples = 32\n")), ConfigError);
    }
}

TEST_CASE("double formatting round-trips binary64") {
    for (double v : {0.1, 1.0 / 3.0, std::sqrt(2.0), -3.0, 6.02e23, 1e-300}) {
        const std::string text = format_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
}

TEST_CASE("signature hashing is pinned") {
    // FNV-1a, 32 bit: offset 2166136261, prime 16777619.
    CHECK(fnv1a32("AB - Dr") == 0x8e7830bdu);
    const auto rgb = signature_color("AB - Dr");
    CHECK(rgb[0] == 120);
    CHECK(rgb[1] == 48);
    CHECK(rgb[2] == 189);
}

TEST_CASE("label CSV layout and round-trip") {
    const fs::path dir = temp_dir("csv");
    const LabelField f = tiny_field();
    const std::string path = (dir / "labels.csv").string();
    write_label_csv(f, path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,z,signature,omega,neg_ln_omega,cycles,degenerate");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        REQUIRE_FALSE(line.empty());
        // signature is field 3; omega field 4 must parse back bit-exactly
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) fields.push_back(item);
        REQUIRE(fields.size() == 8);
        CHECK(std::strtod(fields[4].c_str(), nullptr) == f.points[rows].omega);
        CHECK(fields[3] == f.points[rows].signature);
        CHECK(fields[7] == (f.points[rows].degenerate ? "1" : "0"));
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("non-finite values are refused") {
    const fs::path dir = temp_dir("nan");
    LabelField f = tiny_field();
    f.points[1].omega = std::nan("");
    CHECK_THROWS_AS(write_label_csv(f, (dir / "labels.csv").string()), RuntimeError);
}

TEST_CASE("membrane and profile CSV schemas") {
    const fs::path dir = temp_dir("schemas");
    MembranePoint mp;
    mp.position = {0.5, 0.25, 0.5};
    mp.side_a = "A - BDr";
    mp.side_b = "B - ADr";
    mp.width = 1e-12;
    mp.direction = {1.0, 0.0, 0.0};
    write_membrane_csv({mp}, 3, (dir / "membrane.csv").string());
    const std::string membrane = read_file(dir / "membrane.csv");
    CHECK(membrane.rfind("x,y,z,sig_a,sig_b,width\n", 0) == 0);
    CHECK(membrane.find("A - BDr,B - ADr") != std::string::npos);

    RayProfile profile;
    profile.samples = {{10.0, 0.5, -std::log(0.5), "AB - Dr"},
                       {100.0, 0.25, -std::log(0.25), "AB - Dr"}};
    write_profile_csv(profile, (dir / "profile.csv").string());
    const std::string prof = read_file(dir / "profile.csv");
    CHECK(prof.rfind("distance,omega,neg_ln_omega,signature\n", 0) == 0);
    CHECK(prof.find("AB - Dr") != std::string::npos);
}

TEST_CASE("raster output") {
    const fs::path dir = temp_dir("ppm");
    SUBCASE("constant fields are a uniform color, rows top-down") {
        LabelField f = tiny_field();
        for (auto& rec : f.points) rec = {"AB - Dr", 0.5, 0.7, 1, false};
        const std::string path = (dir / "a.ppm").string();
        write_ppm(f, path);
        const std::string bytes = read_file(path);
        const std::string header = "P6\n2 2\n255\n";
        REQUIRE(bytes.size() == header.size() + 12);
        CHECK(bytes.rfind(header, 0) == 0);
        for (std::size_t px = 0; px < 4; ++px) {
            CHECK(static_cast<unsigned char>(bytes[header.size() + px * 3 + 0]) == 120);
            CHECK(static_cast<unsigned char>(bytes[header.size() + px * 3 + 1]) == 48);
            CHECK(static_cast<unsigned char>(bytes[header.size() + px * 3 + 2]) == 189);
        }
    }
    SUBCASE("degenerate points are white and row 0 is the top of the grid") {
        const LabelField f = tiny_field(); // degenerate point at grid (1,1): top-right pixel
        const std::string path = (dir / "b.ppm").string();
        write_ppm(f, path);
        const std::string bytes = read_file(path);
        const std::size_t base = std::string("P6\n2 2\n255\n").size();
        // Row 0 holds y = max: grid points (0,1) and (1,1).
        CHECK(static_cast<unsigned char>(bytes[base + 3]) == 255);
        CHECK(static_cast<unsigned char>(bytes[base + 4]) == 255);
        CHECK(static_cast<unsigned char>(bytes[base + 5]) == 255);
    }
    SUBCASE("a real plane scan renders at least three region colors") {
        ScanGrid grid;
        grid.dimension = 3;
        grid.fixed_axis = 2;
        grid.fixed_value = 0.5;
        grid.free_axes = {{-3.0, 4.0, 32}, {-3.0, 4.0, 32}};
        ObjectConfig cfg;
        cfg.objects = {{"A", {1.0, 1.0, 0.0}}, {"B", {0.0, 0.0, 1.0}}, {"Dr", {0.0, 0.0, 0.0}}};
        const LabelField f = scan(cfg, {MetricKind::ED}, grid, {});
        const std::string path = (dir / "real.ppm").string();
        write_ppm(f, path);
        const std::string bytes = read_file(path);
        const std::size_t base = std::string("P6\n32 32\n255\n").size();
        std::set<std::string> colors;
        for (std::size_t px = base; px + 2 < bytes.size(); px += 3) colors.insert(bytes.substr(px, 3));
        CHECK(colors.size() >= 3);
    }
    SUBCASE("volume fields are rejected") {
        LabelField f;
        f.grid.dimension = 3;
        f.grid.free_axes = {{0.0, 1.0, 2}, {0.0, 1.0, 2}, {0.0, 1.0, 2}};
        f.points.resize(8);
        CHECK_THROWS_AS(write_ppm(f, (dir / "c.ppm").string()), ConfigError);
    }
}

TEST_CASE("runner executes a scan and reruns byte-identically across workers") {
    const std::string text = with_task(
        "type = scan\nfixed_axis = z\nfixed_value = 0.5\nmin = -3,-3\nmax = 4,4\nsteps = 16,16\n");
    const RunConfig cfg = parse_config(text);
    const fs::path d1 = temp_dir("run1");
    const fs::path d2 = temp_dir("run2");
    const RunResult r1 = execute_run(cfg, d1.string(), 1);
    const RunResult r2 = execute_run(cfg, d2.string(), 4);
    for (const char* name : {"labels.csv", "field.ppm"}) {
        CAPTURE(name);
        CHECK(read_file(d1 / name) == read_file(d2 / name));
    }
    const std::string manifest = read_file(d1 / "manifest.txt");
    CHECK(manifest.find("task = scan") != std::string::npos);
    CHECK(manifest.find("labels.csv") != std::string::npos);
    CHECK(manifest.find("--- config ---") != std::string::npos);
    CHECK(r1.outputs == r2.outputs);
}

TEST_CASE("runner refine task writes the membrane schema") {
    const std::string text = with_task(
        "type = refine\npoint_a = 0.3,-2,0.5\npoint_b = 0.3,2,0.5\nprobe_scale = 0.1\n");
    RunConfig cfg = parse_config(text);
    std::get<RefineTask>(cfg.task); // present
    const fs::path dir = temp_dir("refine");
    execute_run(cfg, dir.string(), 1);
    const std::string membrane = read_file(dir / "membrane.csv");
    CHECK(membrane.rfind("x,y,z,sig_a,sig_b,width\n", 0) == 0);
    const std::string report = read_file(dir / "refine.txt");
    CHECK(report.find("band_thickness = ") != std::string::npos);
}
