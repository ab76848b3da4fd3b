#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace hsmor {

const char* RunConfig::task_name() const {
    switch (task.index()) {
        case 0: return "scan";
        case 1: return "aura";
        case 2: return "omega-profile";
        case 3: return "trajectory";
        default: return "refine";
    }
}

namespace {

struct Line {
    int number;
    std::string key;
    std::string value;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

double parse_real(const Line& ln, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        fail(ln.number, "expected a finite number, got '" + text + "'");
    return v;
}

long parse_int(const Line& ln, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        fail(ln.number, "expected an integer, got '" + text + "'");
    return v;
}

Vec parse_vector(const Line& ln) {
    Vec out;
    std::stringstream ss(ln.value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(ln, trim(item)));
    if (out.empty()) fail(ln.number, "expected a comma-separated list of numbers");
    return out;
}

std::vector<std::size_t> parse_steps(const Line& ln) {
    std::vector<std::size_t> out;
    std::stringstream ss(ln.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const long v = parse_int(ln, trim(item));
        if (v < 2) fail(ln.number, "steps must be >= 2");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) fail(ln.number, "expected a comma-separated list of step counts");
    return out;
}

using Section = std::vector<Line>;

// Returns the single line for `key`, erasing it from the section.
std::optional<Line> take(Section& section, const std::string& key) {
    std::optional<Line> found;
    for (auto it = section.begin(); it != section.end();) {
        if (it->key == key) {
            if (found) fail(it->number, "duplicate key '" + key + "'");
            found = *it;
            it = section.erase(it);
        } else {
            ++it;
        }
    }
    return found;
}

void reject_leftovers(const Section& section, const std::string& name) {
    if (!section.empty())
        fail(section.front().number,
             "unknown key '" + section.front().key + "' in section [" + name + "]");
}

std::size_t axis_from_name(const Line& ln, const std::string& value, std::size_t dimension) {
    static const std::map<std::string, std::size_t> named{{"x", 0}, {"y", 1}, {"z", 2}};
    auto it = named.find(value);
    std::size_t axis;
    if (it != named.end()) {
        axis = it->second;
    } else {
        const long v = parse_int(ln, value);
        if (v < 0) fail(ln.number, "axis index must be >= 0");
        axis = static_cast<std::size_t>(v);
    }
    if (axis >= dimension) fail(ln.number, "axis '" + value + "' out of range for dimension " +
                                               std::to_string(dimension));
    return axis;
}

ScanTask parse_scan_task(Section& sec, std::size_t dimension) {
    ScanTask task;
    task.grid.dimension = dimension;
    if (auto ln = take(sec, "fixed_axis")) {
        task.grid.fixed_axis = axis_from_name(*ln, ln->value, dimension);
        auto val = take(sec, "fixed_value");
        if (!val) fail(ln->number, "fixed_axis requires fixed_value");
        task.grid.fixed_value = parse_real(*val, val->value);
    } else if (auto val = take(sec, "fixed_value")) {
        fail(val->number, "fixed_value requires fixed_axis");
    }
    auto mins = take(sec, "min");
    auto maxs = take(sec, "max");
    auto steps = take(sec, "steps");
    if (!mins || !maxs || !steps) throw ConfigError("scan task needs min, max and steps");
    const Vec lo = parse_vector(*mins);
    const Vec hi = parse_vector(*maxs);
    const auto counts = parse_steps(*steps);
    if (lo.size() != hi.size() || lo.size() != counts.size())
        fail(mins->number, "min, max and steps must have the same length");
    for (std::size_t a = 0; a < lo.size(); ++a)
        task.grid.free_axes.push_back({lo[a], hi[a], counts[a]});
    if (auto ln = take(sec, "max_points")) {
        const long v = parse_int(*ln, ln->value);
        if (v < 1) fail(ln->number, "max_points must be >= 1");
        task.grid.max_points = static_cast<std::size_t>(v);
    }
    task.grid.validate();
    return task;
}

AuraTask parse_aura_task(Section& sec) {
    AuraTask task;
    if (auto ln = take(sec, "r_max")) {
        const double v = parse_real(*ln, ln->value);
        if (!(v > 0.0)) fail(ln->number, "r_max must be > 0");
        task.r_max = v;
    }
    if (auto ln = take(sec, "direction_set")) {
        if (ln->value == "axis-diagonal")
            task.direction_set = DirectionSet::AxisDiagonal;
        else if (ln->value == "fibonacci")
            task.direction_set = DirectionSet::Fibonacci;
        else
            fail(ln->number, "direction_set must be 'axis-diagonal' or 'fibonacci'");
    }
    if (auto ln = take(sec, "direction_count")) {
        const long v = parse_int(*ln, ln->value);
        if (v < 26) fail(ln->number, "direction_count must be >= 26");
        task.direction_count = static_cast<std::size_t>(v);
    }
    return task;
}

ProfileTask parse_profile_task(Section& sec, std::size_t dimension) {
    ProfileTask task;
    if (auto ln = take(sec, "origin")) {
        task.origin = parse_vector(*ln);
        if (task.origin->size() != dimension) fail(ln->number, "origin has the wrong dimension");
    }
    auto dir = take(sec, "direction");
    if (!dir) throw ConfigError("omega-profile task needs a direction");
    task.direction = parse_vector(*dir);
    if (task.direction.size() != dimension) fail(dir->number, "direction has the wrong dimension");
    if (auto ln = take(sec, "d_min")) task.d_min = parse_real(*ln, ln->value);
    if (auto ln = take(sec, "d_max")) task.d_max = parse_real(*ln, ln->value);
    if (auto ln = take(sec, "samples")) {
        const long v = parse_int(*ln, ln->value);
        if (v < 16) fail(ln->number, "samples must be >= 16");
        task.samples = static_cast<std::size_t>(v);
    }
    return task;
}

TrajectoryTask parse_trajectory_task(Section& sec, std::size_t dimension) {
    TrajectoryTask task;
    auto pts = take(sec, "waypoints");
    if (!pts) throw ConfigError("trajectory task needs waypoints");
    std::stringstream ss(pts->value);
    std::string item;
    while (std::getline(ss, item, ';')) {
        Line sub{pts->number, "waypoints", trim(item)};
        task.path.waypoints.push_back(parse_vector(sub));
        if (task.path.waypoints.back().size() != dimension)
            fail(pts->number, "waypoint has the wrong dimension");
    }
    task.path.kind = task.path.waypoints.size() == 2 ? PathKind::Segment : PathKind::Polyline;
    if (auto ln = take(sec, "kind")) {
        if (ln->value == "segment")
            task.path.kind = PathKind::Segment;
        else if (ln->value == "polyline")
            task.path.kind = PathKind::Polyline;
        else
            fail(ln->number, "kind must be 'segment' or 'polyline'");
    }
    if (auto ln = take(sec, "samples_per_unit")) {
        task.path.samples_per_unit = parse_real(*ln, ln->value);
        if (!(task.path.samples_per_unit > 0.0)) fail(ln->number, "samples_per_unit must be > 0");
    }
    task.path.validate();
    return task;
}

RefineTask parse_refine_task(Section& sec, std::size_t dimension) {
    RefineTask task;
    auto a = take(sec, "point_a");
    auto b = take(sec, "point_b");
    if (!a || !b) throw ConfigError("refine task needs point_a and point_b");
    task.point_a = parse_vector(*a);
    task.point_b = parse_vector(*b);
    if (task.point_a.size() != dimension || task.point_b.size() != dimension)
        fail(a->number, "refine points have the wrong dimension");
    if (auto ln = take(sec, "tol")) {
        task.tol = parse_real(*ln, ln->value);
        if (!(task.tol > 0.0)) fail(ln->number, "tol must be > 0");
    }
    if (auto ln = take(sec, "probe_scale")) {
        const double v = parse_real(*ln, ln->value);
        if (!(v > 0.0)) fail(ln->number, "probe_scale must be > 0");
        task.probe_scale = v;
    }
    return task;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.raw_text = text;

    std::map<std::string, Section> sections;
    std::string current;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(number, "malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current != "objects" && current != "metric" && current != "ia" && current != "task")
                fail(number, "unknown section [" + current + "]");
            sections[current]; // created even when empty
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(number, "expected 'key = value'");
        if (current.empty()) fail(number, "key outside of any section");
        Line ln{number, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        if (ln.key.empty()) fail(number, "empty key");
        sections[current].push_back(std::move(ln));
    }

    if (!sections.count("objects")) throw ConfigError("missing [objects] section");
    if (!sections.count("metric")) throw ConfigError("missing [metric] section");
    if (!sections.count("task")) throw ConfigError("missing [task] section");

    // [objects]: every key is an object definition except 'drifter'.
    Section& objects = sections["objects"];
    if (auto ln = take(objects, "drifter")) cfg.objects.drifter_name = ln->value;
    for (const Line& ln : objects) {
        if (ln.key.find(',') != std::string::npos)
            fail(ln.number, "object names must not contain commas");
        NamedObject obj{ln.key, parse_vector(ln)};
        if (!cfg.objects.objects.empty() &&
            obj.coords.size() != cfg.objects.objects.front().coords.size())
            fail(ln.number, "object '" + obj.name + "' has dimension " +
                                std::to_string(obj.coords.size()) + ", expected " +
                                std::to_string(cfg.objects.objects.front().coords.size()));
        cfg.objects.objects.push_back(std::move(obj));
    }
    cfg.objects.validate();
    const std::size_t dimension = cfg.objects.dimension();

    // [metric]
    Section& metric = sections["metric"];
    auto kind = take(metric, "kind");
    if (!kind) throw ConfigError("[metric] needs a kind (ed, cb or xr)");
    if (kind->value == "ed")
        cfg.metric.kind = MetricKind::ED;
    else if (kind->value == "cb")
        cfg.metric.kind = MetricKind::CB;
    else if (kind->value == "xr")
        cfg.metric.kind = MetricKind::XR;
    else
        fail(kind->number, "metric kind must be 'ed', 'cb' or 'xr'");
    if (auto ln = take(metric, "b")) cfg.metric.b = parse_real(*ln, ln->value);
    if (auto ln = take(metric, "cb_floor")) cfg.metric.cb_floor = parse_real(*ln, ln->value);
    if (auto ln = take(metric, "conversion")) {
        if (ln->value != "reciprocal") fail(ln->number, "conversion must be 'reciprocal'");
    }
    reject_leftovers(metric, "metric");
    cfg.metric.validate();

    // [ia], optional
    if (sections.count("ia")) {
        Section& ia = sections["ia"];
        if (auto ln = take(ia, "max_cycles")) {
            const long v = parse_int(*ln, ln->value);
            if (v < 1 || v > std::numeric_limits<int>::max())
                fail(ln->number, "max_cycles out of range");
            cfg.ia.max_cycles = static_cast<int>(v);
        }
        if (auto ln = take(ia, "tie_epsilon")) {
            cfg.ia.tie_epsilon = parse_real(*ln, ln->value);
            if (!(cfg.ia.tie_epsilon > 0.0)) fail(ln->number, "tie_epsilon must be > 0");
        }
        reject_leftovers(ia, "ia");
    }

    // [task]
    Section& task = sections["task"];
    auto type = take(task, "type");
    if (!type) throw ConfigError("[task] needs a type");
    if (type->value == "scan")
        cfg.task = parse_scan_task(task, dimension);
    else if (type->value == "aura")
        cfg.task = parse_aura_task(task);
    else if (type->value == "omega-profile")
        cfg.task = parse_profile_task(task, dimension);
    else if (type->value == "trajectory")
        cfg.task = parse_trajectory_task(task, dimension);
    else if (type->value == "refine")
        cfg.task = parse_refine_task(task, dimension);
    else
        fail(type->number, "unknown task type '" + type->value + "'");
    reject_leftovers(task, "task");

    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace hsmor
