// Command-line front end. Talks to the library exclusively through the
// public C API in hsmor.h.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "hsmor.h"

namespace {

const char* kUsage =
    "usage: hsmor <scan|aura|omega-profile|trajectory|refine> --config PATH\n"
    "             [--out DIR] [--workers N]\n"
    "\n"
    "Runs the task configured in PATH (the [task] type must match the\n"
    "subcommand) and writes its outputs plus manifest.txt into DIR\n"
    "(default: ./out).\n";

bool known_task(const char* name) {
    static const char* tasks[] = {"scan", "aura", "omega-profile", "trajectory", "refine"};
    for (const char* t : tasks)
        if (std::strcmp(name, t) == 0) return true;
    return false;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return 1;
    }
    const char* task = argv[1];
    if (std::strcmp(task, "--help") == 0 || std::strcmp(task, "-h") == 0) {
        std::fputs(kUsage, stdout);
        return 0;
    }
    if (std::strcmp(task, "--version") == 0) {
        std::printf("hsmor %s\n", hsmor_version());
        return 0;
    }
    if (!known_task(task)) {
        std::fprintf(stderr, "unknown subcommand '%s'\n\n%s", task, kUsage);
        return 1;
    }

    const char* config_path = nullptr;
    const char* out_dir = "out";
    long workers = 1;
    for (int i = 2; i < argc; ++i) {
        const char* arg = argv[i];
        const bool has_value = i + 1 < argc;
        if (std::strcmp(arg, "--config") == 0 && has_value) {
            config_path = argv[++i];
        } else if (std::strcmp(arg, "--out") == 0 && has_value) {
            out_dir = argv[++i];
        } else if (std::strcmp(arg, "--workers") == 0 && has_value) {
            char* end = nullptr;
            workers = std::strtol(argv[++i], &end, 10);
            if (!end || *end != '\0' || workers < 1) {
                std::fprintf(stderr, "invalid --workers value '%s'\n", argv[i]);
                return 1;
            }
        } else {
            std::fprintf(stderr, "unknown or incomplete option '%s'\n\n%s", arg, kUsage);
            return 1;
        }
    }
    if (!config_path) {
        std::fprintf(stderr, "missing --config PATH\n\n%s", kUsage);
        return 1;
    }

    hsmor_run* run = nullptr;
    hsmor_status st = hsmor_run_parse_file(config_path, &run);
    if (st != HSMOR_OK) {
        std::fprintf(stderr, "hsmor: %s\n", hsmor_last_error());
        return static_cast<int>(st);
    }
    if (std::strcmp(hsmor_run_task(run), task) != 0) {
        std::fprintf(stderr, "hsmor: config task type is '%s' but the subcommand is '%s'\n",
                     hsmor_run_task(run), task);
        hsmor_run_free(run);
        return 1;
    }

    st = hsmor_run_execute(run, out_dir, static_cast<int>(workers));
    if (st != HSMOR_OK) std::fprintf(stderr, "hsmor: %s\n", hsmor_last_error());
    hsmor_run_free(run);
    return static_cast<int>(st);
}
