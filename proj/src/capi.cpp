#include "hsmor.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "runner.hpp"
#include "scan.hpp"
#include "version.hpp"

namespace {

thread_local std::string g_last_error;

hsmor_status fail(hsmor_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
hsmor_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return HSMOR_OK;
    } catch (const hsmor::ConfigError& e) {
        return fail(HSMOR_ERROR_CONFIG, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(HSMOR_ERROR_CONFIG, e.what());
    } catch (const std::exception& e) {
        return fail(HSMOR_ERROR_RUNTIME, e.what());
    }
}

} // namespace

struct hsmor_run {
    hsmor::RunConfig config;
    std::string config_path = "<inline>";
};

struct hsmor_model {
    hsmor::FieldEvaluator evaluator;
};

extern "C" {

const char* hsmor_version(void) { return hsmor::kVersion; }

const char* hsmor_last_error(void) { return g_last_error.c_str(); }

hsmor_status hsmor_run_parse(const char* config_text, hsmor_run** out) {
    if (!config_text || !out) return fail(HSMOR_ERROR_CONFIG, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new hsmor_run{hsmor::parse_config(config_text)}; });
}

hsmor_status hsmor_run_parse_file(const char* path, hsmor_run** out) {
    if (!path || !out) return fail(HSMOR_ERROR_CONFIG, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new hsmor_run{hsmor::parse_config_file(path), path}; });
}

const char* hsmor_run_task(const hsmor_run* run) {
    return run ? run->config.task_name() : "";
}

hsmor_status hsmor_run_execute(hsmor_run* run, const char* out_dir, int workers) {
    if (!run || !out_dir) return fail(HSMOR_ERROR_CONFIG, "null argument");
    if (workers < 1) return fail(HSMOR_ERROR_CONFIG, "workers must be >= 1");
    return guarded([&] {
        hsmor::execute_run(run->config, out_dir, static_cast<std::size_t>(workers),
                           run->config_path);
    });
}

void hsmor_run_free(hsmor_run* run) { delete run; }

hsmor_status hsmor_model_parse(const char* config_text, hsmor_model** out) {
    if (!config_text || !out) return fail(HSMOR_ERROR_CONFIG, "null argument");
    *out = nullptr;
    return guarded([&] {
        // The model needs no [task] section; retry with a placeholder block
        // when the text lacks one.
        hsmor::RunConfig cfg;
        try {
            cfg = hsmor::parse_config(config_text);
        } catch (const hsmor::ConfigError& e) {
            if (std::string(e.what()).find("[task]") == std::string::npos) throw;
            cfg = hsmor::parse_config(std::string(config_text) + "\n[task]\ntype = aura\n");
        }
        *out = new hsmor_model{
            hsmor::FieldEvaluator(std::move(cfg.objects), cfg.metric, std::move(cfg.ia))};
    });
}

size_t hsmor_model_dimension(const hsmor_model* model) {
    return model ? model->evaluator.config().dimension() : 0;
}

hsmor_status hsmor_model_classify(hsmor_model* model, const double* coords, size_t ncoords,
                                  double* omega, double* neg_ln_omega, int* cycles,
                                  int* degenerate, char* signature_buf, size_t signature_cap,
                                  size_t* signature_len) {
    if (!model || !coords) return fail(HSMOR_ERROR_CONFIG, "null argument");
    return guarded([&] {
        const hsmor::PointRecord rec =
            model->evaluator.evaluate(hsmor::Vec(coords, coords + ncoords));
        if (omega) *omega = rec.omega;
        if (neg_ln_omega) *neg_ln_omega = rec.neg_ln_omega;
        if (cycles) *cycles = rec.cycles;
        if (degenerate) *degenerate = rec.degenerate ? 1 : 0;
        if (signature_len) *signature_len = rec.signature.size();
        if (signature_buf && signature_cap > 0) {
            const size_t n = std::min(signature_cap - 1, rec.signature.size());
            std::memcpy(signature_buf, rec.signature.data(), n);
            signature_buf[n] = '\0';
        }
    });
}

void hsmor_model_free(hsmor_model* model) { delete model; }

} // extern "C"
