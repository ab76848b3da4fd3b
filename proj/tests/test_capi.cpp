#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "hsmor.h"

namespace fs = std::filesystem;

namespace {

const char* kModelConfig =
    "[objects]\n"
    "A = 1,1,0\n"
    "B = 0,0,1\n"
    "Dr = 0,0,0\n"
    "[metric]\n"
    "kind = ed\n";

} // namespace

TEST_CASE("version and error strings are always available") {
    CHECK(std::strlen(hsmor_version()) > 0);
    CHECK(hsmor_last_error() != nullptr);
}

TEST_CASE("model lifecycle and classification") {
    hsmor_model* model = nullptr;
    REQUIRE(hsmor_model_parse(kModelConfig, &model) == HSMOR_OK);
    REQUIRE(model != nullptr);
    CHECK(hsmor_model_dimension(model) == 3);

    const double far[3] = {100.0, 100.0, 100.0};
    double omega = -1.0, nlo = -1.0;
    int cycles = 0, degenerate = -1;
    char sig[64];
    size_t sig_len = 0;
    REQUIRE(hsmor_model_classify(model, far, 3, &omega, &nlo, &cycles, &degenerate, sig,
                                 sizeof sig, &sig_len) == HSMOR_OK);
    CHECK(std::string(sig) == "AB - Dr");
    CHECK(sig_len == 7);
    CHECK(omega > 0.0);
    CHECK(omega <= 1.0);
    CHECK(nlo >= 0.0);
    CHECK(cycles >= 1);
    CHECK(degenerate == 0);

    SUBCASE("signature truncation still reports the full length") {
        char tiny[4];
        size_t full = 0;
        REQUIRE(hsmor_model_classify(model, far, 3, nullptr, nullptr, nullptr, nullptr, tiny,
                                     sizeof tiny, &full) == HSMOR_OK);
        CHECK(full == 7);
        CHECK(std::string(tiny) == "AB "); // 3 chars + NUL
    }
    SUBCASE("wrong coordinate count is a config error") {
        const double two[2] = {0.0, 0.0};
        CHECK(hsmor_model_classify(model, two, 2, nullptr, nullptr, nullptr, nullptr, nullptr, 0,
                                   nullptr) == HSMOR_ERROR_CONFIG);
        CHECK(std::strlen(hsmor_last_error()) > 0);
    }
    hsmor_model_free(model);
}

TEST_CASE("parse failures set the error code and message") {
    hsmor_run* run = nullptr;
    CHECK(hsmor_run_parse("[objects]\nA = 1,1\n", &run) == HSMOR_ERROR_CONFIG);
    CHECK(run == nullptr);
    CHECK(std::strlen(hsmor_last_error()) > 0);

    CHECK(hsmor_run_parse(nullptr, &run) == HSMOR_ERROR_CONFIG);
    CHECK(hsmor_run_parse_file("/nonexistent/path.cfg", &run) == HSMOR_ERROR_CONFIG);
}

TEST_CASE("run lifecycle: parse, inspect, execute") {
    const std::string config = std::string(kModelConfig) +
                               "[task]\n"
                               "type = scan\n"
                               "fixed_axis = z\n"
                               "fixed_value = 0.5\n"
                               "min = -3,-3\n"
                               "max = 4,4\n"
                               "steps = 8,8\n";
    hsmor_run* run = nullptr;
    REQUIRE(hsmor_run_parse(config.c_str(), &run) == HSMOR_OK);
    REQUIRE(run != nullptr);
    CHECK(std::string(hsmor_run_task(run)) == "scan");

    const fs::path dir = fs::temp_directory_path() / "hsmor_capi_run";
    fs::remove_all(dir);
    REQUIRE(hsmor_run_execute(run, dir.string().c_str(), 2) == HSMOR_OK);
    CHECK(fs::exists(dir / "labels.csv"));
    CHECK(fs::exists(dir / "field.ppm"));
    CHECK(fs::exists(dir / "manifest.txt"));

    SUBCASE("invalid worker counts are rejected") {
        CHECK(hsmor_run_execute(run, dir.string().c_str(), 0) == HSMOR_ERROR_CONFIG);
    }
    hsmor_run_free(run);
}
