#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "sscs/io.hpp"
#include "sscs/pipeline.hpp"
#include "support.hpp"

using namespace sscs;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string demo_config_text() { return io::read_text(std::string(SSCS_CONFIG_DIR) + "/cross_demo.json"); }

// A small configuration that analyses in well under a second.
PipelineConfig small_config() {
    PipelineConfig c = default_pipeline_config(1u << 12, 2);
    c.spec = lorentzian_spec(1e12, 5e-3);
    const double var = band_variance(c.spec.s11, 2 * c.sequence.n_pairs, c.sequence.delta_t);
    const double t2 = std::sqrt(2.0 / var);
    c.sequence.qubit1 = {t2, kPi / (4.0 * t2), t2};
    c.sequence.qubit2 = {t2, 0.0, t2};
    c.analysis.ratio_floor = 0.0;
    c.analysis.max_lag = 512;
    return c;
}

}  // namespace

TEST_CASE("config JSON round trip") {
    const PipelineConfig a = pipeline_config_from_json(demo_config_text());
    const std::string first = pipeline_config_to_json(a);
    const PipelineConfig b = pipeline_config_from_json(first);
    CHECK(pipeline_config_to_json(b) == first);
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    CHECK(a.analysis.ratio_floor == 3.0);
    CHECK(a.sequence.n_pairs == 1u << 18);
    // tau defaults to T2* and omega_1 to pi / 4 tau.
    CHECK(a.sequence.qubit1.tau == doctest::Approx(a.sequence.qubit1.t2star));
    CHECK(a.sequence.qubit1.omega * a.sequence.qubit1.tau == doctest::Approx(kPi / 4));
}

TEST_CASE("config parsing rejects unknown and missing keys") {
    CHECK_THROWS_AS(pipeline_config_from_json(R"({"seed": 1, "spec": "default", "sead": 2})"), std::invalid_argument);
    CHECK_THROWS_AS(pipeline_config_from_json(R"({"seed": 1, "spec": "default", "analysis": {"bins": 10}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        pipeline_config_from_json(R"({"seed": 1, "spec": "default", "sequence": {"qubit1": {"tao": 1e-7}}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(pipeline_config_from_json(R"({"spec": "default"})"), std::invalid_argument);
    CHECK_THROWS_AS(pipeline_config_from_json(R"({"seed": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(pipeline_config_from_json(R"({"seed": 1, "spec": "paper"})"), std::invalid_argument);
    CHECK_THROWS_AS(pipeline_config_from_json(R"({"seed": 1, "spec": "default", "batches": 0})"), std::invalid_argument);
}

TEST_CASE("fingerprint ignores the output directory only") {
    PipelineConfig a = pipeline_config_from_json(demo_config_text());
    PipelineConfig b = a;
    b.output_dir = "/somewhere/else";
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    b.seed += 1;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    b = a;
    b.analysis.tail_ramp = 1.0;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    CHECK(config_fingerprint(a).size() == 16);
}

TEST_CASE("band variance of a 1/f entry is a harmonic sum") {
    // C_k = I n dt / k, so var = 8 pi^2 I (H_{n/2} - 1 / n).
    for (std::size_t n : {16u, 1000u, 1u << 16}) {
        const double I = 3.7e9, dt = 1e-3;
        double h = 0.0;
        for (std::size_t k = 1; k <= n / 2; ++k) h += 1.0 / static_cast<double>(k);
        const double expected = 8.0 * kPi * kPi * I * (h - 1.0 / static_cast<double>(n));
        CHECK(band_variance({I, 0.0, 1.0}, n, dt) == doctest::Approx(expected).epsilon(1e-12));
    }
    const PsdComponentParams lor{0.0, 2e5, 1e-2};
    CHECK(band_variance(lor, 4096, 1e-4) == doctest::Approx(sscs::testing::discrete_correlation(lor, 4096, 1e-4, 0)));
}

TEST_CASE("batch seeds are distinct") {
    std::set<std::uint64_t> seen;
    for (std::size_t b = 0; b < 100; ++b) {
        seen.insert(batch_trace_seed(42, b));
        seen.insert(batch_shot_seed(42, b));
    }
    CHECK(seen.size() == 200);
    CHECK(batch_trace_seed(42, 3) == batch_trace_seed(42, 3));
    CHECK(batch_trace_seed(42, 3) != batch_trace_seed(43, 3));
}

TEST_CASE("default pipeline configuration") {
    const PipelineConfig c = default_pipeline_config();
    CHECK(c.sequence.delta_t == 250e-6);
    CHECK(c.batches == 8);
    CHECK(c.sequence.qubit2.omega == 0.0);
    CHECK(c.sequence.qubit1.omega == doctest::Approx(kPi / (4.0 * c.sequence.qubit1.tau)));
    const double var = band_variance(c.spec.s11, 2 * c.sequence.n_pairs, c.sequence.delta_t);
    CHECK(c.sequence.qubit1.tau == doctest::Approx(std::sqrt(2.0 / var)));
}

TEST_CASE("a single batch averages to itself") {
    const PipelineConfig c = small_config();
    const ShotRecord shots = simulate_batch(c, synth_batch(c, 0), 0);
    const BatchAnalysis one = analyze_batch(shots, c.analysis);
    const AnalysisResult res = analyze({shots}, c.analysis);
    CHECK(res.cross.values == one.cross_avg.values);
    CHECK(res.cross.frequencies == one.cross_avg.frequencies);
    for (double se : res.cross.stderr_) CHECK(std::isnan(se));
    REQUIRE(res.auto_w[0]);
    CHECK(res.auto_w[0]->values == one.auto_w[0]->values);
}

TEST_CASE("analysis does not read the SPAM parameters") {
    const PipelineConfig c = small_config();
    const ShotRecord shots = simulate_batch(c, synth_batch(c, 0), 0);
    ShotRecord relabelled = shots;
    relabelled.config.spam1 = {0.3, 0.1};
    relabelled.config.spam2 = {0.05, 0.2};
    const AnalysisResult a = analyze({shots}, c.analysis);
    const AnalysisResult b = analyze({relabelled}, c.analysis);
    CHECK(a.cross.values == b.cross.values);
}

TEST_CASE("threaded analysis matches the serial one") {
    const PipelineConfig c = small_config();
    std::vector<ShotRecord> shots;
    for (std::size_t b = 0; b < 3; ++b) shots.push_back(simulate_batch(c, synth_batch(c, b), b));
    const AnalysisResult serial = analyze(shots, c.analysis, 1);
    const AnalysisResult threaded = analyze(shots, c.analysis, 3);
    CHECK(serial.cross.values == threaded.cross.values);
    CHECK(serial.cross.stderr_ == threaded.cross.stderr_);
}

TEST_CASE("analyze rejects mismatched batches") {
    const PipelineConfig c = small_config();
    const ShotRecord a = simulate_batch(c, synth_batch(c, 0), 0);
    ShotRecord b = a;
    b.config.qubit1.tau *= 2.0;
    CHECK_THROWS_AS(analyze({a, b}, c.analysis), std::invalid_argument);
    CHECK_THROWS_AS(analyze({}, c.analysis), std::invalid_argument);
}

TEST_CASE("recorded traces feed consecutive batches") {
    PipelineConfig c = small_config();
    const std::size_t len = 2 * c.sequence.n_pairs;
    const NoiseTracePair all = synthesize(c.spec, 2 * len, c.sequence.delta_t, 5);
    const fs::path file = fs::temp_directory_path() / "sscs_pipeline_traces.bin";
    io::write_traces_binary(file.string(), all);
    c.trace_file = file.string();

    const NoiseTracePair second = synth_batch(c, 1);
    REQUIRE(second.size() == len);
    CHECK(second.delta_omega_1.front() == all.delta_omega_1[len]);
    CHECK(second.delta_omega_2.back() == all.delta_omega_2.back());
    CHECK_THROWS_AS(synth_batch(c, 2), std::invalid_argument);

    c.sequence.delta_t *= 2.0;
    CHECK_THROWS_AS(synth_batch(c, 0), std::invalid_argument);
    fs::remove(file);
}

TEST_CASE("tone configuration adds a line to both traces") {
    PipelineConfig c = small_config();
    const NoiseTracePair plain = synth_batch(c, 0);
    c.tone = {1e5, 50.0, 0.3};
    const NoiseTracePair toned = synth_batch(c, 0);
    for (std::size_t i : {0u, 17u, 1000u}) {
        const double t = static_cast<double>(i) * c.sequence.delta_t;
        const double line = 1e5 * std::sin(2.0 * kPi * 50.0 * t + 0.3);
        CHECK(toned.delta_omega_1[i] - plain.delta_omega_1[i] == doctest::Approx(line).epsilon(1e-9).scale(1.0));
        CHECK(toned.delta_omega_2[i] - plain.delta_omega_2[i] == doctest::Approx(line).epsilon(1e-9).scale(1.0));
    }
}
