#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sscs/correlators.hpp"
#include "sscs/noise_synth.hpp"
#include "sscs/ramsey_sim.hpp"
#include "sscs/spectrum.hpp"

namespace sscs {

struct AnalysisOptions {
    std::optional<std::size_t> max_lag;  // default N - 1
    int bins_per_decade = 10;
    PrefactorMode prefactor = PrefactorMode::quasi_static;
    std::size_t fit_lags = 8;
    double ratio_floor = 10.0;
    std::size_t max_gap = 32;  // flagged run that ends the usable lag range; 0 disables
    double tail_ramp = 3.0;    // length of the approach to the tail value, in valid extents
    std::size_t jackknife_blocks = 16;
    double flag_threshold = 0.2;
    bool cross = true;
    bool auto_spectra = true;
};

struct ToneConfig {
    double amplitude = 0.0;  // rad/s; zero disables the tone
    double freq_hz = 50.0;
    double phase = 0.0;
};

struct PipelineConfig {
    PsdSpec spec;
    std::string trace_file;  // when set, batch b uses the b-th segment of these traces (.csv or binary)
    SequenceConfig sequence;
    AnalysisOptions analysis;
    std::size_t batches = 1;
    std::size_t threads = 1;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    ToneConfig tone;
};

// JSON round trip. Unknown keys are rejected so typos surface early.
PipelineConfig pipeline_config_from_json(const std::string& text);
std::string pipeline_config_to_json(const PipelineConfig& cfg);
// Fingerprint of the configuration, independent of the output directory.
std::string config_fingerprint(const PipelineConfig& cfg);

// Demo defaults: the default simulation spectrum, tau = T2* from the
// spectrum variance, omega_1 = pi / 4 tau_1, omega_2 = 0, dt = 250 us.
PipelineConfig default_pipeline_config(std::size_t n_pairs = 1u << 18, std::size_t batches = 8);

// Variance of delta omega implied by a spectral entry over the synthesis
// band [1/(n dt), 1/(2 dt)], with the same two-sided convention as synthesize.
double band_variance(const PsdComponentParams& p, std::size_t n, double dt);

std::uint64_t batch_trace_seed(std::uint64_t seed, std::size_t batch);
std::uint64_t batch_shot_seed(std::uint64_t seed, std::size_t batch);

NoiseTracePair synth_batch(const PipelineConfig& cfg, std::size_t batch);
ShotRecord simulate_batch(const PipelineConfig& cfg, const NoiseTracePair& noise, std::size_t batch);

struct BatchAnalysis {
    // Log-binned positive-frequency spectra of one batch.
    SpectrumEstimate cross_avg;
    SpectrumEstimate cross_u1;
    SpectrumEstimate cross_u2;
    std::array<std::optional<SpectrumEstimate>, 2> auto_w;
    double cross_flagged_fraction = 0.0;
    std::array<double, 2> auto_flagged_fraction{};
    std::vector<std::string> warnings;
};

BatchAnalysis analyze_batch(const ShotRecord& shots, const AnalysisOptions& opt);

struct AnalysisResult {
    SpectrumEstimate cross;      // averaged U1/U2 estimator
    SpectrumEstimate cross_u1;   // U1 only
    SpectrumEstimate cross_u2;   // U2 only
    std::array<std::optional<SpectrumEstimate>, 2> auto_w;
    double max_flagged_fraction = 0.0;
    std::vector<std::string> warnings;
};

// Batch-averages per-batch binned spectra. All records must share dt, N and
// evolution times. Independent of SPAM parameters.
AnalysisResult analyze(const std::vector<ShotRecord>& batches, const AnalysisOptions& opt, std::size_t threads = 1);

}  // namespace sscs
