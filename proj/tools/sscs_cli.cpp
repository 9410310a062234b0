// sscs: command-line front end for synthesis, simulation and spectral analysis
// of two-qubit Ramsey records.
//
// Exit codes: 0 success, 1 error, 2 flagged-lag fraction above threshold.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sscs/alias_analytics.hpp"
#include "sscs/io.hpp"
#include "sscs/param_opt.hpp"
#include "sscs/pipeline.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr int kExitFlagged = 2;

// Flags that mirror PipelineConfig fields. Each one, when given, replaces the
// value from --config before the configuration is parsed, so defaults derived
// from other fields (tau from T2*, omega_1 from tau) follow the overrides.
struct ConfigFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> batches;
    std::optional<std::size_t> threads;
    std::optional<std::string> output_dir;
    std::optional<std::string> spec_file;
    std::optional<std::string> trace_file;

    std::optional<double> delta_t;
    std::optional<std::size_t> n_pairs;
    std::optional<std::size_t> substeps;
    std::optional<double> tau1, tau2, omega1, omega2, t2star1, t2star2;
    std::optional<double> p_e1, p_b1, p_e2, p_b2;

    std::optional<std::size_t> max_lag;
    std::optional<int> bins_per_decade;
    std::optional<std::string> prefactor;
    std::optional<std::size_t> fit_lags;
    std::optional<double> ratio_floor;
    std::optional<std::size_t> max_gap;
    std::optional<double> tail_ramp;
    std::optional<std::size_t> jackknife_blocks;
    std::optional<double> flag_threshold;
    std::optional<bool> cross;
    std::optional<bool> auto_spectra;

    std::optional<double> tone_amplitude, tone_freq, tone_phase;
};

void add_config_flags(CLI::App* app, ConfigFlags& f) {
    app->add_option("-c,--config", f.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app->add_option("--seed", f.seed, "Master seed");
    app->add_option("--batches", f.batches, "Number of independent batches");
    app->add_option("--threads", f.threads, "Worker threads");
    app->add_option("-o,--output-dir", f.output_dir, "Output directory (SSCS_OUTPUT_DIR overrides the config value)");
    app->add_option("--spec-file", f.spec_file, "PSD spec JSON replacing the configured spectrum")
        ->check(CLI::ExistingFile);
    app->add_option("--trace-file", f.trace_file, "Recorded traces used instead of synthesis");

    app->add_option("--delta-t", f.delta_t, "Slot duration (s)");
    app->add_option("--n-pairs", f.n_pairs, "XX/XY pairs per batch");
    app->add_option("--substeps", f.substeps, "Noise samples per slot");
    app->add_option("--tau1", f.tau1, "Evolution time of qubit 1 (s)");
    app->add_option("--tau2", f.tau2, "Evolution time of qubit 2 (s)");
    app->add_option("--omega1", f.omega1, "Detuning of qubit 1 (rad/s)");
    app->add_option("--omega2", f.omega2, "Detuning of qubit 2 (rad/s)");
    app->add_option("--t2star1", f.t2star1, "T2* of qubit 1 (s)");
    app->add_option("--t2star2", f.t2star2, "T2* of qubit 2 (s)");
    app->add_option("--p-e1", f.p_e1, "Readout inversion probability, qubit 1");
    app->add_option("--p-b1", f.p_b1, "Forced -1 probability, qubit 1");
    app->add_option("--p-e2", f.p_e2, "Readout inversion probability, qubit 2");
    app->add_option("--p-b2", f.p_b2, "Forced -1 probability, qubit 2");

    app->add_option("--max-lag", f.max_lag, "Largest correlator lag");
    app->add_option("--bins-per-decade", f.bins_per_decade, "Log bins per decade");
    app->add_option("--prefactor", f.prefactor, "quasi_static or generalized");
    app->add_option("--fit-lags", f.fit_lags, "Lags in the lag-0 extrapolation of W");
    app->add_option("--ratio-floor", f.ratio_floor, "Minimum |mean| / stderr of a usable lag");
    app->add_option("--max-gap", f.max_gap, "Flagged run that ends the usable lag range");
    app->add_option("--tail-ramp", f.tail_ramp, "Length of the approach to the tail value");
    app->add_option("--jackknife-blocks", f.jackknife_blocks, "Blocks in the error estimate");
    app->add_option("--flag-threshold", f.flag_threshold, "Flagged-lag fraction that fails the run");
    app->add_option("--cross", f.cross, "Estimate the cross spectrum (true/false)");
    app->add_option("--auto", f.auto_spectra, "Estimate the auto spectra (true/false)");

    app->add_option("--tone-amplitude", f.tone_amplitude, "Injected tone amplitude (rad/s)");
    app->add_option("--tone-freq", f.tone_freq, "Injected tone frequency (Hz)");
    app->add_option("--tone-phase", f.tone_phase, "Injected tone phase (rad)");
}

template <typename T>
void put(json& j, std::initializer_list<const char*> path, const std::optional<T>& v) {
    if (!v) return;
    json* node = &j;
    for (const char* key : path) node = &(*node)[key];
    *node = *v;
}

// Merged configuration as JSON: file, then flags, then the environment.
json merged_config(const ConfigFlags& f) {
    json j = f.config_path.empty() ? json::object() : json::parse(sscs::io::read_text(f.config_path));
    if (!j.is_object()) throw std::runtime_error("config: top level must be an object");

    put(j, {"seed"}, f.seed);
    put(j, {"batches"}, f.batches);
    put(j, {"threads"}, f.threads);
    put(j, {"output_dir"}, f.output_dir);
    put(j, {"trace_file"}, f.trace_file);
    if (f.spec_file) j["spec"] = json::parse(sscs::io::read_text(*f.spec_file));

    put(j, {"sequence", "delta_t"}, f.delta_t);
    put(j, {"sequence", "n_pairs"}, f.n_pairs);
    put(j, {"sequence", "quasi_static_substeps"}, f.substeps);
    put(j, {"sequence", "qubit1", "tau"}, f.tau1);
    put(j, {"sequence", "qubit2", "tau"}, f.tau2);
    put(j, {"sequence", "qubit1", "omega"}, f.omega1);
    put(j, {"sequence", "qubit2", "omega"}, f.omega2);
    put(j, {"sequence", "qubit1", "t2star"}, f.t2star1);
    put(j, {"sequence", "qubit2", "t2star"}, f.t2star2);
    put(j, {"sequence", "spam1", "p_e"}, f.p_e1);
    put(j, {"sequence", "spam1", "p_b"}, f.p_b1);
    put(j, {"sequence", "spam2", "p_e"}, f.p_e2);
    put(j, {"sequence", "spam2", "p_b"}, f.p_b2);

    put(j, {"analysis", "max_lag"}, f.max_lag);
    put(j, {"analysis", "bins_per_decade"}, f.bins_per_decade);
    put(j, {"analysis", "prefactor"}, f.prefactor);
    put(j, {"analysis", "fit_lags"}, f.fit_lags);
    put(j, {"analysis", "ratio_floor"}, f.ratio_floor);
    put(j, {"analysis", "max_gap"}, f.max_gap);
    put(j, {"analysis", "tail_ramp"}, f.tail_ramp);
    put(j, {"analysis", "jackknife_blocks"}, f.jackknife_blocks);
    put(j, {"analysis", "flag_threshold"}, f.flag_threshold);
    put(j, {"analysis", "cross"}, f.cross);
    put(j, {"analysis", "auto"}, f.auto_spectra);

    put(j, {"tone", "amplitude"}, f.tone_amplitude);
    put(j, {"tone", "freq_hz"}, f.tone_freq);
    put(j, {"tone", "phase"}, f.tone_phase);

    if (const char* env = std::getenv("SSCS_OUTPUT_DIR"); env != nullptr && *env != '\0') j["output_dir"] = env;
    return j;
}

sscs::PipelineConfig load_config(const ConfigFlags& f) { return sscs::pipeline_config_from_json(merged_config(f).dump()); }

// Analysis never looks at the seed or the spectrum, so both may be absent.
sscs::PipelineConfig load_analysis_config(const ConfigFlags& f) {
    json j = merged_config(f);
    if (!j.contains("seed")) j["seed"] = 0;
    if (!j.contains("spec") && !j.contains("trace_file")) j["spec"] = "default";
    return sscs::pipeline_config_from_json(j.dump());
}

std::string batch_name(const std::string& stem, std::size_t b, const std::string& ext) {
    std::ostringstream os;
    os << stem << "_b" << std::setw(3) << std::setfill('0') << b << ext;
    return os.str();
}

bool has_ext(const std::string& path, const std::string& ext) { return fs::path(path).extension() == ext; }

class OutputDir {
public:
    explicit OutputDir(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    fs::path dir_;
};

// Provenance written next to every output file. No timestamps, so reruns of
// the same configuration produce identical sidecars.
void write_sidecar(const std::string& file, json body) {
    body["file"] = fs::path(file).filename().string();
    body["tool_version"] = kToolVersion;
    body["payload_fingerprint"] = sscs::io::fingerprint(sscs::io::read_text(file));
    sscs::io::write_text(file + ".json", body.dump(2) + "\n");
}

// The output directory is left out, like in the fingerprint, so a rerun into
// another directory still matches byte for byte.
json run_provenance(const sscs::PipelineConfig& cfg) {
    json config = json::parse(sscs::pipeline_config_to_json(cfg));
    config.erase("output_dir");
    return json{{"config_fingerprint", sscs::config_fingerprint(cfg)}, {"seed", cfg.seed}, {"config", config}};
}

// Runs job(b) for every batch on up to `threads` workers.
template <typename Job>
void for_each_batch(std::size_t batches, std::size_t threads, Job job) {
    threads = std::max<std::size_t>(1, threads);
    for (std::size_t start = 0; start < batches; start += threads) {
        std::vector<std::future<void>> running;
        for (std::size_t b = start; b < std::min(batches, start + threads); ++b) {
            running.push_back(std::async(std::launch::async, job, b));
        }
        for (auto& r : running) r.get();
    }
}

enum class ShotFormat { binary, packed, csv };

void write_shots(const std::string& path, const sscs::ShotRecord& r, ShotFormat fmt) {
    if (fmt == ShotFormat::csv) {
        sscs::io::write_shots_csv(path, r);
    } else {
        sscs::io::write_shots_binary(path, r, fmt == ShotFormat::packed);
    }
}

std::string shot_ext(ShotFormat fmt) { return fmt == ShotFormat::csv ? ".csv" : ".bin"; }

sscs::ShotRecord read_shots(const std::string& path) {
    return has_ext(path, ".csv") ? sscs::io::read_shots_csv(path) : sscs::io::read_shots_binary(path);
}

sscs::NoiseTracePair read_traces(const std::string& path) {
    return has_ext(path, ".csv") ? sscs::io::read_traces_csv(path) : sscs::io::read_traces_binary(path);
}

// Writes the spectra of an analysis and returns the exit code implied by the
// flagged-lag fraction.
int write_analysis(const OutputDir& out, const sscs::AnalysisResult& res, const sscs::AnalysisOptions& opt,
                   const json& provenance) {
    auto emit = [&](const std::string& name, const sscs::SpectrumEstimate& s) {
        const std::string path = out.path(name);
        sscs::io::write_spectrum_csv(path, s);
        json body = provenance;
        body["spectrum"] = json::parse(sscs::io::spectrum_metadata_json(s));
        write_sidecar(path, body);
        std::cout << "wrote " << path << "\n";
    };
    if (opt.cross) {
        emit("cross.csv", res.cross);
        emit("cross_u1.csv", res.cross_u1);
        emit("cross_u2.csv", res.cross_u2);
    }
    for (std::size_t a = 0; a < 2; ++a) {
        if (res.auto_w[a]) emit("auto_q" + std::to_string(a + 1) + ".csv", *res.auto_w[a]);
    }

    json summary = provenance;
    summary["max_flagged_fraction"] = res.max_flagged_fraction;
    summary["flag_threshold"] = opt.flag_threshold;
    summary["warnings"] = res.warnings;
    sscs::io::write_text(out.path("summary.json"), summary.dump(2) + "\n");

    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    if (res.max_flagged_fraction > opt.flag_threshold) {
        std::cerr << "error: flagged-lag fraction " << res.max_flagged_fraction << " exceeds threshold "
                  << opt.flag_threshold << "\n";
        return kExitFlagged;
    }
    return 0;
}

int cmd_synth(const ConfigFlags& flags, bool csv) {
    const sscs::PipelineConfig cfg = load_config(flags);
    const OutputDir out(cfg.output_dir);
    const json prov = run_provenance(cfg);
    std::vector<std::string> written(cfg.batches);
    for_each_batch(cfg.batches, cfg.threads, [&](std::size_t b) {
        const sscs::NoiseTracePair tr = sscs::synth_batch(cfg, b);
        written[b] = out.path(batch_name("traces", b, csv ? ".csv" : ".bin"));
        if (csv) {
            sscs::io::write_traces_csv(written[b], tr);
        } else {
            sscs::io::write_traces_binary(written[b], tr);
        }
    });
    // Sidecars and messages are written from one thread, in batch order.
    for (std::size_t b = 0; b < cfg.batches; ++b) {
        json body = prov;
        body["batch"] = b;
        body["batch_seed"] = sscs::batch_trace_seed(cfg.seed, b);
        write_sidecar(written[b], body);
        std::cout << "wrote " << written[b] << "\n";
    }
    return 0;
}

int cmd_simulate(const ConfigFlags& flags, const std::vector<std::string>& trace_inputs, ShotFormat fmt) {
    sscs::PipelineConfig cfg = load_config(flags);
    if (!trace_inputs.empty()) cfg.batches = trace_inputs.size();
    const OutputDir out(cfg.output_dir);
    const json prov = run_provenance(cfg);
    std::vector<std::string> written(cfg.batches);
    for_each_batch(cfg.batches, cfg.threads, [&](std::size_t b) {
        const sscs::NoiseTracePair tr = trace_inputs.empty() ? sscs::synth_batch(cfg, b) : read_traces(trace_inputs[b]);
        written[b] = out.path(batch_name("shots", b, shot_ext(fmt)));
        write_shots(written[b], sscs::simulate_batch(cfg, tr, b), fmt);
    });
    for (std::size_t b = 0; b < cfg.batches; ++b) {
        json body = prov;
        body["batch"] = b;
        body["batch_seed"] = sscs::batch_shot_seed(cfg.seed, b);
        if (!trace_inputs.empty()) body["trace_input"] = trace_inputs[b];
        write_sidecar(written[b], body);
        std::cout << "wrote " << written[b] << "\n";
    }
    return 0;
}

int cmd_analyze(const ConfigFlags& flags, const std::vector<std::string>& shot_inputs) {
    const sscs::PipelineConfig cfg = load_analysis_config(flags);
    std::vector<sscs::ShotRecord> batches;
    json inputs = json::array();
    for (const auto& path : shot_inputs) {
        batches.push_back(read_shots(path));
        inputs.push_back({{"file", path}, {"fingerprint", sscs::io::fingerprint(sscs::io::read_text(path))}});
    }
    const sscs::AnalysisResult res = sscs::analyze(batches, cfg.analysis, cfg.threads);

    const json analysis = json::parse(sscs::pipeline_config_to_json(cfg)).at("analysis");
    json prov{{"analysis_fingerprint", sscs::io::fingerprint(analysis.dump())},
              {"analysis", analysis},
              {"inputs", inputs},
              {"batches", batches.size()}};
    return write_analysis(OutputDir(cfg.output_dir), res, cfg.analysis, prov);
}

int cmd_pipeline(const ConfigFlags& flags, bool keep, ShotFormat fmt) {
    const sscs::PipelineConfig cfg = load_config(flags);
    const OutputDir out(cfg.output_dir);
    const json prov = run_provenance(cfg);
    std::vector<sscs::ShotRecord> shots(cfg.batches);
    for_each_batch(cfg.batches, cfg.threads, [&](std::size_t b) {
        const sscs::NoiseTracePair tr = sscs::synth_batch(cfg, b);
        shots[b] = sscs::simulate_batch(cfg, tr, b);
        if (keep) {
            sscs::io::write_traces_binary(out.path(batch_name("traces", b, ".bin")), tr);
            write_shots(out.path(batch_name("shots", b, shot_ext(fmt))), shots[b], fmt);
        }
    });
    if (keep) {
        for (std::size_t b = 0; b < cfg.batches; ++b) {
            json body = prov;
            body["batch"] = b;
            body["batch_seed"] = sscs::batch_trace_seed(cfg.seed, b);
            write_sidecar(out.path(batch_name("traces", b, ".bin")), body);
            body["batch_seed"] = sscs::batch_shot_seed(cfg.seed, b);
            write_sidecar(out.path(batch_name("shots", b, shot_ext(fmt))), body);
        }
    }
    const sscs::AnalysisResult res = sscs::analyze(shots, cfg.analysis, cfg.threads);
    return write_analysis(out, res, cfg.analysis, prov);
}

struct OptimizeArgs {
    double t2star_1 = 0.0;
    double t2star_2 = 0.0;
    std::string mode = "cross";
    int m = 0;
    int l = 0;
    double threshold = 0.2;
    std::string out;
};

int cmd_optimize(const OptimizeArgs& a) {
    const sscs::EvolutionTimes t = sscs::optimize_evolution_times(a.t2star_1, a.t2star_2);
    const sscs::FrequencyMode mode = sscs::frequency_mode_from_string(a.mode);
    const sscs::FrequencySuggestion s = sscs::suggest_frequencies(mode, t.tau_a, t.tau_b, a.m, a.l, a.threshold);
    json card{{"t2star_1", a.t2star_1},
              {"t2star_2", a.t2star_2},
              {"x_star", t.x_star},
              {"tau_over_t2star", t.ratio},
              {"g_max", t.g_max},
              {"tau_1", t.tau_a},
              {"tau_2", t.tau_b},
              {"mode", sscs::to_string(mode)},
              {"m", s.m},
              {"l", s.l},
              {"omega_1", s.omega_1},
              {"omega_2", s.omega_2},
              {"feasible", s.feasible},
              {"min_abs_factor", s.min_abs_factor},
              {"report", s.report},
              {"tool_version", kToolVersion}};
    const std::string text = card.dump(2) + "\n";
    if (a.out.empty()) {
        std::cout << text;
    } else {
        sscs::io::write_text(a.out, text);
        std::cout << "wrote " << a.out << "\n";
    }
    return s.feasible ? 0 : 1;
}

struct AliasArgs {
    double t0 = 1.0;
    double dt = 0.01;
    int points = 200;
    int terms = 10000;
    std::string out;
};

// Closed forms and truncated folding sums for the exponential kernel on
// [0, f_N], f_N = 1 / (4 dt).
int cmd_alias_demo(const AliasArgs& a) {
    if (a.points < 2) throw std::invalid_argument("alias-demo: need at least two points");
    const double t0 = a.t0;
    const sscs::SpectrumFn X = [t0](double f) {
        const double w = 2.0 * std::numbers::pi * f * t0;
        return std::complex<double>(2.0 * t0 / (1.0 + w * w), 0.0);
    };
    const double fs = 1.0 / (2.0 * a.dt);
    const double f_n = 1.0 / (4.0 * a.dt);

    std::ostringstream os;
    os << std::setprecision(12);
    os << "f_Hz,X,Y_e,Y_o,Y_bar,Y_e_sum,Y_o_sum,Y_bar_sum\n";
    for (int i = 0; i < a.points; ++i) {
        const double f = f_n * static_cast<double>(i) / static_cast<double>(a.points - 1);
        const sscs::ClosedForms c = sscs::exp_kernel_closed_forms(t0, a.dt, f);
        auto fold = [&](sscs::Parity p) { return sscs::fold_spectrum(X, f, {fs, a.terms, p}).value.real(); };
        os << f << ',' << c.X << ',' << c.Y_e << ',' << c.Y_o << ',' << c.Y_bar << ',' << fold(sscs::Parity::even)
           << ',' << fold(sscs::Parity::odd) << ',' << fold(sscs::Parity::averaged) << '\n';
    }
    const sscs::NyquistReport r = sscs::nyquist_bound_check(X, fs, a.terms);
    std::cerr << r.summary << "\n";

    if (a.out.empty()) {
        std::cout << os.str();
    } else {
        sscs::io::write_text(a.out, os.str());
        write_sidecar(a.out, json{{"t0", a.t0},
                                  {"dt", a.dt},
                                  {"points", a.points},
                                  {"terms", a.terms},
                                  {"nyquist",
                                   {{"ratio_e", r.ratio_e},
                                    {"ratio_bar", r.ratio_bar},
                                    {"even_bound", r.even_bound},
                                    {"odd_zero", r.odd_zero},
                                    {"averaged_bound", r.averaged_bound}}}});
        std::cout << "wrote " << a.out << "\n";
    }
    return 0;
}

ShotFormat shot_format_from_string(const std::string& s) {
    if (s == "binary") return ShotFormat::binary;
    if (s == "packed") return ShotFormat::packed;
    if (s == "csv") return ShotFormat::csv;
    throw std::invalid_argument("unknown shot format '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-spectrum estimation from sequential two-qubit Ramsey shots"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    ConfigFlags synth_flags, sim_flags, an_flags, pipe_flags;
    bool synth_csv = false;
    std::string sim_format = "binary", pipe_format = "binary";
    std::vector<std::string> trace_inputs, shot_inputs;
    bool keep = false;
    OptimizeArgs opt_args;
    AliasArgs alias_args;

    auto* synth = app.add_subcommand("synth", "Synthesize correlated noise traces per batch");
    add_config_flags(synth, synth_flags);
    synth->add_flag("--csv", synth_csv, "Write CSV instead of binary traces");

    auto* simulate = app.add_subcommand("simulate", "Sample Ramsey shots from synthesized or recorded traces");
    add_config_flags(simulate, sim_flags);
    simulate->add_option("traces", trace_inputs, "Trace files, one per batch (synthesized when omitted)")
        ->check(CLI::ExistingFile);
    simulate->add_option("--format", sim_format, "binary, packed or csv")
        ->check(CLI::IsMember({"binary", "packed", "csv"}));

    auto* analyze = app.add_subcommand("analyze", "Estimate spectra from shot files, one per batch");
    add_config_flags(analyze, an_flags);
    analyze->add_option("shots", shot_inputs, "Shot files (.bin or .csv)")->required()->check(CLI::ExistingFile);

    auto* pipeline = app.add_subcommand("pipeline", "synth, simulate and analyze in one run");
    add_config_flags(pipeline, pipe_flags);
    pipeline->add_flag("--keep-intermediate", keep, "Also write the traces and shots of every batch");
    pipeline->add_option("--format", pipe_format, "Shot format for --keep-intermediate")
        ->check(CLI::IsMember({"binary", "packed", "csv"}));

    auto* optimize = app.add_subcommand("optimize", "Evolution times and detunings from T2*");
    optimize->add_option("--t2star1", opt_args.t2star_1, "T2* of qubit 1 (s)")->required();
    optimize->add_option("--t2star2", opt_args.t2star_2, "T2* of qubit 2 (s)")->required();
    optimize->add_option("--mode", opt_args.mode, "cross, auto_short, auto_long or joint");
    optimize->add_option("--m", opt_args.m, "First lattice index");
    optimize->add_option("--l", opt_args.l, "Second lattice index");
    optimize->add_option("--threshold", opt_args.threshold, "Smallest acceptable |factor| in joint mode");
    optimize->add_option("--out", opt_args.out, "Write the parameter card here instead of stdout");

    auto* alias = app.add_subcommand("alias-demo", "Folding sums and closed forms for an exponential kernel");
    alias->add_option("--t0", alias_args.t0, "Correlation time of the kernel (s)");
    alias->add_option("--dt", alias_args.dt, "Slot duration (s)");
    alias->add_option("--points", alias_args.points, "Frequencies on [0, 1 / 4 dt]");
    alias->add_option("--terms", alias_args.terms, "Truncation of the folding sums");
    alias->add_option("--out", alias_args.out, "Write CSV here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) return cmd_synth(synth_flags, synth_csv);
        if (*simulate) return cmd_simulate(sim_flags, trace_inputs, shot_format_from_string(sim_format));
        if (*analyze) return cmd_analyze(an_flags, shot_inputs);
        if (*pipeline) return cmd_pipeline(pipe_flags, keep, shot_format_from_string(pipe_format));
        if (*optimize) return cmd_optimize(opt_args);
        if (*alias) return cmd_alias_demo(alias_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
