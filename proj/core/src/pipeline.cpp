#include "sscs/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <set>
#include <stdexcept>

#include "sscs/io.hpp"
#include "sscs/rng.hpp"

namespace sscs {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument("config: " + where + " must be an object");
    for (const auto& [key, _] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
        }
    }
}

json component_json(const PsdComponentParams& p) { return json{{"I", p.I}, {"J", p.J}, {"t_c", p.t_c}}; }

json config_json(const PipelineConfig& c, bool with_output) {
    json j;
    j["seed"] = c.seed;
    j["batches"] = c.batches;
    j["threads"] = c.threads;
    if (with_output) j["output_dir"] = c.output_dir;
    j["spec"] = {{"entries", {{"11", component_json(c.spec.s11)}, {"22", component_json(c.spec.s22)},
                              {"12", component_json(c.spec.c12)}}}};
    j["trace_file"] = c.trace_file;
    auto qubit = [](const QubitParams& q) { return json{{"tau", q.tau}, {"omega", q.omega}, {"t2star", q.t2star}}; };
    auto spam = [](const SpamModel& s) { return json{{"p_e", s.p_e}, {"p_b", s.p_b}}; };
    const auto& s = c.sequence;
    j["sequence"] = {{"delta_t", s.delta_t},
                     {"n_pairs", s.n_pairs},
                     {"quasi_static_substeps", s.quasi_static_substeps},
                     {"qubit1", qubit(s.qubit1)},
                     {"qubit2", qubit(s.qubit2)},
                     {"spam1", spam(s.spam1)},
                     {"spam2", spam(s.spam2)}};
    const auto& a = c.analysis;
    j["analysis"] = {{"max_lag", a.max_lag ? json(*a.max_lag) : json(nullptr)},
                     {"bins_per_decade", a.bins_per_decade},
                     {"prefactor", to_string(a.prefactor)},
                     {"fit_lags", a.fit_lags},
                     {"ratio_floor", a.ratio_floor},
                     {"max_gap", a.max_gap},
                     {"tail_ramp", a.tail_ramp},
                     {"jackknife_blocks", a.jackknife_blocks},
                     {"flag_threshold", a.flag_threshold},
                     {"cross", a.cross},
                     {"auto", a.auto_spectra}};
    j["tone"] = {{"amplitude", c.tone.amplitude}, {"freq_hz", c.tone.freq_hz}, {"phase", c.tone.phase}};
    return j;
}

}  // namespace

double band_variance(const PsdComponentParams& p, std::size_t n, double dt) {
    // Matches the discrete synthesis: var = 4 pi^2 / (n dt) (2 sum_{k<n/2} C_k + C_{n/2}).
    const std::size_t half = n / 2;
    double acc = 0.0;
    for (std::size_t k = 1; k <= half; ++k) {
        const double f = static_cast<double>(k) / (static_cast<double>(n) * dt);
        acc += (k == half ? 1.0 : 2.0) * eval_component(p, f);
    }
    return 4.0 * kPi * kPi / (static_cast<double>(n) * dt) * acc;
}

PipelineConfig default_pipeline_config(std::size_t n_pairs, std::size_t batches) {
    PipelineConfig c;
    c.spec = default_simulation_spec().spec;
    c.batches = batches;
    c.seed = 20240601;
    auto& s = c.sequence;
    s.delta_t = 250e-6;
    s.n_pairs = n_pairs;
    const std::size_t n_samples = 2 * n_pairs;
    const double t2_1 = std::sqrt(2.0 / band_variance(c.spec.s11, n_samples, s.delta_t));
    const double t2_2 = std::sqrt(2.0 / band_variance(c.spec.s22, n_samples, s.delta_t));
    s.qubit1 = {t2_1, kPi / (4.0 * t2_1), t2_1};
    s.qubit2 = {t2_2, 0.0, t2_2};
    return c;
}

PipelineConfig pipeline_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    reject_unknown(j, {"seed", "batches", "threads", "output_dir", "spec", "trace_file", "sequence", "analysis", "tone"},
                   "top level");
    PipelineConfig c;
    if (!j.contains("seed")) throw std::invalid_argument("config: 'seed' is mandatory");
    c.seed = j.at("seed").get<std::uint64_t>();
    c.batches = j.value("batches", std::size_t{1});
    c.threads = j.value("threads", std::size_t{1});
    c.output_dir = j.value("output_dir", std::string("."));
    c.trace_file = j.value("trace_file", std::string());

    if (j.contains("spec")) {
        const json& sp = j.at("spec");
        if (sp.is_string()) {
            if (sp.get<std::string>() != "default") throw std::invalid_argument("config: spec must be an object or \"default\"");
            c.spec = default_simulation_spec().spec;
        } else {
            c.spec = io::psd_spec_from_json(sp.dump());
        }
    } else if (c.trace_file.empty()) {
        throw std::invalid_argument("config: either 'spec' or 'trace_file' is required");
    }

    const json seq = j.value("sequence", json::object());
    reject_unknown(seq, {"delta_t", "n_pairs", "quasi_static_substeps", "qubit1", "qubit2", "spam1", "spam2"}, "sequence");
    auto& s = c.sequence;
    s.delta_t = seq.value("delta_t", 250e-6);
    s.n_pairs = seq.value("n_pairs", std::size_t{1} << 18);
    s.quasi_static_substeps = seq.value("quasi_static_substeps", std::size_t{1});
    const std::size_t n_samples = 2 * s.n_pairs;

    for (int a = 1; a <= 2; ++a) {
        const std::string key = a == 1 ? "qubit1" : "qubit2";
        const json q = seq.value(key, json::object());
        reject_unknown(q, {"tau", "omega", "t2star"}, key);
        QubitParams& qp = a == 1 ? s.qubit1 : s.qubit2;
        const PsdComponentParams& comp = a == 1 ? c.spec.s11 : c.spec.s22;
        qp.t2star = q.value("t2star", 0.0);
        if (qp.t2star <= 0.0 && c.trace_file.empty()) {
            const double var = band_variance(comp, n_samples, s.delta_t);
            qp.t2star = var > 0.0 ? std::sqrt(2.0 / var) : 0.0;
        }
        // Evolution time defaults to T2*; detunings to the m = l = 0 cross setting.
        qp.tau = q.value("tau", 0.0);
        if (qp.tau <= 0.0) qp.tau = qp.t2star;
        if (q.contains("omega")) {
            qp.omega = q.at("omega").get<double>();
        } else {
            qp.omega = (a == 1 && qp.tau > 0.0) ? kPi / (4.0 * qp.tau) : 0.0;
        }
        const std::string skey = a == 1 ? "spam1" : "spam2";
        const json sp = seq.value(skey, json::object());
        reject_unknown(sp, {"p_e", "p_b"}, skey);
        SpamModel& sm = a == 1 ? s.spam1 : s.spam2;
        sm.p_e = sp.value("p_e", 0.0);
        sm.p_b = sp.value("p_b", 0.0);
    }

    const json an = j.value("analysis", json::object());
    reject_unknown(an, {"max_lag", "bins_per_decade", "prefactor", "fit_lags", "ratio_floor", "max_gap", "tail_ramp", "jackknife_blocks",
                        "flag_threshold", "cross", "auto"},
                   "analysis");
    auto& a = c.analysis;
    if (an.contains("max_lag") && !an.at("max_lag").is_null()) a.max_lag = an.at("max_lag").get<std::size_t>();
    a.bins_per_decade = an.value("bins_per_decade", 10);
    a.prefactor = prefactor_mode_from_string(an.value("prefactor", std::string("quasi_static")));
    a.fit_lags = an.value("fit_lags", std::size_t{8});
    a.ratio_floor = an.value("ratio_floor", 10.0);
    a.max_gap = an.value("max_gap", std::size_t{32});
    a.tail_ramp = an.value("tail_ramp", 3.0);
    a.jackknife_blocks = an.value("jackknife_blocks", std::size_t{16});
    a.flag_threshold = an.value("flag_threshold", 0.2);
    a.cross = an.value("cross", true);
    a.auto_spectra = an.value("auto", true);

    const json tone = j.value("tone", json::object());
    reject_unknown(tone, {"amplitude", "freq_hz", "phase"}, "tone");
    c.tone.amplitude = tone.value("amplitude", 0.0);
    c.tone.freq_hz = tone.value("freq_hz", 50.0);
    c.tone.phase = tone.value("phase", 0.0);

    if (c.batches < 1) throw std::invalid_argument("config: batches must be >= 1");
    return c;
}

std::string pipeline_config_to_json(const PipelineConfig& cfg) { return config_json(cfg, true).dump(2); }

std::string config_fingerprint(const PipelineConfig& cfg) { return io::fingerprint(config_json(cfg, false).dump()); }

std::uint64_t batch_trace_seed(std::uint64_t seed, std::size_t batch) {
    return rng::derive_key(seed, 0x5452414345ULL, batch);
}

std::uint64_t batch_shot_seed(std::uint64_t seed, std::size_t batch) {
    return rng::derive_key(seed, 0x53484F5453ULL, batch);
}

NoiseTracePair synth_batch(const PipelineConfig& cfg, std::size_t batch) {
    const auto& s = cfg.sequence;
    const std::size_t sub = std::max<std::size_t>(1, s.quasi_static_substeps);
    const std::size_t len = 2 * s.n_pairs * sub;
    const double dt = s.delta_t / static_cast<double>(sub);
    NoiseTracePair tr;
    if (cfg.trace_file.empty()) {
        tr = synthesize(cfg.spec, len, dt, batch_trace_seed(cfg.seed, batch));
    } else {
        // Batch b reads the b-th consecutive segment of the recorded traces.
        const bool csv = cfg.trace_file.size() >= 4 && cfg.trace_file.substr(cfg.trace_file.size() - 4) == ".csv";
        const NoiseTracePair all = csv ? io::read_traces_csv(cfg.trace_file) : io::read_traces_binary(cfg.trace_file);
        if (std::abs(all.dt - dt) > 1e-9 * dt) {
            throw std::invalid_argument("synth_batch: trace file dt does not match delta_t / quasi_static_substeps");
        }
        if (all.size() < (batch + 1) * len) {
            throw std::invalid_argument("synth_batch: trace file holds " + std::to_string(all.size()) +
                                        " samples, batch " + std::to_string(batch) + " needs " +
                                        std::to_string((batch + 1) * len));
        }
        const auto first = static_cast<std::ptrdiff_t>(batch * len);
        const auto last = first + static_cast<std::ptrdiff_t>(len);
        tr.dt = all.dt;
        tr.delta_omega_1.assign(all.delta_omega_1.begin() + first, all.delta_omega_1.begin() + last);
        tr.delta_omega_2.assign(all.delta_omega_2.begin() + first, all.delta_omega_2.begin() + last);
    }
    if (cfg.tone.amplitude != 0.0) add_tone(tr, cfg.tone.amplitude, cfg.tone.freq_hz, cfg.tone.phase);
    return tr;
}

ShotRecord simulate_batch(const PipelineConfig& cfg, const NoiseTracePair& noise, std::size_t batch) {
    SequenceConfig s = cfg.sequence;
    s.seed = batch_shot_seed(cfg.seed, batch);
    return run_sequence(s, noise);
}

BatchAnalysis analyze_batch(const ShotRecord& shots, const AnalysisOptions& opt) {
    BatchAnalysis out;
    CorrelatorOptions copt;
    copt.max_lag = opt.max_lag;
    copt.jackknife_blocks = opt.jackknife_blocks;
    if (copt.max_lag && *copt.max_lag >= shots.n()) copt.max_lag = shots.n() - 1;

    if (opt.cross) {
        const CorrelatorPair pair = estimate_correlators(shots, 1, 2, copt);
        const LogCombination u1 = compute_U(pair, 1, opt.ratio_floor);
        const LogCombination u2 = compute_U(pair, 2, opt.ratio_floor);
        const SpectrumParts parts = spectrum_from_U(u1, u2, opt.prefactor, opt.max_gap, opt.tail_ramp);
        out.cross_avg = log_bin(positive_frequencies(parts.averaged), opt.bins_per_decade);
        out.cross_u1 = log_bin(positive_frequencies(parts.even), opt.bins_per_decade);
        out.cross_u2 = log_bin(positive_frequencies(parts.odd), opt.bins_per_decade);
        out.cross_flagged_fraction = parts.averaged.meta.flagged_fraction;
    }
    if (opt.auto_spectra) {
        for (int a = 1; a <= 2; ++a) {
            try {
                const CorrelatorPair same = estimate_correlators(shots, a, a, copt);
                const LogCombination w = compute_W(same.forward, opt.fit_lags, opt.ratio_floor);
                for (const auto& msg : w.warnings) out.warnings.push_back(msg);
                const SpectrumEstimate s = spectrum_from_W(w, opt.prefactor, opt.max_gap, opt.tail_ramp);
                out.auto_w[static_cast<std::size_t>(a - 1)] = log_bin(positive_frequencies(s), opt.bins_per_decade);
                out.auto_flagged_fraction[static_cast<std::size_t>(a - 1)] = s.meta.flagged_fraction;
            } catch (const std::exception& e) {
                out.warnings.push_back("auto spectrum of qubit " + std::to_string(a) + " unavailable: " + e.what());
            }
        }
    }
    return out;
}

AnalysisResult analyze(const std::vector<ShotRecord>& batches, const AnalysisOptions& opt, std::size_t threads) {
    if (batches.empty()) throw std::invalid_argument("analyze: no shot records");
    const auto& ref = batches.front();
    for (const auto& b : batches) {
        const bool same = b.n() == ref.n() && b.config.delta_t == ref.config.delta_t &&
                          b.config.qubit1.tau == ref.config.qubit1.tau && b.config.qubit2.tau == ref.config.qubit2.tau;
        if (!same) throw std::invalid_argument("analyze: incompatible shot headers across batches");
    }

    std::vector<BatchAnalysis> per(batches.size());
    threads = std::max<std::size_t>(1, threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < batches.size(); ++i) per[i] = analyze_batch(batches[i], opt);
    } else {
        for (std::size_t start = 0; start < batches.size(); start += threads) {
            std::vector<std::future<BatchAnalysis>> jobs;
            for (std::size_t i = start; i < std::min(batches.size(), start + threads); ++i) {
                jobs.push_back(std::async(std::launch::async, [&, i] { return analyze_batch(batches[i], opt); }));
            }
            for (std::size_t i = 0; i < jobs.size(); ++i) per[start + i] = jobs[i].get();
        }
    }

    AnalysisResult res;
    std::set<std::string> seen;
    for (const auto& p : per) {
        for (const auto& w : p.warnings) {
            if (seen.insert(w).second) res.warnings.push_back(w);
        }
        res.max_flagged_fraction = std::max(res.max_flagged_fraction, p.cross_flagged_fraction);
        for (double f : p.auto_flagged_fraction) res.max_flagged_fraction = std::max(res.max_flagged_fraction, f);
    }
    if (opt.cross) {
        std::vector<SpectrumEstimate> avg, e, o;
        for (const auto& p : per) {
            avg.push_back(p.cross_avg);
            e.push_back(p.cross_u1);
            o.push_back(p.cross_u2);
        }
        res.cross = average_batches(avg);
        res.cross_u1 = average_batches(e);
        res.cross_u2 = average_batches(o);
    }
    for (std::size_t a = 0; a < 2; ++a) {
        std::vector<SpectrumEstimate> v;
        for (const auto& p : per) {
            if (p.auto_w[a]) v.push_back(*p.auto_w[a]);
        }
        if (v.size() == per.size()) res.auto_w[a] = average_batches(v);
    }
    return res;
}

}  // namespace sscs
