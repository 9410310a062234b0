// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Pass a criterion name (c1 .. c8, tone)
// to run a subset; c2 reuses the c1 runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sscs/alias_analytics.hpp"
#include "sscs/correlators.hpp"
#include "sscs/detail/analytic_set.hpp"
#include "sscs/io.hpp"
#include "sscs/log_combination.hpp"
#include "sscs/noise_synth.hpp"
#include "sscs/param_opt.hpp"
#include "sscs/pipeline.hpp"
#include "sscs/spectra_model.hpp"
#include "sscs/spectrum.hpp"
#include "support.hpp"

#ifndef SSCS_CONFIG_DIR
#define SSCS_CONFIG_DIR "configs"
#endif

namespace {

using namespace sscs;
using sscs::testing::Gen;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double wrap_phase(double p) {
    while (p > kPi) p -= 2 * kPi;
    while (p <= -kPi) p += 2 * kPi;
    return p;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2: scaled two-qubit reproduction.

struct CrossRuns {
    PipelineConfig cfg;
    AnalysisResult clean;
    AnalysisResult spam;
};

const CrossRuns& cross_runs() {
    static const CrossRuns runs = [] {
        CrossRuns r;
        r.cfg = pipeline_config_from_json(io::read_text(std::string(SSCS_CONFIG_DIR) + "/cross_demo.json"));
        r.cfg.analysis.auto_spectra = false;
        std::vector<ShotRecord> clean, spam;
        PipelineConfig noisy = r.cfg;
        noisy.sequence.spam1 = {0.15, 0.15};
        noisy.sequence.spam2 = {0.15, 0.15};
        for (std::size_t b = 0; b < r.cfg.batches; ++b) {
            const NoiseTracePair tr = synth_batch(r.cfg, b);
            clean.push_back(simulate_batch(r.cfg, tr, b));
            spam.push_back(simulate_batch(noisy, tr, b));
        }
        r.clean = analyze(clean, r.cfg.analysis);
        r.spam = analyze(spam, noisy.analysis);
        return r;
    }();
    return runs;
}

SpectrumEstimate cross_truth(const PipelineConfig& cfg, int bins) {
    const auto fine = sscs::testing::interleaved_grid(cfg.sequence.n_pairs, cfg.sequence.delta_t);
    return sscs::testing::binned_truth(fine, [&](double f) { return cd(eval_psd(cfg.spec, 1, 2, f), 0.0); }, bins);
}

Outcome criterion1() {
    const CrossRuns& r = cross_runs();
    const auto& est = r.clean.cross;
    const int b = r.cfg.analysis.bins_per_decade;
    const SpectrumEstimate truth = cross_truth(r.cfg, b);
    if (truth.frequencies != est.frequencies) return {false, "estimate and truth grids differ"};

    const double dt = r.cfg.sequence.delta_t;
    const double f_lo = 1.0 / (4.0 * static_cast<double>(r.cfg.sequence.n_pairs) * dt);
    const double f_n = 1.0 / (4.0 * dt);
    const double centre = std::sqrt(f_lo * f_n);
    const double band_lo = centre / std::pow(10.0, 1.5);
    const double band_hi = centre * std::pow(10.0, 1.5);
    const auto root = find_sign_flip(r.cfg.spec.c12, band_lo, band_hi);
    if (!root) return {false, "no sign flip of the reference cross spectrum inside the band"};
    const auto root_bin = static_cast<long long>(std::floor(std::log10(*root) * b + 1e-9));

    double worst_db = 0.0, worst_db_f = 0.0;
    double worst_phase = 0.0;
    std::size_t phase_bad = 0, spam_bad = 0, n_bins = 0, db_bad = 0, db_bad_near_root = 0;
    double worst_spam = 0.0;
    std::ostringstream bad_list;
    for (std::size_t i = 0; i < est.size(); ++i) {
        const double f = est.frequencies[i];
        if (f < band_lo || f > band_hi) continue;
        ++n_bins;
        const double err = std::abs(sscs::testing::db(std::abs(est.values[i]) / std::abs(truth.values[i])));
        if (err > worst_db) {
            worst_db = err;
            worst_db_f = est.frequencies[i];
        }
        const auto j = static_cast<long long>(std::floor(std::log10(f) * b + 1e-9));
        if (!(err <= 3.0)) {
            ++db_bad;
            bad_list << (db_bad > 1 ? ", " : "") << fmt("%.3g", f);
            if (j >= root_bin - 1 && j <= root_bin + 1) ++db_bad_near_root;
        }
        if (j < root_bin - 1 || j > root_bin + 1) {
            const double target = j < root_bin ? 0.0 : kPi;
            const double dev = std::abs(wrap_phase(std::arg(est.values[i]) - target));
            worst_phase = std::max(worst_phase, dev);
            if (dev >= kPi / 4) ++phase_bad;
        }
        const double z = std::abs(r.spam.cross.values[i] - est.values[i]) / r.spam.cross.stderr_[i];
        worst_spam = std::max(worst_spam, z);
        if (!(z < 5.0)) ++spam_bad;
    }
    std::ostringstream os;
    os << n_bins << " bins in [" << fmt("%.3g", band_lo) << ", " << fmt("%.3g", band_hi)
       << "] Hz; max |dB error| " << fmt("%.2f", worst_db) << " at " << fmt("%.3g", worst_db_f) << " Hz (tol 3), " << db_bad << " bins over (" << db_bad_near_root << " within +-1 bin of the flip)" << (db_bad ? " at [" + bad_list.str() + "] Hz" : std::string()) << "; flip " << fmt("%.3g", *root)
       << " Hz, max phase deviation outside +-1 bin " << fmt("%.3f", worst_phase) << " rad (tol pi/4); SPAM max "
       << fmt("%.2f", worst_spam) << " SE (tol 5)";
    return {worst_db <= 3.0 && phase_bad == 0 && spam_bad == 0 && n_bins > 0, os.str()};
}

Outcome criterion2() {
    const CrossRuns& r = cross_runs();
    const double f_n = 1.0 / (4.0 * r.cfg.sequence.delta_t);
    const SpectrumEstimate truth = cross_truth(r.cfg, r.cfg.analysis.bins_per_decade);
    auto err = [&](const SpectrumEstimate& s) {
        std::vector<double> e;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.frequencies[i] < f_n / std::sqrt(10.0) || s.frequencies[i] > f_n) continue;
            e.push_back(std::abs(std::log(std::abs(s.values[i]) / std::abs(truth.values[i]))));
        }
        return sscs::testing::median(e);
    };
    const double avg = err(r.clean.cross);
    const double e1 = err(r.clean.cross_u1);
    const double e2 = err(r.clean.cross_u2);
    std::ostringstream os;
    os << "median |ln error| in top half-decade: averaged " << fmt("%.4f", avg) << ", U1-only " << fmt("%.4f", e1)
       << ", U2-only " << fmt("%.4f", e2);
    return {avg < e1 && avg < e2, os.str()};
}

// ---------------------------------------------------------------------------
// Criterion 3: folding closed forms for the exponential kernel.

Outcome criterion3() {
    const double t0 = 1.0, dt = 0.01;
    const double f_n = 1.0 / (4.0 * dt);
    const ClosedForms at_n = exp_kernel_closed_forms(t0, dt, f_n);
    const double r_e = at_n.Y_e / at_n.X - kPi * kPi / 4.0;
    const double r_o = at_n.Y_o / at_n.X;
    const double r_b = at_n.Y_bar / at_n.X - kPi * kPi / 8.0;
    const bool exact = std::abs(r_e) <= 1e-10 && std::abs(r_o) <= 1e-10 && std::abs(r_b) <= 1e-10;

    const SpectrumFn X = [&](double f) { return cd(2.0 * t0 / (1.0 + 4.0 * kPi * kPi * f * f * t0 * t0), 0.0); };
    const double f_s = 1.0 / (2.0 * dt);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double f = f_n * i / 200.0;
        const ClosedForms c = exp_kernel_closed_forms(t0, dt, f);
        const double ye = fold_spectrum(X, f, {f_s, 10000, Parity::even}).value.real();
        const double yo = fold_spectrum(X, f, {f_s, 10000, Parity::odd}).value.real();
        const double yb = fold_spectrum(X, f, {f_s, 10000, Parity::averaged}).value.real();
        // The odd form vanishes at f_N, so it is compared on the scale of the even form.
        worst = std::max({worst, std::abs(ye - c.Y_e) / c.Y_e, std::abs(yo - c.Y_o) / c.Y_e,
                          std::abs(yb - c.Y_bar) / c.Y_bar});
    }
    std::ostringstream os;
    os << "f_N residuals " << fmt("%.1e", r_e) << ", " << fmt("%.1e", r_o) << ", " << fmt("%.1e", r_b)
       << " (tol 1e-10); folded sums vs closed forms max rel " << fmt("%.2e", worst) << " (tol 1e-3)";
    return {exact && worst <= 1e-3, os.str()};
}

// ---------------------------------------------------------------------------
// Criterion 4: optimal evolution time.

Outcome criterion4() {
    const EvolutionTimes opt = optimize_evolution_times(1.0, 1.0);
    const double grid = grid_search_x_star(1e-4, 20.0);
    const bool ok = std::abs(opt.x_star - 2.72877) <= 1e-4 && std::abs(opt.ratio - 1.16807) <= 1e-4 &&
                    std::abs(grid - opt.x_star) <= 2e-4;
    std::ostringstream os;
    os << "x* = " << fmt("%.6f", opt.x_star) << ", tau/T2* = " << fmt("%.6f", opt.ratio) << ", grid x* = "
       << fmt("%.6f", grid) << " (tol 1e-4)";
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// Criterion 5: log combinations of analytic correlators.

Outcome criterion5() {
    Gen g(5005);
    double worst = 0.0;
    int draws = 0;
    while (draws < 100) {
        AnalyticSetup s;
        s.tau_a = g.uniform(0.5, 2.0) * 1e-6;
        s.tau_b = g.uniform(0.5, 2.0) * 1e-6;
        s.var_a = g.uniform(0.1, 2.0) / (s.tau_a * s.tau_a);
        s.var_b = g.uniform(0.1, 2.0) / (s.tau_b * s.tau_b);
        s.omega_a = g.uniform(-kPi, kPi) / s.tau_a;
        s.omega_b = g.uniform(-kPi, kPi) / s.tau_b;
        s.B_a = g.uniform(0.3, 1.0);
        s.B_b = g.uniform(0.3, 1.0);
        if (cross_factor_margin(s.omega_a, s.tau_a, s.omega_b, s.tau_b) < 0.2) continue;
        const double dt = 1e-3;
        const std::size_t n_lags = 64;
        const double rho = g.sign() * g.uniform(0.05, 0.95);
        const double t0 = g.uniform(0.5, 4.0) * static_cast<double>(n_lags) * dt;
        const double f0 = g.uniform(0.0, 0.2) / t0;
        const double amp = rho * std::sqrt(s.var_a * s.var_b);
        auto R = [&](double t) { return amp * std::exp(-std::abs(t) / t0) * std::cos(2 * kPi * f0 * t); };
        const CorrelatorSet set = analytic_correlator_set(s, R, n_lags, dt);
        for (int a = 1; a <= 2; ++a) {
            const LogSeries u = compute_U(set, a);
            const cd c0 = u.v[0] - s.tau_a * s.tau_b * R(u.t[0]);
            for (std::size_t k = 0; k < u.size(); ++k) {
                if (u.flagged[k]) {
                    worst = std::max(worst, std::numeric_limits<double>::infinity());
                    continue;
                }
                worst = std::max(worst, std::abs(u.v[k] - s.tau_a * s.tau_b * R(u.t[k]) - c0));
            }
        }
        ++draws;
    }
    return {worst <= 1e-10, "100 draws, max deviation from tau_a tau_b R(t) + const " + fmt("%.2e", worst) +
                                " (tol 1e-10)"};
}

// ---------------------------------------------------------------------------
// Criterion 6: correlator estimators.

Outcome criterion6() {
    Gen g(6006);
    const std::size_t n = 1u << 14;
    std::vector<double> a(n), b(n);
    for (auto* v : {&a, &b}) {
        const auto s = g.pm_one(n, 0.5);
        for (std::size_t i = 0; i < n; ++i) (*v)[i] = s[i];
    }
    const LagSums f = cross_lag_sums(a, b, n - 1, CorrelatorMethod::fft);
    const LagSums d = cross_lag_sums(a, b, n - 1, CorrelatorMethod::direct);
    double fft_err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        fft_err = std::max({fft_err, std::abs(f.forward[k] - d.forward[k]), std::abs(f.backward[k] - d.backward[k])});
    }
    // Normalised estimators as well, jackknife off.
    const auto s1 = g.pm_one(n, 0.6), s2 = g.pm_one(n, 0.45), s3 = g.pm_one(n, 0.5), s4 = g.pm_one(n, 0.3);
    CorrelatorOptions fo, dopt;
    fo.jackknife_blocks = 0;
    dopt.jackknife_blocks = 0;
    dopt.method = CorrelatorMethod::direct;
    const CorrelatorPair cf = estimate_correlators(s1, s2, s3, s4, 1e-3, fo);
    const CorrelatorPair cdir = estimate_correlators(s1, s2, s3, s4, 1e-3, dopt);
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t k = 0; k < n; ++k) {
            fft_err = std::max(fft_err, std::abs(cf.forward.channels[c].q[k] - cdir.forward.channels[c].q[k]));
            fft_err = std::max(fft_err, std::abs(cf.backward.channels[c].q[k] - cdir.backward.channels[c].q[k]));
        }
    }

    // Monte Carlo against the closed form on synthesized Gaussian noise.
    const std::size_t pairs = 1u << 20;  // 1 048 576 shots per stream
    const std::size_t n_check = 6;
    const std::size_t blocks = 32;
    double worst_z = 0.0;
    for (int cfg_i = 0; cfg_i < 10; ++cfg_i) {
        const double dt = 1e-4;
        const double tc = g.uniform(2.0, 20.0) * dt;
        // Short-correlated noise only: the closed form is an ensemble average,
        // and a single record cannot average the slowest 1/f components.
        const double I = 0.0;
        const double J = g.log_uniform(1e6, 1e8);
        const double kappa = g.uniform(0.3, 3.0);
        const double rho = g.sign() * g.uniform(0.2, 0.95);
        PsdSpec spec;
        spec.s11 = {I, J, tc};
        spec.s22 = {kappa * I, kappa * J, tc};
        spec.c12 = {rho * std::sqrt(kappa) * I, rho * std::sqrt(kappa) * J, tc};
        const std::size_t m = 2 * pairs;
        auto R = [&](const PsdComponentParams& c, long long lag) {
            return sscs::testing::discrete_correlation(c, m, dt, lag);
        };
        const double var1 = R(spec.s11, 0), var2 = R(spec.s22, 0);

        SequenceConfig seq;
        seq.delta_t = dt;
        seq.n_pairs = pairs;
        seq.seed = 600 + static_cast<std::uint64_t>(cfg_i);
        const double x1 = g.uniform(0.3, 2.5), x2 = g.uniform(0.3, 2.5);
        seq.qubit1 = {std::sqrt(x1 / var1), 0.0, std::sqrt(2.0 / var1)};
        seq.qubit2 = {std::sqrt(x2 / var2), 0.0, std::sqrt(2.0 / var2)};
        do {
            seq.qubit1.omega = g.uniform(-kPi, kPi) / seq.qubit1.tau;
            seq.qubit2.omega = g.uniform(-kPi, kPi) / seq.qubit2.tau;
        } while (cross_factor_margin(seq.qubit1.omega, seq.qubit1.tau, seq.qubit2.omega, seq.qubit2.tau) < 0.2);
        seq.spam1 = {g.uniform(0.0, 0.1), g.uniform(0.0, 0.1)};
        seq.spam2 = {g.uniform(0.0, 0.1), g.uniform(0.0, 0.1)};

        const NoiseTracePair tr = synthesize(spec, m, dt, 9000 + static_cast<std::uint64_t>(cfg_i));
        const ShotRecord shots = run_sequence(seq, tr);

        CorrelatorOptions opt;
        opt.max_lag = n_check - 1;
        opt.jackknife_blocks = 0;
        const CorrelatorPair full = estimate_correlators(shots, 1, 2, opt);

        // Block-to-block scatter gives the standard error of each correlator.
        std::vector<CorrelatorPair> parts;
        const std::size_t len = pairs / blocks;
        for (std::size_t bk = 0; bk < blocks; ++bk) {
            auto cut = [&](int alpha, Label l) {
                const auto& s = shots.stream(alpha, l);
                return std::vector<std::int8_t>(s.begin() + static_cast<std::ptrdiff_t>(bk * len),
                                                s.begin() + static_cast<std::ptrdiff_t>((bk + 1) * len));
            };
            parts.push_back(estimate_correlators(cut(1, Label::XX), cut(1, Label::XY), cut(2, Label::XX),
                                                 cut(2, Label::XY), dt, opt));
        }

        for (int dir = 0; dir < 2; ++dir) {
            AnalyticSetup s;
            const QubitParams& qa = dir == 0 ? seq.qubit1 : seq.qubit2;
            const QubitParams& qb = dir == 0 ? seq.qubit2 : seq.qubit1;
            s.B_a = (dir == 0 ? seq.spam1 : seq.spam2).B();
            s.B_b = (dir == 0 ? seq.spam2 : seq.spam1).B();
            s.omega_a = qa.omega;
            s.omega_b = qb.omega;
            s.tau_a = qa.tau;
            s.tau_b = qb.tau;
            s.var_a = dir == 0 ? var1 : var2;
            s.var_b = dir == 0 ? var2 : var1;
            auto corr = [&](double t) { return R(spec.c12, std::llround(t / dt)); };
            const CorrelatorSet an = analytic_correlator_set(s, corr, n_check, dt);
            const CorrelatorSet& mc = dir == 0 ? full.forward : full.backward;
            for (std::size_t c = 0; c < 4; ++c) {
                for (std::size_t k = 0; k < n_check; ++k) {
                    double sum = 0.0, sum2 = 0.0;
                    for (const auto& p : parts) {
                        const double v = (dir == 0 ? p.forward : p.backward).channels[c].q[k];
                        sum += v;
                        sum2 += v * v;
                    }
                    const double mean = sum / blocks;
                    const double var = (sum2 / blocks - mean * mean) * blocks / (blocks - 1.0);
                    const double se = std::sqrt(var / blocks);
                    worst_z = std::max(worst_z, std::abs(mc.channels[c].q[k] - an.channels[c].q[k]) / se);
                }
            }
        }
    }
    std::ostringstream os;
    os << "FFT vs direct max abs diff " << fmt("%.1e", fft_err) << " (tol 1e-12); Monte Carlo vs closed form max "
       << fmt("%.2f", worst_z) << " SE over 10 configs (tol 5)";
    return {fft_err <= 1e-12 && worst_z < 5.0, os.str()};
}

// ---------------------------------------------------------------------------
// Criterion 7: auto spectrum of a single qubit.

struct AutoDemo {
    double t0_over_dt = 16000.0;
    std::size_t n_pairs = 1u << 20;
    std::size_t batches = 4;
    int bins = 10;
    double f_lo_t0 = 16.0;  // lower band edge in units of 1/t0
};

Outcome criterion7() {
    const AutoDemo d;
    PipelineConfig cfg;
    cfg.seed = 7007;
    cfg.batches = d.batches;
    cfg.sequence.delta_t = 250e-6;
    cfg.sequence.n_pairs = d.n_pairs;
    const double dt = cfg.sequence.delta_t;
    const double t0 = d.t0_over_dt * dt;
    const double sigma2 = 1e12;
    cfg.spec = lorentzian_spec(sigma2, t0);
    const double var = band_variance(cfg.spec.s11, 2 * d.n_pairs, dt);
    const double t2 = std::sqrt(2.0 / var);
    const double tau = 3.0 * t2;
    cfg.sequence.qubit1 = {tau, kPi / (4.0 * tau), t2};
    cfg.sequence.qubit2 = {tau, 0.0, 0.0};
    cfg.analysis.cross = false;
    cfg.analysis.bins_per_decade = d.bins;

    std::vector<ShotRecord> shots;
    for (std::size_t b = 0; b < cfg.batches; ++b) shots.push_back(simulate_batch(cfg, synth_batch(cfg, b), b));
    const AnalysisResult res = analyze(shots, cfg.analysis);
    if (!res.auto_w[0]) return {false, "auto spectrum of qubit 1 unavailable"};
    const SpectrumEstimate& est = *res.auto_w[0];

    const auto fine = sscs::testing::interleaved_grid(d.n_pairs, dt);
    const SpectrumEstimate truth =
        sscs::testing::binned_truth(fine, [&](double f) { return cd(eval_psd(cfg.spec, 1, 1, f), 0.0); }, d.bins);
    const double f_lo = d.f_lo_t0 / t0;
    const double f_hi = 100.0 * f_lo;
    const double f_n = 1.0 / (4.0 * dt);
    double worst = 0.0, floor_ratio = 0.0;
    std::size_t n_bins = 0;
    const double floor = est.meta.noise_floor;
    for (std::size_t i = 0; i < est.size(); ++i) {
        if (est.frequencies[i] < f_lo || est.frequencies[i] > f_hi) continue;
        ++n_bins;
        worst = std::max(worst, std::abs(sscs::testing::db(est.values[i].real() / truth.values[i].real())));
        floor_ratio = std::max(floor_ratio, floor / truth.values[i].real());
    }
    std::ostringstream os;
    os << "t0 = " << fmt("%.3g", t0) << " s, band [" << fmt("%.3g", f_lo) << ", " << fmt("%.3g", f_hi)
       << "] Hz (f_N " << fmt("%.0f", f_n) << "), " << n_bins << " bins; max |dB error| " << fmt("%.2f", worst)
       << " (tol 3); lag-0 floor " << fmt("%.3g", floor) << ", max floor/signal " << fmt("%.3f", floor_ratio);
    const bool ok = n_bins > 0 && f_hi <= f_n && worst <= 3.0 && floor_ratio < 1.0 && std::isfinite(floor);
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// Criterion 8: synthesis round trip through a Welch periodogram.

Outcome criterion8() {
    const double dt = 1e-3;
    const std::size_t n = 1u << 20;
    // The lowest log bins hold a single Welch frequency, so its scatter is set
    // by the segment count alone; 64 keeps it well inside the tolerance.
    const std::size_t segments = 64;
    const int bins = 10;
    struct Case {
        const char* name;
        PsdSpec spec;
    };
    std::vector<Case> cases;
    {
        PsdSpec s;
        s.s11 = {1e6, 0.0, 1.0};
        s.s22 = {4e6, 0.0, 1.0};
        s.c12 = {-1.5e6, 0.0, 1.0};
        cases.push_back({"1/f", s});
    }
    {
        PsdSpec s;
        s.s11 = {0.0, 1e5, 0.01};
        s.s22 = {0.0, 3e5, 0.01};
        s.c12 = {0.0, 1e5, 0.01};
        cases.push_back({"lorentzian", s});
    }
    cases.push_back({"mixture", default_simulation_spec().spec});

    std::ostringstream os, bad;
    bool ok = true;
    std::uint64_t seed = 8008;
    for (const auto& c : cases) {
        const NoiseTracePair tr = synthesize(c.spec, n, dt, seed++);
        const std::size_t L = n / segments;
        double worst = 0.0;
        for (int e = 0; e < 3; ++e) {
            const int a = e == 1 ? 2 : 1;
            const int bq = e == 0 ? 1 : 2;
            const auto& x = a == 1 ? tr.delta_omega_1 : tr.delta_omega_2;
            const auto& y = bq == 1 ? tr.delta_omega_1 : tr.delta_omega_2;
            const SpectrumEstimate p = periodogram_cross(x, y, dt, segments);
            // The lowest two Welch bins carry the window's DC leakage.
            SpectrumEstimate cut;
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (p.frequencies[i] < 3.0 / (static_cast<double>(L) * dt)) continue;
                cut.frequencies.push_back(p.frequencies[i]);
                cut.values.push_back(p.values[i]);
            }
            const SpectrumEstimate est = log_bin(cut, bins);
            const SpectrumEstimate truth = sscs::testing::binned_truth(
                cut.frequencies, [&](double f) { return cd(eval_psd(c.spec, a, bq, f), 0.0); }, bins);
            const PsdComponentParams& comp = a == bq ? (a == 1 ? c.spec.s11 : c.spec.s22) : c.spec.c12;
            const double half_width = std::pow(10.0, 1.5 / bins);
            for (std::size_t i = 0; i < est.size(); ++i) {
                const double ratio = est.values[i].real() / truth.values[i].real();
                const double err = ratio > 0.0 ? std::abs(sscs::testing::db(ratio)) : std::numeric_limits<double>::infinity();
                worst = std::max(worst, err);
                if (!(err <= 3.0)) {
                    // Reported separately: near a zero crossing the reference is close to zero.
                    const bool near_zero = a != bq && find_sign_flip(comp, est.frequencies[i] / half_width,
                                                                     est.frequencies[i] * half_width);
                    bad << (bad.tellp() > 0 ? ", " : "") << (a == bq ? "S" : "C") << a << bq << " "
                        << fmt("%.3g", est.frequencies[i]) << " Hz " << fmt("%.2f", err) << " dB"
                        << (near_zero ? " (zero crossing)" : "");
                }
            }
        }
        os << c.name << " max |dB| " << fmt("%.2f", worst) << "; ";
        ok = ok && worst <= 3.0;
    }
    os << "(tol 3, " << segments << " Hann segments)";
    if (bad.tellp() > 0) os << "; over tolerance: " << bad.str();
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// Injected 50 Hz tone.

Outcome tone_demo() {
    PipelineConfig cfg = pipeline_config_from_json(io::read_text(std::string(SSCS_CONFIG_DIR) + "/tone_demo.json"));
    std::vector<ShotRecord> shots;
    for (std::size_t b = 0; b < cfg.batches; ++b) shots.push_back(simulate_batch(cfg, synth_batch(cfg, b), b));
    const AnalysisResult res = analyze(shots, cfg.analysis);
    const int b = cfg.analysis.bins_per_decade;
    const double target = std::floor(std::log10(cfg.tone.freq_hz) * b + 1e-9);

    auto contrast = [&](const SpectrumEstimate& s) {
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (std::floor(std::log10(s.frequencies[i]) * b + 1e-9) != target) continue;
            const double nb = std::max(std::abs(s.values[i - 1]), std::abs(s.values[i + 1]));
            return sscs::testing::db(std::abs(s.values[i]) / nb);
        }
        return -std::numeric_limits<double>::infinity();
    };
    const double c_cross = contrast(res.cross);
    const double c_a1 = res.auto_w[0] ? contrast(*res.auto_w[0]) : -std::numeric_limits<double>::infinity();
    const double c_a2 = res.auto_w[1] ? contrast(*res.auto_w[1]) : -std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "peak over neighbouring bins: cross " << fmt("%.1f", c_cross) << " dB, auto q1 " << fmt("%.1f", c_a1)
       << " dB, auto q2 " << fmt("%.1f", c_a2) << " dB (tol 10)";
    return {c_cross >= 10.0 && c_a1 >= 10.0 && c_a2 >= 10.0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
        {"c1", criterion1}, {"c2", criterion2}, {"c3", criterion3}, {"c4", criterion4}, {"c5", criterion5},
        {"c6", criterion6}, {"c7", criterion7}, {"c8", criterion8}, {"tone", tone_demo}};
    std::set<std::string> wanted(argv + 1, argv + argc);
    int failures = 0;
    for (const auto& [name, fn] : all) {
        if (!wanted.empty() && !wanted.count(name)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %-4s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
