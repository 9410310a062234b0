#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sscs {

// One entry of the 2x2 spectral model: C(f) = I/f + J/(1 + 4 pi^2 f^2 t_c^2).
// Units: I in Hz^2, J in Hz^2/Hz, t_c in seconds.
struct PsdComponentParams {
    double I = 0.0;
    double J = 0.0;
    double t_c = 1.0;
};

// Symmetric 2x2 spectral matrix. c12 also serves as (2,1) since the family is real.
struct PsdSpec {
    PsdComponentParams s11;
    PsdComponentParams s22;
    PsdComponentParams c12;

    const PsdComponentParams& entry(int alpha, int beta) const;
};

// Throws std::invalid_argument when a component violates t_c > 0 or a
// diagonal entry has negative amplitudes.
void check_component_invariants(const PsdSpec& spec);

// C_{alpha,beta}(f) for the model family, even in f. Throws std::domain_error at f = 0.
double eval_psd(const PsdSpec& spec, int alpha, int beta, double f);
double eval_component(const PsdComponentParams& p, double f);

struct ValidityReport {
    bool valid = true;
    std::optional<double> first_violation_hz;
    double worst_ratio = 0.0;  // max |C12|^2 / (S1 S2) over the grid
    std::size_t n_checked = 0;
};

// Cauchy-Schwarz |C12|^2 <= S1 S2 on a log-spaced grid over [f_min, f_max].
ValidityReport validate_spec(const PsdSpec& spec, double f_min, double f_max, std::size_t n_samples = 512);

// Sign flip of the cross entry: first root of I/f + J/(1+4pi^2 f^2 t_c^2) in
// (f_lo, f_hi) found by scanning a log grid and bisecting the bracket.
std::optional<double> find_sign_flip(const PsdComponentParams& cross, double f_lo, double f_hi);

// t_c placing the cross sign flip at f_star for fixed I > 0 and J < 0.
// Requires I/f_star < |J|; otherwise no t_c exists and nullopt is returned.
std::optional<double> solve_tc_for_flip(double I, double J, double f_star);

// Default two-qubit simulation spectrum. The literal amplitudes
// (I = 1e11 Hz^2, |J| = 1e6 Hz^2/Hz) admit no t_c with a flip near 10 Hz, so
// J is rescaled to put the first flip at f_star and the second one at
// second_root_factor * f_star (see README).
struct DefaultSpecChoice {
    PsdSpec spec;
    double f_star = 10.0;
    double second_root_hz = 0.0;
    bool literal_amplitudes_feasible = false;
};
DefaultSpecChoice default_simulation_spec(double I = 1e11, double f_star = 10.0, double second_root_factor = 20.0);

// Pure Lorentzian with variance sigma2 (rad^2/s^2) and correlation time t0 on qubit 1 only.
PsdSpec lorentzian_spec(double sigma2, double t0);

enum class SpectrumKind { auto_psd, cross_psd };
enum class PrefactorMode { quasi_static, generalized };

std::string to_string(SpectrumKind k);
std::string to_string(PrefactorMode m);
PrefactorMode prefactor_mode_from_string(const std::string& s);

struct SpectrumMetadata {
    double dt = 0.0;
    std::size_t n = 0;
    double tau_a = 0.0;
    double tau_b = 0.0;
    PrefactorMode prefactor = PrefactorMode::quasi_static;
    std::size_t batches = 1;
    std::size_t flagged_lags = 0;
    std::size_t total_lags = 0;
    double flagged_fraction = 0.0;
    double noise_floor = 0.0;  // lag-0 floor for W-based spectra
    double hermitian_defect = 0.0;
};

struct SpectrumBinning {
    int bins_per_decade = 0;
    std::vector<std::size_t> counts;
};

struct SpectrumEstimate {
    std::vector<double> frequencies;
    std::vector<std::complex<double>> values;
    std::vector<double> stderr_;  // empty unless averaged over batches
    SpectrumKind kind = SpectrumKind::cross_psd;
    std::optional<SpectrumBinning> binning;
    SpectrumMetadata meta;

    std::size_t size() const { return frequencies.size(); }
    std::vector<double> magnitude() const;
    std::vector<double> phase() const;
};

}  // namespace sscs
