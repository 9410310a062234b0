#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sscs/ramsey_sim.hpp"

namespace sscs {

enum class CorrelatorMethod { fft, direct };

// Q^{if,jh}_{alpha,beta}(t_k) for one (if, jh) channel, k = 0..max_lag.
struct CorrelatorChannel {
    Label first = Label::XX;   // if, label of the earlier shot
    Label second = Label::XX;  // jh, label of the later shot
    std::vector<double> t;      // (2k + delta_if - delta_jh) dt
    std::vector<double> q;
    std::vector<double> count;  // N - k
};

// Jackknife standard errors of the quantities whose logarithms form U1, U2
// and W. Empty when no jackknife was requested.
struct RatioUncertainty {
    std::size_t blocks = 0;
    std::vector<double> u1;  // (QXX,XX + QXY,XY) / (QXX,XX - QXY,XY), lags 0..max_lag
    std::vector<double> u2;  // re-indexed odd-lag ratio, lags 0..max_lag-1
    std::vector<double> w;   // QXX,XX + QXY,XY, lags 0..max_lag
};

struct CorrelatorSet {
    int alpha = 1;
    int beta = 2;
    double dt = 0.0;
    std::size_t n = 0;
    std::size_t max_lag = 0;
    double tau_a = 0.0;
    double tau_b = 0.0;
    double t2star_a = 0.0;
    double t2star_b = 0.0;
    double omega_a = 0.0;  // detunings, rad/s
    double omega_b = 0.0;
    std::array<CorrelatorChannel, 4> channels;  // index 2 * if + jh
    std::array<double, 2> means_a{};            // <P^XX_alpha>, <P^XY_alpha>
    std::array<double, 2> means_b{};            // <P^XX_beta>, <P^XY_beta>
    RatioUncertainty se;

    CorrelatorChannel& channel(Label i, Label j) { return channels[index(i, j)]; }
    const CorrelatorChannel& channel(Label i, Label j) const { return channels[index(i, j)]; }
    static std::size_t index(Label i, Label j) { return static_cast<std::size_t>(2 * static_cast<int>(i) + static_cast<int>(j)); }
};

// The (alpha, beta) set and the (beta, alpha) set obtained from the same
// cross-correlations (positive and negative lags respectively).
struct CorrelatorPair {
    CorrelatorSet forward;
    CorrelatorSet backward;
};

struct CorrelatorOptions {
    std::optional<std::size_t> max_lag;  // default N - 1
    CorrelatorMethod method = CorrelatorMethod::fft;
    std::size_t jackknife_blocks = 16;   // 0 disables the jackknife
};

// Four means <P^{if}_alpha>: q1 XX, q1 XY, q2 XX, q2 XY.
std::array<double, 4> estimate_means(const ShotRecord& shots);
double stream_mean(const std::vector<std::int8_t>& s);

// Raw lag sums: forward[k] = sum_n a_n b_{n+k}, backward[k] = sum_n a_n b_{n-k}.
struct LagSums {
    std::vector<double> forward;
    std::vector<double> backward;
};
// For +-1 inputs the FFT result is rounded to the nearest integer, which makes
// both methods agree exactly.
LagSums cross_lag_sums(const std::vector<double>& a, const std::vector<double>& b, std::size_t max_lag,
                       CorrelatorMethod method, bool integer_valued = true);

CorrelatorPair estimate_correlators(const std::vector<std::int8_t>& a_xx, const std::vector<std::int8_t>& a_xy,
                                    const std::vector<std::int8_t>& b_xx, const std::vector<std::int8_t>& b_xy,
                                    double dt, const CorrelatorOptions& opt = {});

// Correlators between qubit alpha and beta of a shot record (alpha == beta
// gives the same-qubit set used by the auto-PSD path).
CorrelatorPair estimate_correlators(const ShotRecord& shots, int alpha, int beta, const CorrelatorOptions& opt = {});

// Parameters of the closed-form correlator.
struct AnalyticParams {
    double B_a = 1.0;
    double B_b = 1.0;
    double phi_a = 0.0;  // omega_a tau_a + theta_if
    double phi_b = 0.0;
    double tau_a = 0.0;
    double tau_b = 0.0;
    double var_a = 0.0;  // <delta omega_a^2>, rad^2/s^2
    double var_b = 0.0;
    double cross = 0.0;  // <delta omega_a(t') delta omega_b(t' + t)>
};

// Closed-form Q for Gaussian quasi-static noise. Throws when |cross| exceeds
// sqrt(var_a var_b).
double analytic_correlator(const AnalyticParams& p);

// Builds a CorrelatorSet from the closed form for a correlation function
// R(t) = <delta omega_alpha(t') delta omega_beta(t' + t)> sampled on the
// native lag grid of every channel.
struct AnalyticSetup {
    double B_a = 1.0;
    double B_b = 1.0;
    double omega_a = 0.0;
    double omega_b = 0.0;
    double tau_a = 0.0;
    double tau_b = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
};
template <class F>
CorrelatorSet analytic_correlator_set(const AnalyticSetup& s, F&& corr_fn, std::size_t n_lags, double dt);

}  // namespace sscs

#include "sscs/detail/analytic_set.hpp"
