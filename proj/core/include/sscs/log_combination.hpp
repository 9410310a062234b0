#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sscs/correlators.hpp"

namespace sscs {

enum class LogKind { U1, U2, W };

// Samples of a log-combination on one side of the time axis. Imaginary parts
// are exactly 0 or pi.
struct LogSeries {
    std::vector<double> t;
    std::vector<std::complex<double>> v;
    std::vector<std::uint8_t> flagged;

    std::size_t size() const { return t.size(); }
    std::size_t n_flagged() const;
};

struct LogCombination {
    LogKind kind = LogKind::U1;
    int alpha = 1;
    int beta = 2;
    double dt = 0.0;
    std::size_t n = 0;  // shots per subsequence
    double tau_a = 0.0;
    double tau_b = 0.0;
    // forward: t >= 0 from the (alpha, beta) set (U2 starts at +dt).
    // backward: t <= 0 from the (beta, alpha) set via the negative-time
    // identities (U2 starts at -dt and carries the extra i pi).
    LogSeries forward;
    LogSeries backward;
    // Value approached once the noise decorrelates. For U1 and U2 this is
    // ln|cos(pa - pb) / cos(pa + pb)| and ln|sin(pa - pb) / sin(pa + pb)| with
    // p = omega tau; NaN when unknown (always for W).
    double constant = std::numeric_limits<double>::quiet_NaN();
    double lag0_stderr = 0.0;  // W only: uncertainty of the extrapolated lag-0 value
    std::vector<std::string> warnings;
};

// ln|r| + i pi [r < 0].
std::complex<double> branch_log(double r);
// Adds i pi and wraps the imaginary part back into {0, pi}.
std::complex<double> add_i_pi(std::complex<double> u);

// One direction of U1 (a = 1) or U2 (a = 2). A lag is flagged when the ratio
// is zero or non-finite, or when |ratio| < ratio_floor * jackknife SE.
LogSeries compute_U(const CorrelatorSet& corr, int a, double ratio_floor = 10.0);
LogCombination compute_U(const CorrelatorPair& corr, int a, double ratio_floor = 10.0);
// Real part of U_a in the limit of uncorrelated noise; NaN when degenerate.
double u_asymptote(const CorrelatorSet& corr, int a);

struct Lag0Fit {
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t used = 0;
};
// Least-squares quadratic in t over the first fit_lags valid samples with
// t > 0, evaluated at t = 0. Throws when fewer than three samples are valid.
Lag0Fit extrapolate_lag0(const std::vector<double>& t, const std::vector<double>& y, std::size_t fit_lags,
                         const std::vector<std::uint8_t>* flagged = nullptr);
Lag0Fit extrapolate_lag0(const CorrelatorChannel& ch, std::size_t fit_lags);
Lag0Fit extrapolate_lag0(const LogSeries& s, std::size_t fit_lags);

// W = log(QXX,XX + QXY,XY) for a same-qubit set, with the lag-0 correlators
// replaced by their extrapolation from fit_lags positive lags. The result is
// even in t.
LogCombination compute_W(const CorrelatorSet& same_qubit, std::size_t fit_lags = 8, double ratio_floor = 10.0);

// Flagged lags replaced before the Fourier transform: interior gaps are
// linearly interpolated, the run after the last valid lag of each side takes
// one common value (the combination's constant when known, otherwise the
// mean over both sides of the last eight valid values),
// leading gaps hold the first valid value, and filled samples take the
// majority branch. With max_gap > 0 a side ends at its first run of max_gap
// consecutive flagged lags; later lags count as trailing. With tail_ramp > 0
// the trailing run moves linearly from that side's last valid level to the
// common value over tail_ramp times the side's valid extent.
struct FillStats {
    std::size_t interior_flagged = 0;
    std::size_t extent = 0;  // lags up to and including the last valid one, summed over sides
    std::size_t trailing = 0;
    std::complex<double> tail{0.0, 0.0};  // value used past the last valid lag
    double fraction() const { return extent ? static_cast<double>(interior_flagged) / static_cast<double>(extent) : 0.0; }
};
FillStats fill_flagged(LogCombination& u, std::size_t max_gap = 0, double tail_ramp = 0.0);

}  // namespace sscs
