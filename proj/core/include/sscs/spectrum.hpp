#pragma once

#include <cstddef>
#include <vector>

#include "sscs/log_combination.hpp"
#include "sscs/spectra_model.hpp"

namespace sscs {

struct SpectrumParts {
    SpectrumEstimate even;      // from U1 on the grid 2n dt
    SpectrumEstimate odd;       // from U2 on the grid (2n + 1) dt
    SpectrumEstimate averaged;  // (even + odd) / 2
    FillStats fill_u1;
    FillStats fill_u2;
};

// Prefactor multiplying the Fourier transform of U (or W).
double spectrum_prefactor(PrefactorMode mode, double f, double tau_a, double tau_b);

// Fourier transforms of U1 and U2 on f_k = k / (4 N dt), k = -N..N-1 without
// k = 0, each with its own timestamp phase, then averaged. Flagged lags are
// filled first (the inputs are copied).
// max_gap and tail_ramp are passed to fill_flagged.
SpectrumParts spectrum_from_U(const LogCombination& u1, const LogCombination& u2,
                              PrefactorMode mode = PrefactorMode::quasi_static, std::size_t max_gap = 0,
                              double tail_ramp = 0.0);

// Single even-grid transform of W with the tau_a^2 prefactor. The lag-0
// uncertainty is reported as a flat floor 2 dt * err / (4 pi^2 tau^2).
SpectrumEstimate spectrum_from_W(const LogCombination& w, PrefactorMode mode = PrefactorMode::quasi_static,
                                 std::size_t max_gap = 0, double tail_ramp = 0.0);

// Keeps f > 0 only.
SpectrumEstimate positive_frequencies(const SpectrumEstimate& s);

// Arithmetic mean of complex values in decade-aligned bins [10^(j/b), 10^((j+1)/b)),
// reported at the geometric centre 10^((j + 1/2)/b). Requires f > 0.
SpectrumEstimate log_bin(const SpectrumEstimate& s, int bins_per_decade);

// Pointwise complex mean with standard error sd / sqrt(batches). Grids must
// match exactly. For a single batch the standard errors are NaN.
SpectrumEstimate average_batches(const std::vector<SpectrumEstimate>& specs);

}  // namespace sscs
