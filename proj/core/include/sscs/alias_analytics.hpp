#pragma once

#include <complex>
#include <functional>
#include <string>

namespace sscs {

enum class Parity { even, odd, averaged };
Parity parity_from_string(const std::string& s);

struct FoldingConfig {
    double f_s = 0.0;       // sampling rate 1 / (2 dt) of each interleaved grid
    int n_terms = 10000;    // truncation K
    Parity parity = Parity::even;
};

using SpectrumFn = std::function<std::complex<double>(double f)>;

struct FoldResult {
    std::complex<double> value;
    double tail_bound = 0.0;  // K * |last term|, a 1/k^2 tail estimate
};

// even:     X(f) + sum_k [X(k fs + f) + conj X(k fs - f)]
// odd:      the same with (-1)^k on each image pair
// averaged: only even k survive, i.e. even folding at 2 fs
FoldResult fold_spectrum(const SpectrumFn& X, double f, const FoldingConfig& cfg);

struct ClosedForms {
    double X = 0.0;
    double Y_e = 0.0;
    double Y_o = 0.0;
    double Y_bar = 0.0;
};

// Exponential kernel e^{-|t|/t0}: X = 2 t0 / (1 + 4 pi^2 f^2 t0^2) and the
// folded forms X a^2 / sin^2 a, X a^2 cos a / sin^2 a, X b^2 / sin^2 b with
// a = 2 pi f dt, b = pi f dt. Removable singularities use series limits.
ClosedForms exp_kernel_closed_forms(double t0, double dt, double f);

// X(f) * x^2 / sin^2 x, continuous through the zeros of sin x.
double fold_factor(double x);

struct NyquistReport {
    double X_fN = 0.0;
    double Y_e = 0.0;
    double Y_o = 0.0;
    double Y_bar = 0.0;
    double ratio_e = 0.0;    // Y_e / X at f_N
    double ratio_bar = 0.0;  // Y_bar / X at f_N
    bool even_bound = false;     // Y_e >= 2 X
    bool odd_zero = false;       // |Y_o| <= tol * |Y_e|
    bool averaged_bound = false; // Y_bar >= X
    bool degenerate = false;     // X(f_N) == 0
    std::string summary;
};

// Checks the Nyquist-point relations for a real, even kernel given through
// its spectrum X via truncated folding sums.
NyquistReport nyquist_bound_check(const SpectrumFn& X, double f_s, int n_terms = 10000, double tol = 1e-6);

}  // namespace sscs
