#include "sscs/alias_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sscs {

namespace {
constexpr double kPi = std::numbers::pi;
}

Parity parity_from_string(const std::string& s) {
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    if (s == "averaged" || s == "average") return Parity::averaged;
    throw std::invalid_argument("unknown parity: " + s);
}

FoldResult fold_spectrum(const SpectrumFn& X, double f, const FoldingConfig& cfg) {
    if (!(cfg.f_s > 0.0) || cfg.n_terms < 1) throw std::invalid_argument("fold_spectrum: bad folding config");
    std::complex<double> acc = X(f);
    double last = 0.0;
    // Summing from the far tail inwards keeps small terms from being lost.
    for (int k = cfg.n_terms; k >= 1; --k) {
        if (cfg.parity == Parity::averaged && (k % 2) != 0) continue;
        const double kf = static_cast<double>(k) * cfg.f_s;
        std::complex<double> term = X(kf + f) + std::conj(X(kf - f));
        if (cfg.parity == Parity::odd && (k % 2) != 0) term = -term;
        if (last == 0.0) last = std::abs(term);
        acc += term;
    }
    return {acc, last * static_cast<double>(cfg.n_terms)};
}

double fold_factor(double x) {
    const double s = std::sin(x);
    if (std::abs(s) < 1e-6 && std::abs(x) < 1e-3) {
        // x^2 / sin^2 x = 1 + x^2/3 + x^4/15 + ...
        const double x2 = x * x;
        return 1.0 + x2 / 3.0 + x2 * x2 / 15.0;
    }
    return x * x / (s * s);
}

ClosedForms exp_kernel_closed_forms(double t0, double dt, double f) {
    if (!(t0 > 0.0) || !(dt > 0.0)) throw std::invalid_argument("exp_kernel_closed_forms: t0 and dt must be positive");
    ClosedForms c;
    const double w = 2.0 * kPi * f * t0;
    c.X = 2.0 * t0 / (1.0 + w * w);
    const double a = 2.0 * kPi * f * dt;
    const double b = kPi * f * dt;
    c.Y_e = c.X * fold_factor(a);
    c.Y_o = c.X * fold_factor(a) * std::cos(a);
    c.Y_bar = c.X * fold_factor(b);
    return c;
}

NyquistReport nyquist_bound_check(const SpectrumFn& X, double f_s, int n_terms, double tol) {
    NyquistReport r;
    const double fN = 0.5 * f_s;
    r.X_fN = X(fN).real();
    r.Y_e = fold_spectrum(X, fN, {f_s, n_terms, Parity::even}).value.real();
    r.Y_o = fold_spectrum(X, fN, {f_s, n_terms, Parity::odd}).value.real();
    r.Y_bar = fold_spectrum(X, fN, {f_s, n_terms, Parity::averaged}).value.real();
    r.degenerate = r.X_fN == 0.0;
    const double scale = std::max({std::abs(r.Y_e), std::abs(r.Y_bar), std::abs(r.X_fN)});
    r.odd_zero = std::abs(r.Y_o) <= tol * (scale > 0.0 ? scale : 1.0);
    if (!r.degenerate) {
        r.ratio_e = r.Y_e / r.X_fN;
        r.ratio_bar = r.Y_bar / r.X_fN;
    }
    const double slack = tol * scale;
    r.even_bound = r.Y_e >= 2.0 * r.X_fN - slack;
    r.averaged_bound = r.Y_bar >= r.X_fN - slack;
    std::ostringstream os;
    if (r.degenerate) {
        os << "X(f_N) = 0: bounds hold with equality by definition (Y_e = " << r.Y_e << ")";
    } else {
        os << "Y_e/X = " << r.ratio_e << ", Y_o = " << r.Y_o << ", Y_bar/X = " << r.ratio_bar;
    }
    r.summary = os.str();
    return r;
}

}  // namespace sscs
