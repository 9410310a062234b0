#include "sscs/spectra_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sscs {

namespace {
constexpr double kPi = std::numbers::pi;
}

const PsdComponentParams& PsdSpec::entry(int alpha, int beta) const {
    if (alpha < 1 || alpha > 2 || beta < 1 || beta > 2) {
        throw std::out_of_range("qubit index must be 1 or 2");
    }
    if (alpha == beta) return alpha == 1 ? s11 : s22;
    return c12;
}

void check_component_invariants(const PsdSpec& spec) {
    for (const auto* p : {&spec.s11, &spec.s22, &spec.c12}) {
        if (!(p->t_c > 0.0)) throw std::invalid_argument("PsdSpec: t_c must be positive");
    }
    for (const auto* p : {&spec.s11, &spec.s22}) {
        if (p->I < 0.0 || p->J < 0.0) {
            throw std::invalid_argument("PsdSpec: diagonal amplitudes must be non-negative");
        }
    }
}

double eval_component(const PsdComponentParams& p, double f) {
    if (f == 0.0) throw std::domain_error("eval_psd: f = 0 (1/f divergence)");
    const double af = std::abs(f);
    const double w = 2.0 * kPi * af * p.t_c;
    return p.I / af + p.J / (1.0 + w * w);
}

double eval_psd(const PsdSpec& spec, int alpha, int beta, double f) {
    return eval_component(spec.entry(alpha, beta), f);
}

ValidityReport validate_spec(const PsdSpec& spec, double f_min, double f_max, std::size_t n_samples) {
    if (!(f_min > 0.0) || !(f_max > f_min)) {
        throw std::invalid_argument("validate_spec: need 0 < f_min < f_max");
    }
    ValidityReport rep;
    n_samples = std::max<std::size_t>(n_samples, 2);
    const double l0 = std::log(f_min);
    const double l1 = std::log(f_max);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double f = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n_samples - 1));
        const double s1 = eval_psd(spec, 1, 1, f);
        const double s2 = eval_psd(spec, 2, 2, f);
        const double c = eval_psd(spec, 1, 2, f);
        const double lhs = c * c;
        const double rhs = s1 * s2;
        ++rep.n_checked;
        if (rhs > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
        // Relative slack covers the equality case (perfectly correlated spectra).
        const double slack = 1e-12 * std::max(lhs, rhs);
        if (lhs > rhs + slack) {
            if (rhs == 0.0) rep.worst_ratio = INFINITY;
            if (rep.valid) rep.first_violation_hz = f;
            rep.valid = false;
        }
    }
    return rep;
}

std::optional<double> find_sign_flip(const PsdComponentParams& cross, double f_lo, double f_hi) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo)) throw std::invalid_argument("find_sign_flip: bad band");
    const int n = 2000;
    const double l0 = std::log(f_lo);
    const double l1 = std::log(f_hi);
    double prev_f = f_lo;
    double prev_v = eval_component(cross, prev_f);
    for (int i = 1; i <= n; ++i) {
        const double f = std::exp(l0 + (l1 - l0) * i / n);
        const double v = eval_component(cross, f);
        if ((prev_v > 0.0) != (v > 0.0)) {
            double a = prev_f;
            double b = f;
            double va = prev_v;
            for (int it = 0; it < 200 && (b - a) > 1e-14 * b; ++it) {
                const double m = std::sqrt(a * b);
                const double vm = eval_component(cross, m);
                if ((vm > 0.0) == (va > 0.0)) {
                    a = m;
                    va = vm;
                } else {
                    b = m;
                }
            }
            return std::sqrt(a * b);
        }
        prev_f = f;
        prev_v = v;
    }
    return std::nullopt;
}

std::optional<double> solve_tc_for_flip(double I, double J, double f_star) {
    // I/f = |J|/(1 + w^2) with w = 2 pi f t_c  =>  w^2 = |J| f / I - 1.
    if (!(I > 0.0) || !(J < 0.0) || !(f_star > 0.0)) return std::nullopt;
    const double w2 = std::abs(J) * f_star / I - 1.0;
    if (!(w2 > 0.0)) return std::nullopt;
    return std::sqrt(w2) / (2.0 * kPi * f_star);
}

DefaultSpecChoice default_simulation_spec(double I, double f_star, double second_root_factor) {
    DefaultSpecChoice out;
    out.f_star = f_star;
    out.literal_amplitudes_feasible = solve_tc_for_flip(I, -1e6, f_star).has_value();
    // Roots of I/f = |J|/(1+(2 pi f t_c)^2) satisfy f1 f2 = 1/(4 pi^2 t_c^2).
    const double f2 = second_root_factor * f_star;
    const double tc = 1.0 / (2.0 * kPi * std::sqrt(f_star * f2));
    const double w = 2.0 * kPi * f_star * tc;
    const double J = I / f_star * (1.0 + w * w);
    out.spec.s11 = {I, J, tc};
    out.spec.s22 = {I, J, tc};
    out.spec.c12 = {I, -J, tc};
    out.second_root_hz = f2;
    return out;
}

PsdSpec lorentzian_spec(double sigma2, double t0) {
    // Variance = 4 pi^2 * integral of C over both signs of f = 2 pi^2 J / t0.
    PsdSpec s;
    s.s11 = {0.0, sigma2 * t0 / (2.0 * kPi * kPi), t0};
    s.s22 = {0.0, 0.0, t0};
    s.c12 = {0.0, 0.0, t0};
    return s;
}

std::string to_string(SpectrumKind k) {
    return k == SpectrumKind::auto_psd ? "auto" : "cross";
}

std::string to_string(PrefactorMode m) {
    return m == PrefactorMode::quasi_static ? "quasi_static" : "generalized";
}

PrefactorMode prefactor_mode_from_string(const std::string& s) {
    if (s == "quasi_static" || s == "quasi-static") return PrefactorMode::quasi_static;
    if (s == "generalized") return PrefactorMode::generalized;
    throw std::invalid_argument("unknown prefactor mode: " + s);
}

std::vector<double> SpectrumEstimate::magnitude() const {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](auto v) { return std::abs(v); });
    return out;
}

std::vector<double> SpectrumEstimate::phase() const {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](auto v) { return std::arg(v); });
    return out;
}

}  // namespace sscs
