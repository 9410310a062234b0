#include "sscs/param_opt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sscs {

namespace {
constexpr double kPi = std::numbers::pi;

double golden_max(double lo, double hi, double tol, auto&& fn) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = fn(c), fd = fn(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = fn(d);
        }
    }
    return 0.5 * (a + b);
}
}  // namespace

double g_averaged(double x_alpha, double x_beta) {
    if (x_alpha < 0.0 || x_beta < 0.0) throw std::invalid_argument("g_averaged: negative argument");
    const double u = std::sqrt(x_alpha * x_beta);
    const double env = std::exp(-0.5 * (x_alpha + x_beta));
    if (env == 0.0) return 0.0;
    double bracket;
    if (u < 1e-2) {
        // (sinh u - u)/u = u^2/3! + u^4/5! + u^6/7! + ...
        const double u2 = u * u;
        bracket = u2 / 6.0 * (1.0 + u2 / 20.0 * (1.0 + u2 / 42.0 * (1.0 + u2 / 72.0)));
    } else {
        bracket = (std::sinh(u) - u) / u;
    }
    return env * bracket;
}

EvolutionTimes optimize_evolution_times(double t2star_a, double t2star_b) {
    if (!(t2star_a > 0.0) || !(t2star_b > 0.0)) {
        throw std::invalid_argument("optimize_evolution_times: T2* must be positive");
    }
    double xa = 1.0, xb = 1.0;
    int it = 0;
    for (; it < 200; ++it) {
        const double na = golden_max(0.0, 20.0, 1e-12, [&](double x) { return g_averaged(x, xb); });
        const double nb = golden_max(0.0, 20.0, 1e-12, [&](double x) { return g_averaged(na, x); });
        const double change = std::abs(na - xa) + std::abs(nb - xb);
        xa = na;
        xb = nb;
        if (change < 1e-11) break;
    }
    EvolutionTimes out;
    out.x_star = 0.5 * (xa + xb);
    out.ratio = std::sqrt(out.x_star / 2.0);
    // T2* = sqrt(2 / var) so tau = sqrt(x / var) = sqrt(x / 2) T2*.
    out.tau_a = std::sqrt(xa / 2.0) * t2star_a;
    out.tau_b = std::sqrt(xb / 2.0) * t2star_b;
    out.g_max = g_averaged(xa, xb);
    out.iterations = it + 1;
    return out;
}

double grid_search_x_star(double step, double x_max) {
    double best_x = 0.0, best_g = -1.0;
    const auto n = static_cast<long long>(std::llround(x_max / step));
    for (long long i = 0; i <= n; ++i) {
        for (long long j = std::max(0LL, i - 2); j <= std::min(n, i + 2); ++j) {
            const double x = static_cast<double>(i) * step;
            const double y = static_cast<double>(j) * step;
            const double g = g_averaged(x, y);
            if (g > best_g) {
                best_g = g;
                best_x = 0.5 * (x + y);
            }
        }
    }
    return best_x;
}

FrequencyMode frequency_mode_from_string(const std::string& s) {
    if (s == "cross") return FrequencyMode::cross;
    if (s == "auto_short" || s == "auto-short") return FrequencyMode::auto_short;
    if (s == "auto_long" || s == "auto-long") return FrequencyMode::auto_long;
    if (s == "joint") return FrequencyMode::joint;
    throw std::invalid_argument("unknown frequency mode: " + s);
}

std::string to_string(FrequencyMode m) {
    switch (m) {
        case FrequencyMode::cross: return "cross";
        case FrequencyMode::auto_short: return "auto_short";
        case FrequencyMode::auto_long: return "auto_long";
        case FrequencyMode::joint: return "joint";
    }
    return "unknown";
}

double cross_factor_margin(double omega_1, double tau_1, double omega_2, double tau_2) {
    const double p1 = omega_1 * tau_1;
    const double p2 = omega_2 * tau_2;
    return std::min({std::abs(std::cos(p1 - p2)), std::abs(std::cos(p1 + p2)), std::abs(std::sin(p1 - p2)),
                     std::abs(std::sin(p1 + p2))});
}

FrequencySuggestion suggest_frequencies(FrequencyMode mode, double tau_1, double tau_2, int m, int l, double threshold) {
    if (!(tau_1 > 0.0) || !(tau_2 > 0.0)) throw std::invalid_argument("suggest_frequencies: tau must be positive");
    FrequencySuggestion s;
    s.m = m;
    s.l = l;
    switch (mode) {
        case FrequencyMode::cross:
            s.omega_1 = (m + l + 1) * kPi / (4.0 * tau_1);
            s.omega_2 = (m - l) * kPi / (4.0 * tau_2);
            s.min_abs_factor = cross_factor_margin(s.omega_1, tau_1, s.omega_2, tau_2);
            return s;
        case FrequencyMode::auto_short:
            s.omega_1 = m * kPi / (2.0 * tau_1);
            s.omega_2 = m * kPi / (2.0 * tau_2);
            s.min_abs_factor = std::abs(std::cos(2.0 * s.omega_1 * tau_1));
            return s;
        case FrequencyMode::auto_long:
            s.omega_1 = (2 * m + 1) * kPi / (4.0 * tau_1);
            s.omega_2 = (2 * m + 1) * kPi / (4.0 * tau_2);
            s.min_abs_factor = 1.0;
            return s;
        case FrequencyMode::joint:
            break;
    }

    // The cross lattice (m + l + 1, m - l) can never make both cos(2 phi_a)
    // non-zero, so the joint search runs on a finer phase lattice.
    std::vector<std::pair<int, int>> cand;
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b) cand.emplace_back(a, b);
    std::stable_sort(cand.begin(), cand.end(), [](auto x, auto y) {
        auto key = [](std::pair<int, int> p) {
            return std::make_tuple(std::abs(p.first) + std::abs(p.second), std::abs(p.first), std::abs(p.second),
                                   p.first < 0, p.second < 0);
        };
        return key(x) < key(y);
    });
    double best_margin = -1.0;
    for (const auto& [a, b] : cand) {
        const double p1 = a * kPi / 12.0;
        const double p2 = b * kPi / 12.0;
        const double margin = std::min({std::abs(std::cos(p1 - p2)), std::abs(std::cos(p1 + p2)),
                                        std::abs(std::sin(p1 - p2)), std::abs(std::sin(p1 + p2)),
                                        std::abs(std::cos(2.0 * p1)), std::abs(std::cos(2.0 * p2))});
        best_margin = std::max(best_margin, margin);
        if (margin > threshold) {
            s.m = a;
            s.l = b;
            s.omega_1 = p1 / tau_1;
            s.omega_2 = p2 / tau_2;
            s.min_abs_factor = margin;
            s.feasible = true;
            std::ostringstream os;
            os << "joint setting phi_1 = " << a << " pi/12, phi_2 = " << b << " pi/12, min |factor| = " << margin;
            s.report = os.str();
            return s;
        }
    }
    s.feasible = false;
    s.min_abs_factor = best_margin;
    std::ostringstream os;
    os << "joint mode infeasible: no phase pair with |m|, |l| <= 8 keeps every factor above " << threshold
       << " (best " << best_margin << ")";
    s.report = os.str();
    return s;
}

}  // namespace sscs
