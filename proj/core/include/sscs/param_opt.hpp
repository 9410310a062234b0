#pragma once

#include <string>

namespace sscs {

// e^{-(xa + xb)/2} (sinh u - u) / u with u = sqrt(xa xb); the visibility
// bracket averaged over the correlation coefficient. Series form for small u.
double g_averaged(double x_alpha, double x_beta);

struct EvolutionTimes {
    double tau_a = 0.0;
    double tau_b = 0.0;
    double x_star = 0.0;      // optimum of x = <delta omega^2> tau^2
    double ratio = 0.0;       // tau / T2* = sqrt(x_star / 2)
    double g_max = 0.0;
    int iterations = 0;
};

// Coordinate-wise golden-section maximisation of g_averaged on [0, 20]^2.
EvolutionTimes optimize_evolution_times(double t2star_a, double t2star_b);

// Brute-force maximum of g_averaged on the diagonal grid x = k * step.
double grid_search_x_star(double step = 1e-3, double x_max = 20.0);

enum class FrequencyMode { cross, auto_short, auto_long, joint };
FrequencyMode frequency_mode_from_string(const std::string& s);
std::string to_string(FrequencyMode m);

struct FrequencySuggestion {
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    int m = 0;
    int l = 0;
    bool feasible = true;
    double min_abs_factor = 0.0;  // smallest of the checked trigonometric factors
    std::string report;
};

// cross: omega_1 = (m + l + 1) pi / 4 tau_1, omega_2 = (m - l) pi / 4 tau_2.
// auto_short: omega = m pi / 2 tau.  auto_long: omega = (2m + 1) pi / 4 tau.
// joint: first phase pair (m pi/12, l pi/12), |m|, |l| <= 8, for which the
// cross factors cos/sin(phi_1 -+ phi_2) and the auto factors cos(2 phi_a)
// all exceed `threshold` in magnitude; infeasibility is reported, not thrown.
FrequencySuggestion suggest_frequencies(FrequencyMode mode, double tau_1, double tau_2, int m = 0, int l = 0,
                                        double threshold = 0.2);

// Smallest |factor| among the four cross-correlator trigonometric factors
// cos(phi_1 - phi_2), cos(phi_1 + phi_2), sin(phi_1 - phi_2), sin(phi_1 + phi_2)
// with phi_a = omega_a tau_a.
double cross_factor_margin(double omega_1, double tau_1, double omega_2, double tau_2);

}  // namespace sscs
