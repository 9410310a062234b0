#pragma once

#include <cmath>

namespace sscs {

template <class F>
CorrelatorSet analytic_correlator_set(const AnalyticSetup& s, F&& corr_fn, std::size_t n_lags, double dt) {
    CorrelatorSet out;
    out.dt = dt;
    out.n = n_lags;
    out.max_lag = n_lags - 1;
    out.tau_a = s.tau_a;
    out.omega_a = s.omega_a;
    out.omega_b = s.omega_b;
    out.tau_b = s.tau_b;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Label li = static_cast<Label>(i);
            const Label lj = static_cast<Label>(j);
            CorrelatorChannel& ch = out.channel(li, lj);
            ch.first = li;
            ch.second = lj;
            ch.t.resize(n_lags);
            ch.q.resize(n_lags);
            ch.count.assign(n_lags, 0.0);
            for (std::size_t k = 0; k < n_lags; ++k) {
                const double t = static_cast<double>(2 * static_cast<long long>(k) + delta_of(li) - delta_of(lj)) * dt;
                AnalyticParams p;
                p.B_a = s.B_a;
                p.B_b = s.B_b;
                p.phi_a = s.omega_a * s.tau_a + theta_of(li);
                p.phi_b = s.omega_b * s.tau_b + theta_of(lj);
                p.tau_a = s.tau_a;
                p.tau_b = s.tau_b;
                p.var_a = s.var_a;
                p.var_b = s.var_b;
                p.cross = corr_fn(t);
                ch.t[k] = t;
                ch.q[k] = analytic_correlator(p);
            }
        }
    }
    return out;
}

}  // namespace sscs
