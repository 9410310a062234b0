#include "sscs/log_combination.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sscs {

namespace {

constexpr double kPi = std::numbers::pi;

bool flag_ratio(double r, const std::vector<double>& se, std::size_t k, double floor) {
    if (!std::isfinite(r) || r == 0.0) return true;
    if (k < se.size() && std::abs(r) < floor * se[k]) return true;
    return false;
}

}  // namespace

std::size_t LogSeries::n_flagged() const {
    return static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), std::uint8_t{1}));
}

std::complex<double> branch_log(double r) {
    return {std::log(std::abs(r)), r < 0.0 ? kPi : 0.0};
}

std::complex<double> add_i_pi(std::complex<double> u) {
    return {u.real(), u.imag() == 0.0 ? kPi : 0.0};
}

LogSeries compute_U(const CorrelatorSet& corr, int a, double ratio_floor) {
    if (a != 1 && a != 2) throw std::invalid_argument("compute_U: a must be 1 or 2");
    const auto& xx = corr.channel(Label::XX, Label::XX);
    const auto& yy = corr.channel(Label::XY, Label::XY);
    const auto& yx = corr.channel(Label::XY, Label::XX);
    const auto& xy = corr.channel(Label::XX, Label::XY);
    const std::size_t L = xx.q.size();
    if (L == 0 || yy.q.size() != L || yx.q.size() != L || xy.q.size() != L) {
        throw std::invalid_argument("compute_U: channels missing or of unequal length");
    }
    LogSeries s;
    if (a == 1) {
        s.t = xx.t;
        s.v.resize(L);
        s.flagged.resize(L);
        for (std::size_t k = 0; k < L; ++k) {
            const double r = (xx.q[k] + yy.q[k]) / (xx.q[k] - yy.q[k]);
            s.flagged[k] = flag_ratio(r, corr.se.u1, k, ratio_floor);
            s.v[k] = s.flagged[k] ? std::complex<double>(0.0, 0.0) : branch_log(r);
        }
        return s;
    }
    // QXY,XX sits at (2k - 1) dt and QXX,XY at (2k + 1) dt; shifting the
    // former by one lag pairs both operands at (2k + 1) dt.
    const std::size_t M = L - 1;
    s.t.resize(M);
    s.v.resize(M);
    s.flagged.resize(M);
    for (std::size_t k = 0; k < M; ++k) {
        s.t[k] = xy.t[k];
        const double r = (yx.q[k + 1] - xy.q[k]) / (yx.q[k + 1] + xy.q[k]);
        s.flagged[k] = flag_ratio(r, corr.se.u2, k, ratio_floor);
        s.v[k] = s.flagged[k] ? std::complex<double>(0.0, 0.0) : branch_log(r);
    }
    return s;
}

double u_asymptote(const CorrelatorSet& corr, int a) {
    const double pa = corr.omega_a * corr.tau_a;
    const double pb = corr.omega_b * corr.tau_b;
    const double num = a == 1 ? std::cos(pa - pb) : std::sin(pa - pb);
    const double den = a == 1 ? std::cos(pa + pb) : std::sin(pa + pb);
    const double c = std::log(std::abs(num / den));
    return std::isfinite(c) ? c : std::numeric_limits<double>::quiet_NaN();
}

LogCombination compute_U(const CorrelatorPair& corr, int a, double ratio_floor) {
    LogCombination u;
    u.kind = a == 1 ? LogKind::U1 : LogKind::U2;
    u.alpha = corr.forward.alpha;
    u.beta = corr.forward.beta;
    u.dt = corr.forward.dt;
    u.n = corr.forward.n;
    u.tau_a = corr.forward.tau_a;
    u.tau_b = corr.forward.tau_b;
    u.constant = u_asymptote(corr.forward, a);
    u.forward = compute_U(corr.forward, a, ratio_floor);
    u.backward = compute_U(corr.backward, a, ratio_floor);
    for (auto& t : u.backward.t) t = -t;
    if (a == 2) {
        for (std::size_t k = 0; k < u.backward.size(); ++k) {
            if (!u.backward.flagged[k]) u.backward.v[k] = add_i_pi(u.backward.v[k]);
        }
    }
    return u;
}

Lag0Fit extrapolate_lag0(const std::vector<double>& t, const std::vector<double>& y, std::size_t fit_lags,
                         const std::vector<std::uint8_t>* flagged) {
    if (t.size() != y.size()) throw std::invalid_argument("extrapolate_lag0: length mismatch");
    std::vector<double> ts, ys;
    for (std::size_t k = 0; k < t.size() && ts.size() < fit_lags; ++k) {
        if (!(t[k] > 0.0)) continue;
        if (flagged && k < flagged->size() && (*flagged)[k]) continue;
        if (!std::isfinite(y[k])) continue;
        ts.push_back(t[k]);
        ys.push_back(y[k]);
    }
    if (ts.size() < 3) throw std::invalid_argument("extrapolate_lag0: fewer than 3 valid lags");
    const std::size_t m = ts.size();
    const double scale = ts.back();
    Eigen::MatrixXd X(static_cast<Eigen::Index>(m), 3);
    Eigen::VectorXd Y(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double s = ts[i] / scale;
        const auto r = static_cast<Eigen::Index>(i);
        X(r, 0) = 1.0;
        X(r, 1) = s;
        X(r, 2) = s * s;
        Y(r) = ys[i];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    const Eigen::VectorXd beta = qr.solve(Y);
    Lag0Fit fit;
    fit.value = beta(0);
    fit.used = m;
    if (m > 3) {
        const double rss = (X * beta - Y).squaredNorm();
        const double sigma2 = rss / static_cast<double>(m - 3);
        const Eigen::MatrixXd cov = (X.transpose() * X).inverse() * sigma2;
        fit.stderr_ = std::sqrt(std::max(0.0, cov(0, 0)));
    }
    return fit;
}

Lag0Fit extrapolate_lag0(const CorrelatorChannel& ch, std::size_t fit_lags) {
    return extrapolate_lag0(ch.t, ch.q, fit_lags);
}

Lag0Fit extrapolate_lag0(const LogSeries& s, std::size_t fit_lags) {
    std::vector<double> re(s.v.size());
    for (std::size_t k = 0; k < re.size(); ++k) re[k] = s.v[k].real();
    return extrapolate_lag0(s.t, re, fit_lags, &s.flagged);
}

LogCombination compute_W(const CorrelatorSet& corr, std::size_t fit_lags, double ratio_floor) {
    const auto& xx = corr.channel(Label::XX, Label::XX);
    const auto& yy = corr.channel(Label::XY, Label::XY);
    const std::size_t L = xx.q.size();
    if (L < 2 || yy.q.size() != L) throw std::invalid_argument("compute_W: channels missing");

    LogCombination w;
    w.kind = LogKind::W;
    w.alpha = corr.alpha;
    w.beta = corr.beta;
    w.dt = corr.dt;
    w.n = corr.n;
    w.tau_a = corr.tau_a;
    w.tau_b = corr.tau_b;
    if (corr.t2star_a > 0.0 && corr.tau_a < corr.t2star_a) {
        w.warnings.push_back("compute_W: tau < T2*, the long-evolution approximation behind W does not hold");
    }

    w.forward.t = xx.t;
    w.forward.v.resize(L);
    w.forward.flagged.resize(L);
    for (std::size_t k = 0; k < L; ++k) {
        const double s = xx.q[k] + yy.q[k];
        w.forward.flagged[k] = flag_ratio(s, corr.se.w, k, ratio_floor);
        w.forward.v[k] = w.forward.flagged[k] ? std::complex<double>(0.0, 0.0) : branch_log(s);
    }

    // The same-stream lag-0 estimate is 1 - <P>^2 by construction, so both
    // channels are extrapolated from positive lags instead.
    try {
        const Lag0Fit fx = extrapolate_lag0(xx, fit_lags);
        const Lag0Fit fy = extrapolate_lag0(yy, fit_lags);
        const double s0 = fx.value + fy.value;
        const double se0 = std::hypot(fx.stderr_, fy.stderr_);
        if (std::isfinite(s0) && s0 != 0.0) {
            w.forward.v[0] = branch_log(s0);
            w.forward.flagged[0] = 0;
            w.lag0_stderr = se0 / std::abs(s0);
        } else {
            w.forward.flagged[0] = 1;
        }
    } catch (const std::invalid_argument&) {
        w.forward.flagged[0] = 1;
        w.warnings.push_back("compute_W: lag-0 extrapolation failed");
    }

    w.backward = w.forward;
    for (auto& t : w.backward.t) t = -t;
    return w;
}

FillStats fill_flagged(LogCombination& u, std::size_t max_gap, double tail_ramp) {
    if (!(tail_ramp >= 0.0)) throw std::invalid_argument("fill_flagged: tail_ramp must be >= 0");
    // Valid extent of one side: everything before the first run of max_gap
    // consecutive flagged lags. Isolated lags passing the floor beyond such a
    // run are chance excursions of a ratio of two noise terms.
    auto truncate = [&](LogSeries& s) {
        if (max_gap == 0) return;
        std::size_t run = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            run = s.flagged[k] ? run + 1 : 0;
            if (run >= max_gap) {
                for (std::size_t j = k + 1; j < s.size(); ++j) s.flagged[j] = 1;
                return;
            }
        }
    };
    truncate(u.forward);
    truncate(u.backward);

    FillStats st;
    std::size_t n_pi = 0, n_valid = 0;
    for (const LogSeries* s : {&u.forward, &u.backward}) {
        for (std::size_t k = 0; k < s->size(); ++k) {
            if (s->flagged[k]) continue;
            ++n_valid;
            if (s->v[k].imag() != 0.0) ++n_pi;
        }
    }
    if (n_valid == 0) throw std::runtime_error("fill_flagged: no valid lags");
    const double branch = 2 * n_pi > n_valid ? kPi : 0.0;

    struct Edge {
        std::ptrdiff_t first = -1;
        std::ptrdiff_t last = -1;
        double tail = 0.0;  // mean of the last few valid values
    };
    auto edges = [](const LogSeries& s) {
        Edge e;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (!s.flagged[k]) {
                if (e.first < 0) e.first = static_cast<std::ptrdiff_t>(k);
                e.last = static_cast<std::ptrdiff_t>(k);
            }
        }
        constexpr std::size_t kTailSamples = 8;
        std::size_t used = 0;
        for (std::ptrdiff_t k = e.last; k >= 0 && used < kTailSamples; --k) {
            if (s.flagged[static_cast<std::size_t>(k)]) continue;
            e.tail += s.v[static_cast<std::size_t>(k)].real();
            ++used;
        }
        if (used) e.tail /= static_cast<double>(used);
        return e;
    };
    const Edge ef = edges(u.forward);
    const Edge eb = edges(u.backward);
    double tail;
    if (std::isfinite(u.constant)) {
        tail = u.constant;
    } else if (ef.last >= 0 && eb.last >= 0) {
        tail = 0.5 * (ef.tail + eb.tail);
    } else if (ef.last >= 0) {
        tail = ef.tail;
    } else {
        tail = eb.tail;
    }

    st.tail = {tail, branch};
    for (auto [s, e] : {std::pair<LogSeries*, Edge>{&u.forward, ef}, {&u.backward, eb}}) {
        const std::size_t n = s->size();
        if (e.last < 0) {
            for (std::size_t k = 0; k < n; ++k) s->v[k] = {tail, branch};
            st.trailing += n;
            continue;
        }
        const auto first = static_cast<std::size_t>(e.first);
        const auto last = static_cast<std::size_t>(e.last);
        st.extent += last + 1;
        for (std::size_t k = 0; k < first; ++k) {
            s->v[k] = {s->v[first].real(), branch};
            ++st.interior_flagged;
        }
        std::size_t prev = first;
        for (std::size_t k = first + 1; k <= last; ++k) {
            if (s->flagged[k]) continue;
            if (k > prev + 1) {
                const double y0 = s->v[prev].real();
                const double y1 = s->v[k].real();
                for (std::size_t j = prev + 1; j < k; ++j) {
                    const double w = static_cast<double>(j - prev) / static_cast<double>(k - prev);
                    s->v[j] = {y0 + w * (y1 - y0), branch};
                    ++st.interior_flagged;
                }
            }
            prev = k;
        }
        // Unmeasured lags approach the tail value linearly over tail_ramp
        // times the valid extent instead of jumping to it.
        const double span = tail_ramp * static_cast<double>(last + 1);
        for (std::size_t k = last + 1; k < n; ++k) {
            const double x = span > 0.0 ? static_cast<double>(k - last) / span : 1.0;
            s->v[k] = {x >= 1.0 ? tail : e.tail + x * (tail - e.tail), branch};
        }
        st.trailing += n - last - 1;
    }
    return st;
}

}  // namespace sscs
