#include "oscwave/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "oscwave/errors.hpp"

namespace oscwave {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Times where the linear interpolant of the series changes sign. An exact
// zero sample counts once.
std::vector<double> crossing_times(const RealSeries& s) {
    const auto& v = s.values;
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0.0) {
            if (i == 0 || v[i - 1] != 0.0) out.push_back(s.grid.point(i));
        } else if (i > 0 && v[i - 1] != 0.0 && v[i - 1] * v[i] < 0.0) {
            const double t0 = s.grid.point(i - 1);
            const double t1 = s.grid.point(i);
            out.push_back(t0 + (t1 - t0) * v[i - 1] / (v[i - 1] - v[i]));
        }
    }
    return out;
}

// Decay guess: minus the least-squares slope of log extremum magnitude
// against time.
double initial_rate(const RealSeries& s) {
    const auto& v = s.values;
    std::vector<double> ts;
    std::vector<double> logs;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double m = std::abs(v[i]);
        if (m > 0.0 && m >= std::abs(v[i - 1]) && m > std::abs(v[i + 1])) {
            ts.push_back(s.grid.point(i));
            logs.push_back(std::log(m));
        }
    }
    if (ts.size() < 2) return 0.0;
    double mean_t = 0.0;
    double mean_l = 0.0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
        mean_t += ts[j];
        mean_l += logs[j];
    }
    mean_t /= static_cast<double>(ts.size());
    mean_l /= static_cast<double>(ts.size());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
        num += (ts[j] - mean_t) * (logs[j] - mean_l);
        den += (ts[j] - mean_t) * (ts[j] - mean_t);
    }
    if (den == 0.0) return 0.0;
    return -num / den;
}

// theta = {B, C, r, w} for the model exp(-r t) * (B sin(w t) + C cos(w t)).
using Theta = std::array<double, 4>;

double sum_squares(const std::vector<double>& t, const std::vector<double>& y,
                   const Theta& th) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e = std::exp(-th[2] * t[i]);
        const double m =
            e * (th[0] * std::sin(th[3] * t[i]) + th[1] * std::cos(th[3] * t[i]));
        const double r = m - y[i];
        s += r * r;
    }
    return s;
}

// Gaussian elimination with partial pivoting; false on a vanishing pivot.
bool solve4(std::array<std::array<double, 5>, 4>& m, std::array<double, 4>& x) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 4; ++row)
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        if (std::abs(m[pivot][col]) < 1e-300) return false;
        std::swap(m[col], m[pivot]);
        for (int row = col + 1; row < 4; ++row) {
            const double f = m[row][col] / m[col][col];
            for (int k = col; k < 5; ++k) m[row][k] -= f * m[col][k];
        }
    }
    for (int row = 3; row >= 0; --row) {
        double acc = m[row][4];
        for (int k = row + 1; k < 4; ++k) acc -= m[row][k] * x[k];
        x[row] = acc / m[row][row];
    }
    return true;
}

}  // namespace

EnvelopeFit fit_damped_oscillation(const RealSeries& series) {
    const std::vector<double> crossings = crossing_times(series);
    if (crossings.size() < 5) {
        std::ostringstream msg;
        msg << "fit_damped_oscillation: found " << crossings.size()
            << " zero crossings; at least 5 are required";
        throw validation_error(msg.str());
    }
    const double mean_spacing =
        (crossings.back() - crossings.front()) /
        static_cast<double>(crossings.size() - 1);
    const double w0 = std::acos(-1.0) / mean_spacing;
    const double r0 = std::clamp(initial_rate(series), -w0, w0);

    // Everything earlier than a quarter period is left out so the fit is not
    // steered by a start-up transient.
    const double t_cut = 0.5 * std::acos(-1.0) / w0;
    std::vector<double> t;
    std::vector<double> y;
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (series.grid.point(i) >= t_cut) {
            t.push_back(series.grid.point(i));
            y.push_back(series.values[i]);
        }
    }
    if (t.size() < 8)
        throw numeric_error(
            "fit_damped_oscillation: too few samples beyond the first quarter "
            "period");

    // Linear least squares for the sin/cos weights at the frozen (r0, w0)
    // seeds the nonlinear refinement close to the answer.
    double s_uu = 0.0, s_uz = 0.0, s_zz = 0.0, b_u = 0.0, b_z = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e = std::exp(-r0 * t[i]);
        const double u = e * std::sin(w0 * t[i]);
        const double z = e * std::cos(w0 * t[i]);
        s_uu += u * u;
        s_uz += u * z;
        s_zz += z * z;
        b_u += u * y[i];
        b_z += z * y[i];
    }
    Theta th{0.0, 0.0, r0, w0};
    const double det = s_uu * s_zz - s_uz * s_uz;
    if (std::abs(det) > 1e-300 * (1.0 + s_uu) * (1.0 + s_zz)) {
        th[0] = (b_u * s_zz - b_z * s_uz) / det;
        th[1] = (b_z * s_uu - b_u * s_uz) / det;
    } else {
        th[0] = *std::max_element(y.begin(), y.end(),
                                  [](double a, double b) {
                                      return std::abs(a) < std::abs(b);
                                  });
    }

    double sse = sum_squares(t, y, th);
    double mu = 1e-3;
    int stalled = 0;
    bool converged = false;
    for (int iter = 0; iter < 300 && !converged; ++iter) {
        std::array<std::array<double, 4>, 4> jtj{};
        std::array<double, 4> jtr{};
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double e = std::exp(-th[2] * t[i]);
            const double s = std::sin(th[3] * t[i]);
            const double c = std::cos(th[3] * t[i]);
            const double model = e * (th[0] * s + th[1] * c);
            const std::array<double, 4> j{
                e * s, e * c, -t[i] * model, t[i] * e * (th[0] * c - th[1] * s)};
            const double res = model - y[i];
            for (int a = 0; a < 4; ++a) {
                jtr[a] += j[a] * res;
                for (int b = a; b < 4; ++b) jtj[a][b] += j[a] * j[b];
            }
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < a; ++b) jtj[a][b] = jtj[b][a];

        bool accepted = false;
        for (int damp = 0; damp < 40 && !accepted; ++damp) {
            std::array<std::array<double, 5>, 4> aug{};
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) aug[a][b] = jtj[a][b];
                aug[a][a] += mu * std::max(jtj[a][a], 1e-12);
                aug[a][4] = -jtr[a];
            }
            std::array<double, 4> step{};
            if (solve4(aug, step)) {
                Theta cand{th[0] + step[0], th[1] + step[1], th[2] + step[2],
                           th[3] + step[3]};
                const double cand_sse = sum_squares(t, y, cand);
                if (std::isfinite(cand_sse) && cand_sse <= sse) {
                    const double drop = sse - cand_sse;
                    double rel_step = 0.0;
                    for (int a = 0; a < 4; ++a)
                        rel_step = std::max(
                            rel_step, std::abs(step[a]) / (1.0 + std::abs(th[a])));
                    th = cand;
                    sse = cand_sse;
                    mu = std::max(mu / 3.0, 1e-14);
                    accepted = true;
                    stalled = drop <= 1e-14 * (sse + 1e-300) || rel_step <= 1e-12
                                  ? stalled + 1
                                  : 0;
                    if (stalled >= 2) converged = true;
                }
            }
            if (!accepted) mu *= 4.0;
        }
        if (!accepted) {
            if (mu > 1e14) break;
        }
    }
    if (!converged)
        throw numeric_error(
            "fit_damped_oscillation: refinement did not converge");

    double b_sin = th[0];
    double c_cos = th[1];
    double rate = th[2];
    double omega = th[3];
    if (omega < 0.0) {
        omega = -omega;
        b_sin = -b_sin;
    }
    if (!(omega > 0.0))
        throw numeric_error("fit_damped_oscillation: frequency collapsed to zero");
    if (rate < 0.0) rate = 0.0;

    EnvelopeFit fit;
    fit.amplitude = std::hypot(b_sin, c_cos);
    fit.rate = rate;
    fit.omega = omega;
    fit.phase = fit.amplitude > 0.0 ? std::atan2(c_cos, b_sin) : 0.0;
    if (fit.phase < 0.0) fit.phase += kTwoPi;
    if (fit.phase >= kTwoPi) fit.phase -= kTwoPi;

    // Residual at the reported (possibly rate-clamped) parameters, over the
    // fitted range.
    double res_sq = 0.0;
    double ref_sq = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double m = fit.amplitude * std::exp(-fit.rate * t[i]) *
                         std::sin(fit.omega * t[i] + fit.phase);
        res_sq += (m - y[i]) * (m - y[i]);
        ref_sq += y[i] * y[i];
    }
    fit.rms_residual = std::sqrt(res_sq / static_cast<double>(t.size()));
    const double series_rms = std::sqrt(ref_sq / static_cast<double>(t.size()));
    if (fit.rms_residual > 0.2 * series_rms) {
        std::ostringstream msg;
        msg << "fit_damped_oscillation: fit rejected; rms residual "
            << fit.rms_residual << " exceeds 20% of the series rms "
            << series_rms;
        throw numeric_error(msg.str());
    }
    return fit;
}

}  // namespace oscwave
