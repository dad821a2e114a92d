#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <variant>

#include "oscwave/params.hpp"

namespace oscwave {

// How the continued fraction is cut off at its deepest level: replace the
// remaining tail by zero (the standard truncation, matching the finite
// approximants of the functional equation), or by the fixed point of the
// deepest level's self-consistency relation.
enum class TailMode { zero, fixed_point };

struct ApproximantSpec {
    std::variant<ModelParams, WaveParams> params;
    std::size_t depth;
    TailMode tail = TailMode::zero;

    ApproximantSpec(ModelParams p, std::size_t depth, TailMode tail = TailMode::zero);
    ApproximantSpec(WaveParams p, std::size_t depth, TailMode tail = TailMode::zero);
};

// A Laplace-domain function together with a conservative bound on the real
// part of its rightmost singularity. Analytic for Re(p) > abscissa.
struct LaplaceFunction {
    std::function<std::complex<double>(std::complex<double>)> eval;
    double abscissa = 0.0;
};

// Depth-limited continued-fraction evaluation by backward recurrence.
// Oscillator: with shifted arguments q_j = p + j*lambda,
//   G_j = 1 / [ q_j + nu/(q_j + mu_kernel) + sigma^2 * G_{j+1} ],
// starting from the tail at level `depth` and descending to j = 0.
// Wave: E_j = 1 / [ q_j^2 + k^2 - sigma^2 k^4 * E_{j+1} ].
// Depth 1 is the noise-free transform; depth 2 coincides with the
// perturbative closure; deeper levels add non-perturbative structure.
// A denominator magnitude below 1e-14 raises a pole error naming the level.
std::complex<double> dia_approximant(const ApproximantSpec& spec,
                                     std::complex<double> p);

// Closed-form perturbative (one-iteration) transforms:
//   oscillator: 1 / [ p + nu/(p+mu) + sigma^2 / ( (p+l) + nu/(p+l+mu) ) ],
//   wave:       1 / [ p^2 + k^2 - sigma^2 k^4 / ( (p+l)^2 + k^2 ) ].
// These equal the depth-2 approximants identically.
std::complex<double> perturbative_transform(const ModelParams& params,
                                            std::complex<double> p);
std::complex<double> perturbative_transform(const WaveParams& params,
                                            std::complex<double> p);

// Left-hand side minus one of the closed functional equation, with the same
// finite approximant substituted at both p and p + lambda:
//   oscillator: G(p) [ p + nu/(p+mu) + sigma^2 G(p+lambda) ] - 1,
//   wave:       E(p) [ p^2 + k^2 - sigma^2 k^4 E(p+lambda) ] - 1.
// Shrinks toward zero as depth grows (for Re p away from the poles).
std::complex<double> functional_residual(const ApproximantSpec& spec,
                                         std::complex<double> p);

// Conservative estimate of the rightmost-singularity bound: samples |f| on
// vertical lines between Re(p) = 0 and 0.5, walking left until a line shows a
// blow-up, then bisecting. Never returns a negative value; for transforms
// whose poles all satisfy Re(p) <= 0 the result is (close to) zero.
double estimate_abscissa(
    const std::function<std::complex<double>(std::complex<double>)>& eval,
    double im_max);

// Bundle an approximant (or perturbative transform) with its estimated
// abscissa, ready for numerical inversion.
LaplaceFunction make_dia_laplace(const ApproximantSpec& spec);
LaplaceFunction make_perturbative_laplace(const ModelParams& params);
LaplaceFunction make_perturbative_laplace(const WaveParams& params);

}  // namespace oscwave
