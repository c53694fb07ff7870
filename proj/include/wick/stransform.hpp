#pragma once

#include <cstdint>

#include "wick/chaos.hpp"
#include "wick/montecarlo.hpp"

namespace wick {

/// S(F)(xi) = E[F(. + xi)] = sum_alpha c_alpha prod_i xi_i^alpha_i.
double s_transform(const ChaosVector& F, const HVector& xi);

/// Monte Carlo estimate of E[F eps(xi)], using the closed form
/// eps(xi) = exp(xi~ - |xi|^2 / 2).
Estimate s_transform_mc(const ChaosVector& F, const HVector& xi, std::int64_t n_samples, std::uint64_t seed,
                        const SamplingOptions& options = {});

/// tau_xi F(w) = F(w + xi), applied coordinatewise through hermite_shift.
/// Translation never raises degree, so the cap is preserved.
ChaosVector translate(const ChaosVector& F, const HVector& xi);

}  // namespace wick
