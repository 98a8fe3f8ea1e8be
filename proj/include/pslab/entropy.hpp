#pragma once

#include "pslab/admissibility.hpp"
#include "pslab/phase_space.hpp"

namespace pslab {

/// Positive squeezing ratio of the Husimi smoothing kernel.
class HusimiParameter {
public:
    explicit HusimiParameter(double kappa = 1.0);
    double kappa() const { return kappa_; }
    double sigma_x(double hbar) const;
    double sigma_p(double hbar) const;
    SmoothingKernel kernel(double hbar) const;

private:
    double kappa_;
};

/// (2 pi hbar)^D sum W^2 dx dp; Tr rho^2 of the corresponding operator.
double purity_integral(const PhaseSpaceField& w);

/// 1 - purity_integral(W).
double s2_wigner(const PhaseSpaceField& w);

/// 1 - Tr rho^2.
double s2_operator(const DensityOperatorKernel& rho);

/// Eigenvalues clipped below this are treated as zero in -sum lambda ln lambda.
inline constexpr double kEigenvalueFloor = 1e-12;
/// Most negative eigenvalue accepted as round-off of a genuine state.
inline constexpr double kNegativeEigenvalueTol = 1e-8;

/// -sum lambda ln lambda in nats. Throws NumericalGuardError when the kernel has an
/// eigenvalue below -1e-8 (it is not a state; use admissibility_report instead).
double von_neumann_entropy(const DensityOperatorKernel& rho);

/// Gaussian smoothing of the Wigner function with sigma_x sigma_p = hbar / 2.
PhaseSpaceField husimi_from_state(const WaveFunction& psi, HusimiParameter kappa = HusimiParameter{});

/// Husimi function of a mixed state (smoothing of its Wigner function).
PhaseSpaceField husimi_from_density(const DensityOperatorKernel& rho,
                                    HusimiParameter kappa = HusimiParameter{});

/// Genuine negativity beyond this rejects a field in wehrl_entropy.
inline constexpr double kHusimiNegativityTol = 1e-6;

/// -sum Q ln Q dx dp in nats, 0 ln 0 = 0; negative round-off is clipped.
double wehrl_entropy(const PhaseSpaceField& q);

} // namespace pslab
