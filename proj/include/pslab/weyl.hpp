#pragma once

#include "pslab/phase_space.hpp"

namespace pslab {

/// W(x,p) = (pi hbar)^{-1} int dy psi*(x+y) psi(x-y) exp(2ipy/hbar), one FFT per x-row.
/// Requires a normalised psi with at most 1e-6 probability mass in the boundary band.
PhaseSpaceField wigner_from_pure(const WaveFunction& psi);

/// W(x,p) = (pi hbar)^{-1} int dy rho(x-y, x+y) exp(2ipy/hbar). Accepts kernels on
/// either lattice. A stride-2 kernel resolves momenta |p| < P/2 only; W is set to zero
/// outside that band.
PhaseSpaceField wigner_from_density(const DensityOperatorKernel& rho);

/// rho(x,x') = int dp W((x+x')/2, p) exp(ip(x-x')/hbar), evaluated on the stride-2
/// lattice so that every midpoint (x+x')/2 is a field sample. Any real field is
/// accepted; the result need not be positive.
DensityOperatorKernel inverse_weyl(const PhaseSpaceField& field);

struct Marginals {
    Eigen::VectorXd position; ///< sum_k W(x_j, p_k) dp
    Eigen::VectorXd momentum; ///< sum_j W(x_j, p_k) dx
};

Marginals marginals(const PhaseSpaceField& field);

/// (2 pi hbar)^D sum A B dx dp, i.e. Tr(A B) for the corresponding operators.
double hilbert_schmidt_trace(const PhaseSpaceField& a, const PhaseSpaceField& b);

/// Imaginary residue tolerated (and discarded) after the Wigner row transforms.
inline constexpr double kWignerImaginaryTol = 1e-10;
/// Largest boundary-band probability mass accepted by wigner_from_pure.
inline constexpr double kEdgeMassTol = 1e-6;
inline constexpr double kNormalizationTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-10;

} // namespace pslab
