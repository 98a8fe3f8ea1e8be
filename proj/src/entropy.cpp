#include "pslab/entropy.hpp"

#include "pslab/errors.hpp"
#include "pslab/weyl.hpp"

#include <cmath>
#include <string>

namespace pslab {

HusimiParameter::HusimiParameter(double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be positive");
}

double HusimiParameter::sigma_x(double hbar) const { return std::sqrt(0.5 * hbar * kappa_); }
double HusimiParameter::sigma_p(double hbar) const { return std::sqrt(0.5 * hbar / kappa_); }

SmoothingKernel HusimiParameter::kernel(double hbar) const {
    return SmoothingKernel::minimal_uncertainty(hbar, kappa_);
}

double purity_integral(const PhaseSpaceField& w) {
    return hilbert_schmidt_trace(w, w);
}

double s2_wigner(const PhaseSpaceField& w) { return 1.0 - purity_integral(w); }

double s2_operator(const DensityOperatorKernel& rho) {
    const double residual = rho.hermiticity_residual();
    if (residual > kHermiticityTol)
        throw ValidationError("density kernel is not Hermitian (residual " +
                              std::to_string(residual) + ")");
    // Tr rho^2 = sum_ab rho_ab rho_ba = sum_ab |rho_ab|^2 for Hermitian rho.
    return 1.0 - rho.matrix().squaredNorm();
}

double von_neumann_entropy(const DensityOperatorKernel& rho) {
    const Eigen::VectorXd lambda = rho.spectrum(kHermiticityTol);
    if (lambda.minCoeff() < -kNegativeEigenvalueTol)
        throw NumericalGuardError("kernel has eigenvalue " + std::to_string(lambda.minCoeff()) +
                                  "; von Neumann entropy is defined for states only");
    double s = 0.0;
    for (double l : lambda) {
        const double clipped = std::min(l, 1.0);
        if (clipped > kEigenvalueFloor) s -= clipped * std::log(clipped);
    }
    return s;
}

PhaseSpaceField husimi_from_state(const WaveFunction& psi, HusimiParameter kappa) {
    const PhaseSpaceField w = wigner_from_pure(psi);
    return gaussian_smooth(w, kappa.kernel(psi.grid().hbar()));
}

PhaseSpaceField husimi_from_density(const DensityOperatorKernel& rho, HusimiParameter kappa) {
    const PhaseSpaceField w = wigner_from_density(rho);
    return gaussian_smooth(w, kappa.kernel(rho.grid().hbar()));
}

double wehrl_entropy(const PhaseSpaceField& q) {
    if (q.kind() != FieldKind::husimi)
        throw ValidationError("Wehrl entropy requires a Husimi field, got kind '" +
                              std::string(to_string(q.kind())) + "'");
    if (q.min() < -kHusimiNegativityTol)
        throw NumericalGuardError("Husimi field has genuine negativity " + std::to_string(q.min()));
    double s = 0.0;
    for (double v : q.values().reshaped()) {
        if (v > 0.0) s -= v * std::log(v);
    }
    return s * q.grid().cell_area();
}

} // namespace pslab
