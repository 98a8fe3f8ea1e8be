#pragma once

#include "pslab/phase_space.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace pslab {

/// Normalised Gaussian K(x,p) = (2 pi sx sp)^{-1} exp(-x^2/2sx^2 - p^2/2sp^2).
class SmoothingKernel {
public:
    SmoothingKernel(double sigma_x, double sigma_p);

    /// sigma_x^2 = hbar kappa / 2, sigma_p^2 = hbar / (2 kappa), so sigma_x sigma_p = hbar/2.
    static SmoothingKernel minimal_uncertainty(double hbar, double kappa = 1.0);

    double sigma_x() const { return sigma_x_; }
    double sigma_p() const { return sigma_p_; }
    double operator()(double x, double p) const;

    /// Kernel sampled on the grid, centred at the origin sample. kind = kernel.
    PhaseSpaceField sample(const PhaseSpaceGrid& grid) const;

    /// Largest a for which exp(a (x^2+p^2)) K is integrable: 1 / (2 max(sx, sp)^2).
    double divergence_threshold() const;

private:
    double sigma_x_;
    double sigma_p_;
};

/// Largest edge_ratio() accepted before a periodic convolution is refused.
inline constexpr double kBoundaryDecayTol = 1e-6;

/// W * K by periodic FFT convolution, kernel renormalised to unit mass on the grid.
/// Throws DivergenceSuspected when the field does not decay in the boundary band.
/// A Wigner field smoothed with sigma_x sigma_p >= hbar/2 comes back tagged husimi.
PhaseSpaceField gaussian_smooth(const PhaseSpaceField& field, const SmoothingKernel& kernel);

enum class Verdict { admissible, inadmissible, indeterminate };
std::string_view to_string(Verdict verdict);

struct AdmissibilityTolerances {
    double eigenvalue = 1e-6;
    double trace = 1e-4;
};

struct AdmissibilityReport {
    double trace = 0.0;
    double hermiticity_residual = 0.0;
    double min_eigenvalue = 0.0;
    double purity = 0.0;        ///< sum of squared eigenvalues
    double negative_mass = 0.0; ///< sum of negative eigenvalues
    bool marginals_nonneg = false;
    Verdict verdict = Verdict::indeterminate;
    AdmissibilityTolerances tolerances;
    Eigen::VectorXd spectrum; ///< ascending
};

/// admissible iff min eigenvalue >= -tol_eig and |trace - 1| <= tol_tr; a field
/// failing either test by no more than twice its tolerance is indeterminate.
Verdict classify_admissibility(double min_eigenvalue, double trace,
                               const AdmissibilityTolerances& tol);

/// Inverse-Weyl kernel of the field, symmetrised and diagonalised.
AdmissibilityReport admissibility_report(const PhaseSpaceField& field,
                                         const AdmissibilityTolerances& tol = {});

/// max |W(x,p) - W(-x,-p)| by index reflection.
double parity_residual(const PhaseSpaceField& field);

/// The two scalar functionals of the smoothing-kernel exchange argument:
///   direct    = sum_{z''} K(z'') sum_z W(z - z'') F(z)
///   reflected = sum_{z''} K(z'') sum_z W(z'' - z) F(z)
/// (quadrature weights included). They agree for every F when W is even.
struct ChainResidual {
    double direct = 0.0;
    double reflected = 0.0;
    double residual = 0.0;
};

ChainResidual convolution_chain_residual(const PhaseSpaceField& w, const PhaseSpaceField& f,
                                         const SmoothingKernel& kernel);

enum class GrowthClass { convergent, divergent, indeterminate };
std::string_view to_string(GrowthClass growth);

struct DivergenceReport {
    double a = 0.0;
    double sigma_x = 0.0;
    double sigma_p = 0.0;
    double threshold = 0.0; ///< a_0 of the kernel
    std::vector<double> cutoffs;
    std::vector<double> integrals; ///< I(R) per cutoff
    double tail_estimate = 0.0;    ///< Aitken estimate of I(inf) - I(R_last), relative
    GrowthClass classification = GrowthClass::indeterminate;
};

inline constexpr double kConvergenceTol = 1e-6;

/// I(R) = int_{|z| <= R} exp(a |z|^2) K(-z) dz (f_a smoothed at the origin, truncated),
/// integrated in polar coordinates afresh for each cutoff.
DivergenceReport divergence_probe(double a, const SmoothingKernel& kernel,
                                  std::span<const double> cutoffs);

/// I(R) for a single cutoff.
double truncated_smoothing_integral(double a, const SmoothingKernel& kernel, double radius);

/// max |W| pi hbar; values above 1 + 1e-8 rule out a pure-state Wigner function.
double wigner_bound_check(const PhaseSpaceField& field);

} // namespace pslab
