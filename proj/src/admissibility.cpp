#include "pslab/admissibility.hpp"

#include "fft.hpp"
#include "pslab/errors.hpp"
#include "pslab/weyl.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pslab {

using std::numbers::pi;

SmoothingKernel::SmoothingKernel(double sigma_x, double sigma_p)
    : sigma_x_(sigma_x), sigma_p_(sigma_p) {
    if (!(sigma_x > 0.0) || !(sigma_p > 0.0) || !std::isfinite(sigma_x) || !std::isfinite(sigma_p))
        throw ValidationError("smoothing widths must be positive");
}

SmoothingKernel SmoothingKernel::minimal_uncertainty(double hbar, double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be positive");
    return {std::sqrt(0.5 * hbar * kappa), std::sqrt(0.5 * hbar / kappa)};
}

double SmoothingKernel::operator()(double x, double p) const {
    const double u = x / sigma_x_;
    const double v = p / sigma_p_;
    return std::exp(-0.5 * (u * u + v * v)) / (2.0 * pi * sigma_x_ * sigma_p_);
}

PhaseSpaceField SmoothingKernel::sample(const PhaseSpaceGrid& grid) const {
    RealArray values(grid.nx(), grid.np());
    for (int j = 0; j < grid.nx(); ++j)
        for (int k = 0; k < grid.np(); ++k) values(j, k) = (*this)(grid.x(j), grid.p(k));
    return {grid, std::move(values), FieldKind::kernel};
}

double SmoothingKernel::divergence_threshold() const {
    const double widest = std::max(sigma_x_, sigma_p_);
    return 1.0 / (2.0 * widest * widest);
}

namespace {

void require_boundary_decay(const PhaseSpaceField& field, std::string_view role) {
    const double ratio = field.edge_ratio();
    if (ratio > kBoundaryDecayTol)
        throw DivergenceSuspected(fmt::format(
            "DivergenceSuspected: {} does not decay at the grid boundary (edge/max = {:.3g}); "
            "a periodic Gaussian convolution would be invalid, use divergence_probe",
            role, ratio));
}

// sum_{z'} a(z') K(z - z') dx dp with K renormalised to unit grid mass.
RealArray smooth_values(const RealArray& values, const PhaseSpaceGrid& grid,
                        const SmoothingKernel& kernel) {
    RealArray k = kernel.sample(grid).values();
    k /= k.sum();
    return detail::convolve_centered(values, k);
}

RealArray reflected(const PhaseSpaceField& field) {
    const PhaseSpaceGrid& g = field.grid();
    RealArray out(g.nx(), g.np());
    for (int j = 0; j < g.nx(); ++j)
        for (int k = 0; k < g.np(); ++k) out(j, k) = field(g.mirror(j), g.mirror(k));
    return out;
}

} // namespace

PhaseSpaceField gaussian_smooth(const PhaseSpaceField& field, const SmoothingKernel& kernel) {
    require_boundary_decay(field, "field");
    const PhaseSpaceGrid& grid = field.grid();
    RealArray smoothed = smooth_values(field.values(), grid, kernel);
    FieldKind kind = FieldKind::generic;
    if (field.kind() == FieldKind::wigner &&
        kernel.sigma_x() * kernel.sigma_p() >= 0.5 * grid.hbar() * (1.0 - 1e-12)) {
        kind = FieldKind::husimi;
        // Round-off below -1e-12 is a genuine signal and is left for the
        // PhaseSpaceField invariant to reject.
        smoothed = smoothed.unaryExpr([](double v) { return (v < 0.0 && v >= -1e-12) ? 0.0 : v; });
    }
    return {grid, std::move(smoothed), kind};
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::admissible: return "admissible";
    case Verdict::inadmissible: return "inadmissible";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

Verdict classify_admissibility(double min_eigenvalue, double trace,
                               const AdmissibilityTolerances& tol) {
    const double trace_error = std::abs(trace - 1.0);
    if (min_eigenvalue >= -tol.eigenvalue && trace_error <= tol.trace) return Verdict::admissible;
    if (min_eigenvalue >= -2.0 * tol.eigenvalue && trace_error <= 2.0 * tol.trace)
        return Verdict::indeterminate;
    return Verdict::inadmissible;
}

AdmissibilityReport admissibility_report(const PhaseSpaceField& field,
                                         const AdmissibilityTolerances& tol) {
    const DensityOperatorKernel kernel = inverse_weyl(field);
    AdmissibilityReport report;
    report.tolerances = tol;
    report.hermiticity_residual = kernel.hermiticity_residual();
    report.trace = kernel.trace();
    report.spectrum = kernel.spectrum(kHermiticityTol);
    report.min_eigenvalue = report.spectrum.minCoeff();
    report.purity = report.spectrum.squaredNorm();
    report.negative_mass = report.spectrum.cwiseMin(0.0).sum();

    const Marginals m = marginals(field);
    const double floor = -1e-8 * std::max(1.0, field.max_abs());
    report.marginals_nonneg = m.position.minCoeff() >= floor && m.momentum.minCoeff() >= floor;
    report.verdict = classify_admissibility(report.min_eigenvalue, report.trace, tol);
    return report;
}

double parity_residual(const PhaseSpaceField& field) {
    return (field.values() - reflected(field)).abs().maxCoeff();
}

ChainResidual convolution_chain_residual(const PhaseSpaceField& w, const PhaseSpaceField& f,
                                         const SmoothingKernel& kernel) {
    require_same_grid(w.grid(), f.grid());
    require_boundary_decay(w, "W");
    const PhaseSpaceGrid& grid = w.grid();
    const double cell = grid.cell_area();
    const RealArray k = kernel.sample(grid).values();

    // direct:    sum_z F(z) sum_{z''} W(z - z'') K(z'')   = <F, W * K>
    // reflected: sum_z F(z) sum_{z''} W(z'' - z) K(z'')   = <F, W~ * K>,  W~(u) = W(-u)
    // K enters as a function of z'' relative to the origin, so it is the centred operand.
    const RealArray direct = detail::convolve_centered(w.values(), k);
    const RealArray mirrored = detail::convolve_centered(reflected(w), k);
    ChainResidual out;
    out.direct = (f.values() * direct).sum() * cell * cell;
    out.reflected = (f.values() * mirrored).sum() * cell * cell;
    out.residual = std::abs(out.direct - out.reflected);
    return out;
}

std::string_view to_string(GrowthClass growth) {
    switch (growth) {
    case GrowthClass::convergent: return "convergent";
    case GrowthClass::divergent: return "divergent";
    case GrowthClass::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

double truncated_smoothing_integral(double a, const SmoothingKernel& kernel, double radius) {
    if (!(radius > 0.0)) return 0.0;
    using Rule = boost::math::quadrature::gauss<double, 20>;
    constexpr int kAngles = 512;
    const int panels = std::max(1, static_cast<int>(std::ceil(radius / 0.25)));
    const double width = radius / panels;

    auto ring = [&](double r) {
        // Trapezoid in theta is spectrally accurate for this periodic integrand.
        double sum = 0.0;
        for (int t = 0; t < kAngles; ++t) {
            const double theta = 2.0 * pi * t / kAngles;
            sum += kernel(-r * std::cos(theta), -r * std::sin(theta));
        }
        return r * std::exp(a * r * r) * sum * (2.0 * pi / kAngles);
    };

    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        total += Rule::integrate(ring, i * width, (i + 1) * width);
    }
    return total;
}

DivergenceReport divergence_probe(double a, const SmoothingKernel& kernel,
                                  std::span<const double> cutoffs) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("probe parameter a must be positive");
    if (cutoffs.empty()) throw ValidationError("probe needs at least one cutoff");
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (!(cutoffs[i] > 0.0)) throw ValidationError("cutoffs must be positive");
        if (i > 0 && !(cutoffs[i] > cutoffs[i - 1]))
            throw ValidationError("cutoffs must be strictly increasing");
    }

    DivergenceReport report;
    report.a = a;
    report.sigma_x = kernel.sigma_x();
    report.sigma_p = kernel.sigma_p();
    report.threshold = kernel.divergence_threshold();
    report.cutoffs.assign(cutoffs.begin(), cutoffs.end());
    for (double r : cutoffs) report.integrals.push_back(truncated_smoothing_integral(a, kernel, r));

    const std::size_t n = report.integrals.size();
    if (n < 3) return report;
    const double prev = report.integrals[n - 2] - report.integrals[n - 3];
    const double last = report.integrals[n - 1] - report.integrals[n - 2];
    const double value = report.integrals[n - 1];
    if (last > prev && prev > 0.0) {
        report.tail_estimate = std::numeric_limits<double>::infinity();
        report.classification = GrowthClass::divergent;
    } else if (last >= 0.0 && last < prev) {
        // Aitken: geometric tail last * r / (1 - r) with r = last / prev.
        report.tail_estimate = (last * last / (prev - last)) / std::abs(value);
        report.classification = report.tail_estimate < kConvergenceTol ? GrowthClass::convergent
                                                                       : GrowthClass::indeterminate;
    }
    return report;
}

double wigner_bound_check(const PhaseSpaceField& field) {
    return field.max_abs() * pi * field.grid().hbar();
}

} // namespace pslab
