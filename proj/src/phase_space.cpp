#include "pslab/phase_space.hpp"

#include "pslab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <string>

namespace pslab {

WaveFunction::WaveFunction(PhaseSpaceGrid grid, Eigen::VectorXcd values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.nx())
        throw ValidationError("wave function has " + std::to_string(values_.size()) +
                              " samples, grid has " + std::to_string(grid_.nx()));
    if (!values_.allFinite()) throw ValidationError("wave function has non-finite samples");
}

double WaveFunction::norm_squared() const {
    return values_.squaredNorm() * grid_.dx();
}

bool WaveFunction::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

WaveFunction WaveFunction::normalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw ValidationError("cannot normalise a zero wave function");
    return {grid_, values_ / std::sqrt(n2)};
}

double WaveFunction::edge_mass() const {
    const int band = grid_.edge_band();
    const int n = grid_.nx();
    double mass = 0.0;
    for (int j = 0; j < band; ++j) {
        mass += std::norm(values_[j]) + std::norm(values_[n - 1 - j]);
    }
    return mass * grid_.dx();
}

DensityOperatorKernel::DensityOperatorKernel(PhaseSpaceGrid grid, Eigen::MatrixXcd weighted,
                                             int stride)
    : grid_(grid), matrix_(std::move(weighted)), stride_(stride) {
    if (stride_ != 1 && stride_ != 2) throw ValidationError("kernel stride must be 1 or 2");
    const int expected = grid_.nx() / stride_;
    if (matrix_.rows() != expected || matrix_.cols() != expected)
        throw ValidationError("kernel must be " + std::to_string(expected) + "x" +
                              std::to_string(expected) + " for this grid and stride");
}

double DensityOperatorKernel::hermiticity_residual() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd DensityOperatorKernel::spectrum(double hermiticity_tol) const {
    const double residual = hermiticity_residual();
    if (residual > hermiticity_tol)
        throw ValidationError("kernel is not Hermitian (residual " + std::to_string(residual) +
                              ")");
    Eigen::MatrixXcd symmetric = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(symmetric, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalGuardError("Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

DensityOperatorKernel density_from_pure(const WaveFunction& psi) {
    const Eigen::VectorXcd& v = psi.values();
    Eigen::MatrixXcd rho = v * v.adjoint();
    rho *= psi.grid().dx();
    return {psi.grid(), std::move(rho), 1};
}

DensityOperatorKernel mix(std::span<const DensityOperatorKernel> states,
                          std::span<const double> weights) {
    if (states.empty()) throw ValidationError("mixture needs at least one state");
    if (states.size() != weights.size())
        throw ValidationError("mixture needs one weight per state");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("mixture weights must sum to 1");
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(states[0].size(), states[0].size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (weights[i] < 0.0) throw ValidationError("mixture weights must be non-negative");
        require_same_grid(states[0].grid(), states[i].grid());
        if (states[i].stride() != states[0].stride())
            throw ValidationError("mixture components live on different lattices");
        acc += weights[i] * states[i].matrix();
    }
    return {states[0].grid(), std::move(acc), states[0].stride()};
}

std::string_view to_string(FieldKind kind) {
    switch (kind) {
    case FieldKind::wigner: return "wigner";
    case FieldKind::husimi: return "husimi";
    case FieldKind::kernel: return "kernel";
    case FieldKind::generic: return "generic";
    }
    return "generic";
}

FieldKind field_kind_from_string(std::string_view name) {
    if (name == "wigner") return FieldKind::wigner;
    if (name == "husimi") return FieldKind::husimi;
    if (name == "kernel") return FieldKind::kernel;
    if (name == "generic") return FieldKind::generic;
    throw ValidationError("unknown field kind '" + std::string(name) + "'");
}

PhaseSpaceField::PhaseSpaceField(PhaseSpaceGrid grid, RealArray values, FieldKind kind)
    : grid_(grid), values_(std::move(values)), kind_(kind) {
    if (values_.rows() != grid_.nx() || values_.cols() != grid_.np())
        throw ValidationError("field shape does not match grid");
    if (!values_.allFinite()) throw ValidationError("field has non-finite values");
    if (kind_ == FieldKind::husimi && values_.minCoeff() < -1e-12)
        throw NumericalGuardError("Husimi field with negative values below -1e-12");
}

double PhaseSpaceField::integral() const {
    return values_.sum() * grid_.cell_area();
}

double PhaseSpaceField::edge_ratio() const {
    const double peak = max_abs();
    if (peak == 0.0) return 0.0;
    const int band = grid_.edge_band();
    double edge = 0.0;
    edge = std::max(edge, values_.topRows(band).abs().maxCoeff());
    edge = std::max(edge, values_.bottomRows(band).abs().maxCoeff());
    edge = std::max(edge, values_.leftCols(band).abs().maxCoeff());
    edge = std::max(edge, values_.rightCols(band).abs().maxCoeff());
    return edge / peak;
}

void require_same_grid(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    if (!(a == b)) throw ValidationError("grid mismatch");
}

} // namespace pslab
