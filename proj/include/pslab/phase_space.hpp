#pragma once

#include "pslab/grid.hpp"

#include <Eigen/Dense>

#include <span>
#include <string_view>

namespace pslab {

using RealArray = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Pure state sampled on the x-axis of a grid; amplitudes in length^{-1/2}.
class WaveFunction {
public:
    WaveFunction(PhaseSpaceGrid grid, Eigen::VectorXcd values);

    const PhaseSpaceGrid& grid() const { return grid_; }
    const Eigen::VectorXcd& values() const { return values_; }
    std::complex<double> operator[](int j) const { return values_[j]; }

    /// sum |psi_j|^2 dx
    double norm_squared() const;
    bool is_normalized(double tol = 1e-10) const;
    WaveFunction normalized() const;

    /// Probability mass in the outer 5% band at both ends of the x-axis.
    double edge_mass() const;

private:
    PhaseSpaceGrid grid_;
    Eigen::VectorXcd values_;
};

/// Operator kernel rho(x, x') sampled on every `stride`-th x-sample of the grid
/// (stride 1: the x-grid itself; stride 2: the lattice used by inverse_weyl).
/// Matrix entries carry the quadrature weight: entry (a, b) = rho(x_a, x_b) * stride * dx,
/// so that ordinary matrix trace and eigenvalues are operator trace and eigenvalues.
class DensityOperatorKernel {
public:
    DensityOperatorKernel(PhaseSpaceGrid grid, Eigen::MatrixXcd weighted, int stride = 1);

    const PhaseSpaceGrid& grid() const { return grid_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    int stride() const { return stride_; }
    int size() const { return static_cast<int>(matrix_.rows()); }
    double spacing() const { return stride_ * grid_.dx(); }
    double position(int a) const { return grid_.x(a * stride_); }

    /// Continuous kernel value rho(x_a, x_b).
    std::complex<double> value(int a, int b) const { return matrix_(a, b) / spacing(); }

    double trace() const { return matrix_.trace().real(); }
    double hermiticity_residual() const;

    /// Eigenvalues of (rho + rho^dagger)/2, ascending. Throws if the asymmetry
    /// before symmetrisation exceeds `hermiticity_tol`.
    Eigen::VectorXd spectrum(double hermiticity_tol = 1e-10) const;

private:
    PhaseSpaceGrid grid_;
    Eigen::MatrixXcd matrix_;
    int stride_;
};

DensityOperatorKernel density_from_pure(const WaveFunction& psi);

/// Convex combination sum_i w_i rho_i. Weights must be non-negative and sum to 1.
DensityOperatorKernel mix(std::span<const DensityOperatorKernel> states,
                          std::span<const double> weights);

enum class FieldKind { wigner, husimi, kernel, generic };

std::string_view to_string(FieldKind kind);
FieldKind field_kind_from_string(std::string_view name);

/// Real field on the Nx x Np grid, row-major with x as the row index.
class PhaseSpaceField {
public:
    PhaseSpaceField(PhaseSpaceGrid grid, RealArray values, FieldKind kind);

    const PhaseSpaceGrid& grid() const { return grid_; }
    const RealArray& values() const { return values_; }
    FieldKind kind() const { return kind_; }
    double operator()(int j, int k) const { return values_(j, k); }

    PhaseSpaceField with_kind(FieldKind kind) const { return {grid_, values_, kind}; }

    /// sum values dx dp
    double integral() const;
    double max_abs() const { return values_.abs().maxCoeff(); }
    double min() const { return values_.minCoeff(); }

    /// max |value| in the outer 5% frame of the grid divided by max |value|
    /// (0 for the zero field).
    double edge_ratio() const;

private:
    PhaseSpaceGrid grid_;
    RealArray values_;
    FieldKind kind_;
};

/// Throws ValidationError unless both grids are identical.
void require_same_grid(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b);

} // namespace pslab
