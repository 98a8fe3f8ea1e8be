#include "pslab/weyl.hpp"

#include "fft.hpp"
#include "pslab/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace pslab {
namespace {

using detail::Fft1d;
using detail::FftSign;

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Shared row transform of the Wigner map. `rho(a, b)` returns the continuous
// kernel value rho(x_a, x_b) for lattice indices; the lattice is every
// `stride`-th x-sample. For each x_j, y = n dx and
//   2 p_k y / hbar = 2 pi k n / N - pi n,
// so the p-row is a backward DFT of (-1)^n w rho(x_j - y, x_j + y).
template <typename KernelAt>
PhaseSpaceField wigner_rows(const PhaseSpaceGrid& grid, int stride, KernelAt rho) {
    const int n = grid.nx();
    const double weight = stride * grid.dx();
    const double prefactor = 1.0 / (std::numbers::pi * grid.hbar());
    RealArray values(n, grid.np());
    std::vector<std::complex<double>> row(static_cast<std::size_t>(n));
    Fft1d fft(n, FftSign::backward);
    double imag_residue = 0.0;

    for (int j = 0; j < n; ++j) {
        std::fill(row.begin(), row.end(), std::complex<double>{});
        for (int shift = -(n / 2) + 1; shift < n / 2; ++shift) {
            const int lo = j - shift;
            const int hi = j + shift;
            // Sample 0 (x = -L) has no mirror partner; skipping it keeps rows j and N-j symmetric.
            if (lo < 1 || hi < 1 || lo >= n || hi >= n) continue;
            if (lo % stride != 0) continue;
            row[static_cast<std::size_t>((shift + n) % n)] =
                parity_sign(shift) * weight * rho(lo / stride, hi / stride);
        }
        fft(row);
        for (int k = 0; k < n; ++k) {
            // A stride-2 row is P-periodic in p; only |p| < P/2 is resolved.
            if (stride == 2 && (k < n / 4 || k >= 3 * n / 4)) {
                values(j, k) = 0.0;
                continue;
            }
            values(j, k) = prefactor * row[k].real();
            imag_residue = std::max(imag_residue, prefactor * std::abs(row[k].imag()));
        }
    }
    if (imag_residue > kWignerImaginaryTol)
        throw NumericalGuardError("Wigner transform left an imaginary residue of " +
                                  std::to_string(imag_residue));
    return {grid, std::move(values), FieldKind::wigner};
}

} // namespace

PhaseSpaceField wigner_from_pure(const WaveFunction& psi) {
    if (!psi.is_normalized(kNormalizationTol))
        throw ValidationError("wave function is not normalised (norm^2 = " +
                              std::to_string(psi.norm_squared()) + ")");
    if (psi.edge_mass() > kEdgeMassTol)
        throw NumericalGuardError("wave function has probability " +
                                  std::to_string(psi.edge_mass()) +
                                  " in the boundary band; enlarge the grid");
    const Eigen::VectorXcd& v = psi.values();
    return wigner_rows(psi.grid(), 1,
                       [&v](int a, int b) { return v[a] * std::conj(v[b]); });
}

PhaseSpaceField wigner_from_density(const DensityOperatorKernel& rho) {
    const double residual = rho.hermiticity_residual();
    if (residual > kHermiticityTol)
        throw ValidationError("density kernel is not Hermitian (residual " +
                              std::to_string(residual) + ")");
    return wigner_rows(rho.grid(), rho.stride(), [&rho](int a, int b) { return rho.value(a, b); });
}

DensityOperatorKernel inverse_weyl(const PhaseSpaceField& field) {
    const PhaseSpaceGrid& grid = field.grid();
    const int n = grid.nx();
    const int m = n / 2;
    const double weight = 2.0 * grid.dx();
    Eigen::MatrixXcd kernel = Eigen::MatrixXcd::Zero(m, m);
    std::vector<std::complex<double>> row(static_cast<std::size_t>(n));
    Fft1d fft(n, FftSign::backward);

    // Lattice points a, b sit at x-samples 2a, 2b; their midpoint is sample a + b.
    // With shift = 2a - (a + b), x_a - x_b = 2 shift dx and
    //   p_k (x_a - x_b) / hbar = 2 pi k shift / N - pi shift.
    for (int mid = 0; mid <= 2 * (m - 1); ++mid) {
        for (int k = 0; k < n; ++k) row[k] = field(mid, k);
        fft(row);
        for (int a = std::max(0, mid - (m - 1)); a <= std::min(mid, m - 1); ++a) {
            const int b = mid - a;
            const int shift = 2 * a - mid;
            if (std::abs(shift) >= n / 2) continue;
            const std::complex<double> g = row[static_cast<std::size_t>((shift + n) % n)];
            kernel(a, b) = weight * grid.dp() * parity_sign(shift) * g;
        }
    }
    return {grid, std::move(kernel), 2};
}

Marginals marginals(const PhaseSpaceField& field) {
    const PhaseSpaceGrid& grid = field.grid();
    Marginals out;
    out.position = field.values().rowwise().sum().matrix() * grid.dp();
    out.momentum = field.values().colwise().sum().transpose().matrix() * grid.dx();
    return out;
}

double hilbert_schmidt_trace(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    require_same_grid(a.grid(), b.grid());
    const PhaseSpaceGrid& grid = a.grid();
    return grid.phase_space_cell() * (a.values() * b.values()).sum() * grid.cell_area();
}

} // namespace pslab
