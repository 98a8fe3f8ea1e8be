#pragma once

#include <numbers>

namespace pslab {

/// Number of degrees of freedom. Prefactors of the form (2*pi*hbar)^D are
/// evaluated at this value.
inline constexpr int kDegreesOfFreedom = 1;

/// Uniform (x, p) grid for one degree of freedom.
///
/// x_j = (j - Nx/2) dx for j in [0, Nx), so x_0 = -L and x = 0 is a sample.
/// The momentum spacing is dp = pi*hbar / (Nx dx), the spacing for which the
/// Wigner transform of a row (kernel exp(2ipy/hbar), y = n dx) is exactly a
/// length-Nx DFT. p_k = (k - Np/2) dp, Np = Nx.
class PhaseSpaceGrid {
public:
    PhaseSpaceGrid(double hbar, double half_width, int nx);

    double hbar() const { return hbar_; }
    double half_width() const { return half_width_; }
    int nx() const { return nx_; }
    int np() const { return nx_; }
    double dx() const { return dx_; }
    double dp() const { return dp_; }
    /// Half-extent of the momentum axis, P = Np dp / 2.
    double p_max() const { return 0.5 * np() * dp_; }
    double cell_area() const { return dx_ * dp_; }

    double x(int j) const { return (j - nx_ / 2) * dx_; }
    double p(int k) const { return (k - nx_ / 2) * dp_; }

    /// Index of the sample reflected through the origin (periodic: 0 maps to 0).
    int mirror(int i) const { return (nx_ - i) % nx_; }

    /// Samples in the boundary band (outer 5% at each end of an axis).
    int edge_band() const;

    /// (2 pi hbar)^D.
    double phase_space_cell() const;

    bool operator==(const PhaseSpaceGrid&) const = default;

private:
    double hbar_;
    double half_width_;
    int nx_;
    double dx_;
    double dp_;
};

PhaseSpaceGrid build_grid(double hbar, double half_width, int nx);

/// hbar = 1, L = 8, Nx = 256; Nx may be overridden through PSLAB_GRID_NX.
PhaseSpaceGrid default_grid();

inline constexpr double kDefaultHbar = 1.0;
inline constexpr double kDefaultHalfWidth = 8.0;
inline constexpr int kDefaultNx = 256;

/// Default Nx after applying the PSLAB_GRID_NX override.
int default_nx();

} // namespace pslab
