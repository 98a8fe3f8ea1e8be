#pragma once

#include "pslab/phase_space.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace pslab {

struct FockSpec {
    int n = 0;
    bool operator==(const FockSpec&) const = default;
};
struct CoherentSpec {
    double x0 = 0.0;
    double p0 = 0.0;
    bool operator==(const CoherentSpec&) const = default;
};
struct CatSpec {
    double separation = 1.0;
    int parity = 1;
    bool operator==(const CatSpec&) const = default;
};

enum class BoxShape { square, disk };

struct BoxSpec {
    double omega = 1.0;
    BoxShape shape = BoxShape::square;
    bool operator==(const BoxSpec&) const = default;
};
struct ExpQuadraticSpec {
    double a = 1.0;
    bool operator==(const ExpQuadraticSpec&) const = default;
};
/// Unit-mass Gaussian bump centred at (x0, p0).
struct GaussianFieldSpec {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma_x = 1.0;
    double sigma_p = 1.0;
    bool operator==(const GaussianFieldSpec&) const = default;
};

using StateSpec =
    std::variant<FockSpec, CoherentSpec, CatSpec, BoxSpec, ExpQuadraticSpec, GaussianFieldSpec>;

/// Largest oscillator level supported by the Hermite recurrence.
inline constexpr int kMaxFockLevel = 30;

/// Oscillator eigenstate (m = omega = 1) via the normalised three-term Hermite recurrence.
WaveFunction harmonic_eigenstate(int n, const PhaseSpaceGrid& grid);

/// Ground state displaced to (x0, p0): phase exp(i p0 x / hbar). Requires |x0| <= L/2.
WaveFunction coherent_state(double x0, double p0, const PhaseSpaceGrid& grid);

/// (|d/2> + parity |-d/2>) / sqrt(2 (1 + parity exp(-d^2 / 4 hbar))), d >= 1.
WaveFunction cat_state(double separation, int parity, const PhaseSpaceGrid& grid);

/// W = 1/Omega on a region of area Omega centred at the origin, 0 elsewhere.
///
/// The region is a set of grid samples: the disk takes x^2 + p^2 <= Omega/pi, the
/// square takes a (2m+1) x (2n+1) block of samples whose area is closest to Omega.
/// The inside value is 1/(realised area) so the field integrates to exactly one.
PhaseSpaceField box_field(double omega, BoxShape shape, const PhaseSpaceGrid& grid);

/// f_a(x, p) = exp(a (x^2 + p^2)); unnormalised.
PhaseSpaceField exp_quadratic_field(double a, const PhaseSpaceGrid& grid);

PhaseSpaceField gaussian_field(const GaussianFieldSpec& spec, const PhaseSpaceGrid& grid);

bool describes_wavefunction(const StateSpec& spec);

WaveFunction make_wavefunction(const StateSpec& spec, const PhaseSpaceGrid& grid);

/// Phase-space field for any spec: the Wigner function for pure-state specs,
/// the field itself otherwise.
PhaseSpaceField make_field(const StateSpec& spec, const PhaseSpaceGrid& grid);

std::string_view to_string(BoxShape shape);

/// Compact text form, e.g. "fock:3", "coherent:x0=2,p0=0", "cat:d=6,parity=-1",
/// "box:omega=4,shape=square", "exp_quadratic:a=1", "gaussian_field:x0=0,p0=0,sigma_x=1,sigma_p=1".
std::string describe(const StateSpec& spec);
StateSpec parse_state(std::string_view text);

} // namespace pslab
