#include "pslab/grid.hpp"

#include "pslab/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace pslab {

PhaseSpaceGrid::PhaseSpaceGrid(double hbar, double half_width, int nx)
    : hbar_(hbar), half_width_(half_width), nx_(nx) {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw ValidationError("hbar must be positive");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ValidationError("L must be positive");
    if (nx < 8 || nx % 2 != 0)
        throw ValidationError("Nx must be even and >= 8, got " + std::to_string(nx));
    dx_ = 2.0 * half_width_ / nx_;
    dp_ = std::numbers::pi * hbar_ / (nx_ * dx_);
}

int PhaseSpaceGrid::edge_band() const {
    return std::max(1, static_cast<int>(std::ceil(0.05 * nx_)));
}

double PhaseSpaceGrid::phase_space_cell() const {
    return std::pow(2.0 * std::numbers::pi * hbar_, kDegreesOfFreedom);
}

PhaseSpaceGrid build_grid(double hbar, double half_width, int nx) {
    return PhaseSpaceGrid(hbar, half_width, nx);
}

int default_nx() {
    const char* env = std::getenv("PSLAB_GRID_NX");
    if (env == nullptr || *env == '\0') return kDefaultNx;
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0')
        throw ValidationError(std::string("PSLAB_GRID_NX is not an integer: ") + env);
    return static_cast<int>(value);
}

PhaseSpaceGrid default_grid() {
    return PhaseSpaceGrid(kDefaultHbar, kDefaultHalfWidth, default_nx());
}

} // namespace pslab
