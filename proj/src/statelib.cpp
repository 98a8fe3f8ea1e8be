#include "pslab/statelib.hpp"

#include "pslab/errors.hpp"
#include "pslab/weyl.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

namespace pslab {
namespace {

using std::numbers::pi;

Eigen::VectorXcd displaced_ground(double x0, double p0, const PhaseSpaceGrid& grid) {
    const double hbar = grid.hbar();
    const double norm = std::pow(pi * hbar, -0.25);
    Eigen::VectorXcd v(grid.nx());
    for (int j = 0; j < grid.nx(); ++j) {
        const double x = grid.x(j);
        const double u = x - x0;
        v[j] = norm * std::exp(-u * u / (2.0 * hbar)) * std::polar(1.0, p0 * x / hbar);
    }
    return v;
}

WaveFunction checked(WaveFunction psi, std::string_view what) {
    if (psi.edge_mass() > kEdgeMassTol)
        throw ValidationError(std::string(what) + " does not fit inside the grid");
    return psi;
}

} // namespace

WaveFunction harmonic_eigenstate(int n, const PhaseSpaceGrid& grid) {
    if (n < 0) throw ValidationError("Fock level must be non-negative");
    if (n > kMaxFockLevel)
        throw ValidationError(fmt::format("Fock level {} exceeds supported maximum {}", n,
                                          kMaxFockLevel));
    const double hbar = grid.hbar();
    const double scale = std::pow(hbar, -0.25);
    Eigen::VectorXcd v(grid.nx());
    for (int j = 0; j < grid.nx(); ++j) {
        const double xi = grid.x(j) / std::sqrt(hbar);
        // phi_0 = pi^{-1/4} e^{-xi^2/2};
        // phi_{k+1} = sqrt(2/(k+1)) xi phi_k - sqrt(k/(k+1)) phi_{k-1}
        double prev = 0.0;
        double cur = std::pow(pi, -0.25) * std::exp(-0.5 * xi * xi);
        for (int k = 0; k < n; ++k) {
            const double next = std::sqrt(2.0 / (k + 1)) * xi * cur -
                                std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
            prev = cur;
            cur = next;
        }
        v[j] = scale * cur;
    }
    return checked(WaveFunction(grid, std::move(v)).normalized(),
                   fmt::format("Fock state {}", n));
}

WaveFunction coherent_state(double x0, double p0, const PhaseSpaceGrid& grid) {
    if (!std::isfinite(x0) || !std::isfinite(p0))
        throw ValidationError("coherent state centre must be finite");
    if (std::abs(x0) > 0.5 * grid.half_width())
        throw ValidationError("coherent state displacement |x0| exceeds L/2");
    if (std::abs(p0) > 0.5 * grid.p_max())
        throw ValidationError("coherent state momentum |p0| exceeds P/2");
    return WaveFunction(grid, displaced_ground(x0, p0, grid)).normalized();
}

WaveFunction cat_state(double separation, int parity, const PhaseSpaceGrid& grid) {
    if (!(separation >= 1.0)) throw ValidationError("cat separation d must be >= 1");
    if (parity != 1 && parity != -1) throw ValidationError("cat parity must be +1 or -1");
    if (0.5 * separation > 0.5 * grid.half_width())
        throw ValidationError("cat components exceed L/2");
    const double overlap = std::exp(-separation * separation / (4.0 * grid.hbar()));
    const double norm = 1.0 / std::sqrt(2.0 * (1.0 + parity * overlap));
    Eigen::VectorXcd v = norm * (displaced_ground(0.5 * separation, 0.0, grid) +
                                 static_cast<double>(parity) *
                                     displaced_ground(-0.5 * separation, 0.0, grid));
    WaveFunction psi = checked(WaveFunction(grid, std::move(v)), "cat state");
    if (!psi.is_normalized(1e-10))
        throw ValidationError(fmt::format("cat state does not fit inside the grid (norm^2 - 1 = {:.3g})",
                                          psi.norm_squared() - 1.0));
    return psi;
}

PhaseSpaceField box_field(double omega, BoxShape shape, const PhaseSpaceGrid& grid) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("box area must be positive");
    const int n = grid.nx();
    const double x_limit = 0.9 * grid.half_width();
    const double p_limit = 0.9 * grid.p_max();
    RealArray mask = RealArray::Zero(n, grid.np());

    if (shape == BoxShape::disk) {
        const double radius = std::sqrt(omega / pi);
        if (radius > x_limit || radius > p_limit)
            throw ValidationError("box region exceeds the grid");
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < grid.np(); ++k)
                if (grid.x(j) * grid.x(j) + grid.p(k) * grid.p(k) <= radius * radius)
                    mask(j, k) = 1.0;
    } else {
        // (2 mx + 1) x (2 mp + 1) samples; search mx near the square side for the
        // sample count whose area is closest to omega.
        const double side = std::sqrt(omega);
        if (0.5 * side > x_limit || 0.5 * side > p_limit)
            throw ValidationError("box region exceeds the grid");
        const int centre = static_cast<int>(std::lround(0.5 * side / grid.dx()));
        int best_mx = -1;
        int best_mp = -1;
        double best_error = std::numeric_limits<double>::infinity();
        for (int mx = std::max(0, centre - centre / 4 - 1); mx <= centre + centre / 4 + 1; ++mx) {
            const double width_x = (2 * mx + 1) * grid.dx();
            const int mp = static_cast<int>(
                std::lround(0.5 * (omega / (width_x * grid.dp()) - 1.0)));
            if (mp < 0) continue;
            const double area = width_x * (2 * mp + 1) * grid.dp();
            const double error = std::abs(area - omega);
            if (error < best_error) {
                best_error = error;
                best_mx = mx;
                best_mp = mp;
            }
        }
        if (best_mx < 0) throw ValidationError("box area too small for the grid");
        if (best_mx * grid.dx() > x_limit || best_mp * grid.dp() > p_limit)
            throw ValidationError("box region exceeds the grid");
        mask.block(n / 2 - best_mx, grid.np() / 2 - best_mp, 2 * best_mx + 1, 2 * best_mp + 1)
            .setOnes();
    }
    const double area = mask.sum() * grid.cell_area();
    if (area == 0.0) throw ValidationError("box region contains no grid samples");
    return {grid, mask / area, FieldKind::generic};
}

PhaseSpaceField exp_quadratic_field(double a, const PhaseSpaceGrid& grid) {
    if (!(a > 0.0)) throw ValidationError("exp_quadratic parameter a must be positive");
    RealArray values(grid.nx(), grid.np());
    for (int j = 0; j < grid.nx(); ++j)
        for (int k = 0; k < grid.np(); ++k)
            values(j, k) = std::exp(a * (grid.x(j) * grid.x(j) + grid.p(k) * grid.p(k)));
    return {grid, std::move(values), FieldKind::generic};
}

PhaseSpaceField gaussian_field(const GaussianFieldSpec& spec, const PhaseSpaceGrid& grid) {
    if (!(spec.sigma_x > 0.0) || !(spec.sigma_p > 0.0))
        throw ValidationError("gaussian_field widths must be positive");
    const double norm = 1.0 / (2.0 * pi * spec.sigma_x * spec.sigma_p);
    RealArray values(grid.nx(), grid.np());
    for (int j = 0; j < grid.nx(); ++j) {
        const double u = (grid.x(j) - spec.x0) / spec.sigma_x;
        for (int k = 0; k < grid.np(); ++k) {
            const double v = (grid.p(k) - spec.p0) / spec.sigma_p;
            values(j, k) = norm * std::exp(-0.5 * (u * u + v * v));
        }
    }
    return {grid, std::move(values), FieldKind::generic};
}

bool describes_wavefunction(const StateSpec& spec) {
    return std::holds_alternative<FockSpec>(spec) || std::holds_alternative<CoherentSpec>(spec) ||
           std::holds_alternative<CatSpec>(spec);
}

WaveFunction make_wavefunction(const StateSpec& spec, const PhaseSpaceGrid& grid) {
    if (const auto* s = std::get_if<FockSpec>(&spec)) return harmonic_eigenstate(s->n, grid);
    if (const auto* s = std::get_if<CoherentSpec>(&spec)) return coherent_state(s->x0, s->p0, grid);
    if (const auto* s = std::get_if<CatSpec>(&spec))
        return cat_state(s->separation, s->parity, grid);
    throw ValidationError("state '" + describe(spec) + "' is a phase-space field, not a wave function");
}

PhaseSpaceField make_field(const StateSpec& spec, const PhaseSpaceGrid& grid) {
    if (describes_wavefunction(spec)) return wigner_from_pure(make_wavefunction(spec, grid));
    if (const auto* s = std::get_if<BoxSpec>(&spec)) return box_field(s->omega, s->shape, grid);
    if (const auto* s = std::get_if<ExpQuadraticSpec>(&spec)) return exp_quadratic_field(s->a, grid);
    return gaussian_field(std::get<GaussianFieldSpec>(spec), grid);
}

std::string_view to_string(BoxShape shape) {
    return shape == BoxShape::square ? "square" : "disk";
}

std::string describe(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FockSpec>) {
                return fmt::format("fock:{}", s.n);
            } else if constexpr (std::is_same_v<T, CoherentSpec>) {
                return fmt::format("coherent:x0={},p0={}", s.x0, s.p0);
            } else if constexpr (std::is_same_v<T, CatSpec>) {
                return fmt::format("cat:d={},parity={}", s.separation, s.parity);
            } else if constexpr (std::is_same_v<T, BoxSpec>) {
                return fmt::format("box:omega={},shape={}", s.omega, to_string(s.shape));
            } else if constexpr (std::is_same_v<T, ExpQuadraticSpec>) {
                return fmt::format("exp_quadratic:a={}", s.a);
            } else {
                return fmt::format("gaussian_field:x0={},p0={},sigma_x={},sigma_p={}", s.x0, s.p0,
                                   s.sigma_x, s.sigma_p);
            }
        },
        spec);
}

namespace {

double parse_number(std::string_view key, std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ValidationError(fmt::format("state parameter '{}' is not a number: '{}'", key, text));
    return value;
}

int parse_int(std::string_view key, std::string_view text) {
    const double v = parse_number(key, text);
    if (v != std::floor(v)) throw ValidationError(fmt::format("state parameter '{}' must be an integer", key));
    return static_cast<int>(v);
}

class ParamList {
public:
    explicit ParamList(std::string_view kind, std::string_view body) : kind_(kind) {
        while (!body.empty()) {
            const auto comma = body.find(',');
            std::string_view item = body.substr(0, comma);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) {
                positional_.emplace_back(item);
            } else {
                values_[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
            }
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
    }

    std::optional<std::string> take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        std::string v = it->second;
        values_.erase(it);
        return v;
    }
    std::optional<std::string> take_positional() {
        if (positional_.empty()) return std::nullopt;
        std::string v = positional_.front();
        positional_.erase(positional_.begin());
        return v;
    }
    double number(const std::string& key, double fallback) {
        auto v = take(key);
        return v ? parse_number(key, *v) : fallback;
    }
    void finish() const {
        if (!positional_.empty())
            throw ValidationError(fmt::format("unexpected value '{}' in {} state", positional_.front(), kind_));
        if (!values_.empty())
            throw ValidationError(fmt::format("unknown parameter '{}' for {} state", values_.begin()->first, kind_));
    }

private:
    std::string kind_;
    std::vector<std::string> positional_;
    std::map<std::string, std::string> values_;
};

} // namespace

StateSpec parse_state(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    ParamList params(kind, colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));
    StateSpec spec;
    if (kind == "fock") {
        auto n = params.take_positional();
        if (!n) n = params.take("n");
        if (!n) throw ValidationError("fock state needs a level, e.g. fock:0");
        spec = FockSpec{parse_int("n", *n)};
    } else if (kind == "coherent") {
        spec = CoherentSpec{params.number("x0", 0.0), params.number("p0", 0.0)};
    } else if (kind == "cat") {
        auto d = params.take("d");
        if (!d) throw ValidationError("cat state needs d=<separation>");
        auto parity = params.take("parity");
        spec = CatSpec{parse_number("d", *d), parity ? parse_int("parity", *parity) : 1};
    } else if (kind == "box") {
        auto omega = params.take("omega");
        if (!omega) throw ValidationError("box state needs omega=<area>");
        BoxShape shape = BoxShape::square;
        if (auto s = params.take("shape")) {
            if (*s == "square") shape = BoxShape::square;
            else if (*s == "disk") shape = BoxShape::disk;
            else throw ValidationError("box shape must be square or disk");
        }
        spec = BoxSpec{parse_number("omega", *omega), shape};
    } else if (kind == "exp_quadratic") {
        auto a = params.take("a");
        if (!a) a = params.take_positional();
        if (!a) throw ValidationError("exp_quadratic state needs a=<value>");
        spec = ExpQuadraticSpec{parse_number("a", *a)};
    } else if (kind == "gaussian_field") {
        GaussianFieldSpec g;
        g.x0 = params.number("x0", 0.0);
        g.p0 = params.number("p0", 0.0);
        const double sigma = params.number("sigma", 1.0);
        g.sigma_x = params.number("sigma_x", sigma);
        g.sigma_p = params.number("sigma_p", sigma);
        spec = g;
    } else {
        throw ValidationError(fmt::format("unknown state kind '{}'", kind));
    }
    params.finish();
    return spec;
}

} // namespace pslab
