// Acceptance suite on the default grid (hbar = 1, L = 8, Nx = 256).
// Prints one PASS/FAIL line per criterion; exit status is the number of failures.

#include "pslab/admissibility.hpp"
#include "pslab/claims.hpp"
#include "pslab/entropy.hpp"
#include "pslab/io.hpp"
#include "pslab/statelib.hpp"
#include "pslab/weyl.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace pslab;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

const PhaseSpaceGrid& grid() {
    static const PhaseSpaceGrid g = build_grid(kDefaultHbar, kDefaultHalfWidth, kDefaultNx);
    return g;
}

DensityOperatorKernel fock_mixture(int count) {
    std::vector<DensityOperatorKernel> states;
    for (int n = 0; n < count; ++n) states.push_back(density_from_pure(harmonic_eigenstate(n, grid())));
    const std::vector<double> w(static_cast<std::size_t>(count), 1.0 / count);
    return mix(states, w);
}

/// |psi~(p)|^2 by direct summation of (2 pi hbar)^{-1/2} int psi(x) e^{-ipx/hbar} dx.
std::vector<double> momentum_density(const WaveFunction& psi) {
    const PhaseSpaceGrid& g = grid();
    std::vector<double> out(static_cast<std::size_t>(g.np()));
    for (int k = 0; k < g.np(); ++k) {
        std::complex<double> s = 0.0;
        for (int j = 0; j < g.nx(); ++j) s += psi[j] * std::polar(1.0, -g.p(k) * g.x(j) / g.hbar());
        s *= g.dx() / std::sqrt(2.0 * pi * g.hbar());
        out[static_cast<std::size_t>(k)] = std::norm(s);
    }
    return out;
}

Outcome pure_state_purity() {
    Outcome o;
    const std::vector<StateSpec> specs{FockSpec{0}, FockSpec{1}, FockSpec{5}, CoherentSpec{2, 0}, CatSpec{6, -1}};
    double worst = 0.0;
    for (const StateSpec& s : specs) {
        const PhaseSpaceField w = make_field(s, grid());
        const double p = purity_integral(w);
        const double s2 = s2_wigner(w);
        worst = std::max({worst, std::abs(p - 1.0), std::abs(s2)});
        o.require(std::abs(p - 1.0) <= 1e-6, fmt::format("purity[{}] = {:.17g}", describe(s), p));
        o.require(std::abs(s2) <= 1e-6, fmt::format("s2[{}] = {:.17g}", describe(s), s2));
    }
    if (o.pass) o.detail = fmt::format("max |purity - 1|, |S2| = {:.3g} (tol 1e-6)", worst);
    return o;
}

Outcome picture_equivalence() {
    Outcome o;
    double worst = 0.0;
    for (const StateSpec& s : pure_fixtures()) {
        const DensityOperatorKernel rho = density_from_pure(make_wavefunction(s, grid()));
        const double gap = std::abs(s2_operator(rho) - s2_wigner(wigner_from_density(rho)));
        worst = std::max(worst, gap);
        o.require(gap <= 1e-6, fmt::format("gap[{}] = {:.3g}", describe(s), gap));
    }
    for (auto [count, target] : {std::pair{2, 0.5}, std::pair{4, 0.75}}) {
        const DensityOperatorKernel rho = fock_mixture(count);
        const double op = s2_operator(rho);
        const double wg = s2_wigner(wigner_from_density(rho));
        worst = std::max(worst, std::abs(op - wg));
        o.require(std::abs(op - wg) <= 1e-6, fmt::format("mixture{} gap {:.3g}", count, std::abs(op - wg)));
        o.require(std::abs(op - target) <= 1e-6 && std::abs(wg - target) <= 1e-6,
                  fmt::format("mixture{} S2 = {:.17g} / {:.17g}, expected {}", count, op, wg, target));
    }
    if (o.pass) o.detail = fmt::format("max picture gap {:.3g}; mixtures at 0.5 and 0.75 (tol 1e-6)", worst);
    return o;
}

Outcome marginal_densities() {
    Outcome o;
    const PhaseSpaceGrid& g = grid();
    double worst = 0.0;
    for (const StateSpec& s : pure_fixtures()) {
        const WaveFunction psi = make_wavefunction(s, g);
        const Marginals m = marginals(wigner_from_pure(psi));
        const std::vector<double> pd = momentum_density(psi);
        double dev = 0.0;
        for (int j = 0; j < g.nx(); ++j) dev = std::max(dev, std::abs(m.position[j] - std::norm(psi[j])));
        for (int k = 0; k < g.np(); ++k) dev = std::max(dev, std::abs(m.momentum[k] - pd[static_cast<std::size_t>(k)]));
        worst = std::max(worst, dev);
        o.require(dev <= 1e-6, fmt::format("marginal deviation[{}] = {:.3g}", describe(s), dev));
    }
    const WaveFunction psi0 = harmonic_eigenstate(0, g);
    const Marginals q = marginals(husimi_from_state(psi0));
    const double husimi_gap = std::abs(q.position[g.nx() / 2] - std::norm(psi0[g.nx() / 2]));
    o.require(husimi_gap > 1e-2, fmt::format("Husimi marginal gap at origin only {:.3g}", husimi_gap));
    if (o.pass)
        o.detail = fmt::format("max Wigner marginal deviation {:.3g} (tol 1e-6); Husimi gap at origin {:.4f} (> 1e-2)",
                               worst, husimi_gap);
    return o;
}

Outcome compact_support() {
    Outcome o;
    double least_negative = -1e300;
    for (BoxShape shape : {BoxShape::square, BoxShape::disk}) {
        for (double omega : {2.0, 2.0 * pi, 8.0 * pi}) {
            const AdmissibilityReport r = admissibility_report(box_field(omega, shape, grid()));
            least_negative = std::max(least_negative, r.min_eigenvalue);
            o.require(r.min_eigenvalue < -1e-4, fmt::format("box {} omega={:.4g}: min eigenvalue {:.3g}",
                                                            to_string(shape), omega, r.min_eigenvalue));
        }
    }
    const ClaimReport c2 = run_claim(ClaimId::C2, grid());
    o.require(c2.verdict == ClaimVerdict::confirmed, fmt::format("C2 verdict {}", to_string(c2.verdict)));
    if (o.pass) o.detail = fmt::format("largest min eigenvalue {:.3g} (< -1e-4); C2 confirmed", least_negative);
    return o;
}

Outcome parity_condition() {
    Outcome o;
    const PhaseSpaceGrid& g = grid();
    const SmoothingKernel k(1.0, 1.0);
    const PhaseSpaceField constant(g, RealArray::Ones(g.nx(), g.np()), FieldKind::generic);
    const PhaseSpaceField centred = gaussian_field({0, 0, 1, 1}, g);
    const PhaseSpaceField off_centre = gaussian_field({1, 1, 1, 1}, g);
    double worst_even = 0.0;
    for (const StateSpec& s : std::vector<StateSpec>{FockSpec{0}, FockSpec{1}, FockSpec{2}, CatSpec{6, 1}, CatSpec{6, -1}}) {
        const PhaseSpaceField w = make_field(s, g);
        for (const PhaseSpaceField* f : {&constant, &centred, &off_centre}) {
            const double r = convolution_chain_residual(w, *f, k).residual;
            worst_even = std::max(worst_even, r);
            o.require(r <= 1e-8, fmt::format("even {} residual {:.3g}", describe(s), r));
        }
    }
    const double odd = convolution_chain_residual(make_field(CoherentSpec{2, 0}, g), off_centre, k).residual;
    o.require(odd > 1e-3, fmt::format("coherent(2,0) off-centre residual only {:.3g}", odd));
    if (o.pass)
        o.detail = fmt::format("even fixtures max residual {:.3g} (<= 1e-8); coherent(2,0) residual {:.4f} (> 1e-3)",
                               worst_even, odd);
    return o;
}

Outcome divergence_counterexample() {
    Outcome o;
    const SmoothingKernel k(1.0, 1.0);
    const std::vector<double> cutoffs{2, 3, 4, 5, 6, 7, 8};
    o.require(k.divergence_threshold() == 0.5, "a0 != 0.5");
    const DivergenceReport conv = divergence_probe(0.25, k, cutoffs);
    const double limit = 1.0 / (1.0 - 2.0 * 0.25);
    const double gap = std::abs(conv.integrals.back() - limit);
    o.require(conv.classification == GrowthClass::convergent,
              fmt::format("a=0.25 classified {}", to_string(conv.classification)));
    o.require(gap <= 1e-4, fmt::format("a=0.25 |I(8) - limit| = {:.3g}", gap));
    for (double a : {0.5, 1.0}) {
        const DivergenceReport div = divergence_probe(a, k, cutoffs);
        o.require(div.classification == GrowthClass::divergent,
                  fmt::format("a={} classified {}", a, to_string(div.classification)));
        for (std::size_t i = 1; i < div.integrals.size(); ++i)
            o.require(div.integrals[i] > div.integrals[i - 1], fmt::format("a={} not monotone at R={}", a, cutoffs[i]));
    }
    if (o.pass) o.detail = fmt::format("a=0.25 convergent, |I(8) - 2| = {:.3g}; a=0.5, 1.0 divergent and monotone", gap);
    return o;
}

Outcome husimi_and_wehrl() {
    Outcome o;
    const PhaseSpaceGrid& g = grid();
    double min_q = 1e300;
    double coherent_value = 0.0;
    double smallest_other = 1e300;
    for (const StateSpec& s : pure_fixtures()) {
        const PhaseSpaceField q = husimi_from_state(make_wavefunction(s, g));
        min_q = std::min(min_q, q.min());
        const double w = wehrl_entropy(q);
        if (std::holds_alternative<CoherentSpec>(s)) {
            coherent_value = w;
        } else if (s != StateSpec{FockSpec{0}}) {
            smallest_other = std::min(smallest_other, w);
        }
    }
    o.require(min_q >= -1e-12, fmt::format("Husimi minimum {:.3g}", min_q));
    const double w0 = wehrl_entropy(husimi_from_state(harmonic_eigenstate(0, g)));
    const double expected = 1.0 + std::log(2.0 * pi);
    o.require(std::abs(w0 - expected) <= 1e-4, fmt::format("Wehrl(psi0) = {:.17g}", w0));
    double worst_shift = 0.0;
    for (auto [x0, p0] : {std::pair{2.0, 0.0}, std::pair{0.0, 3.0}, std::pair{-1.5, 2.5}}) {
        const double w = wehrl_entropy(husimi_from_state(coherent_state(x0, p0, g)));
        worst_shift = std::max(worst_shift, std::abs(w - w0));
    }
    o.require(worst_shift <= 1e-6, fmt::format("coherent Wehrl varies by {:.3g}", worst_shift));
    o.require(smallest_other > coherent_value, fmt::format("non-coherent Wehrl {:.6f} <= coherent {:.6f}", smallest_other, coherent_value));
    if (o.pass)
        o.detail = fmt::format("min Q {:.3g}; Wehrl(psi0) - (1 + ln 2pi) = {:.3g}; displacement spread {:.3g}; "
                               "next smallest fixture {:.6f} > {:.6f}",
                               min_q, w0 - expected, worst_shift, smallest_other, coherent_value);
    return o;
}

Outcome von_neumann_values() {
    Outcome o;
    double worst_pure = 0.0;
    for (const StateSpec& s : pure_fixtures()) {
        const double v = von_neumann_entropy(density_from_pure(make_wavefunction(s, grid())));
        worst_pure = std::max(worst_pure, std::abs(v));
        o.require(std::abs(v) <= 1e-8, fmt::format("S[{}] = {:.3g}", describe(s), v));
    }
    const double two = von_neumann_entropy(fock_mixture(2));
    const double four = von_neumann_entropy(fock_mixture(4));
    o.require(std::abs(two - std::log(2.0)) <= 1e-6, fmt::format("S(1/2,1/2) = {:.17g}", two));
    o.require(std::abs(four - std::log(4.0)) <= 1e-6, fmt::format("S(1/4 x 4) = {:.17g}", four));
    if (o.pass)
        o.detail = fmt::format("pure max |S| {:.3g}; ln 2 gap {:.3g}; ln 4 gap {:.3g}", worst_pure,
                               two - std::log(2.0), four - std::log(4.0));
    return o;
}

bool schema_valid(const Json& report, std::string& message) {
    const std::filesystem::path doc = std::filesystem::temp_directory_path() / "pslab_acceptance_c3.json";
    std::ofstream(doc) << report.dump(2);
    const std::string cmd = fmt::format("\"{}\" \"{}/tests/validate_schema.py\" \"{}/docs/claim_report.schema.json\" \"{}\"",
                                        PSLAB_PYTHON, PSLAB_SOURCE_DIR, PSLAB_SOURCE_DIR, doc.string());
    const int status = std::system(cmd.c_str());
    if (status != 0) message = fmt::format("schema validation exited with status {}", status);
    return status == 0;
}

Outcome contested_smoothing_claim() {
    Outcome o;
    const ClaimReport a = run_claim(ClaimId::C3, grid());
    const ClaimReport b = run_claim(ClaimId::C3, grid());
    o.require(a.verdict == ClaimVerdict::measured_only, fmt::format("verdict {}", to_string(a.verdict)));
    const std::vector<std::string> expected{describe(FockSpec{0}), describe(FockSpec{1}), describe(CatSpec{6, -1})};
    o.require(a.spectra.size() == expected.size(), fmt::format("{} spectra", a.spectra.size()));
    std::string verdicts;
    for (std::size_t i = 0; i < std::min(a.spectra.size(), expected.size()); ++i) {
        o.require(a.spectra[i].fixture == expected[i], "fixture order " + a.spectra[i].fixture);
        o.require(a.spectra[i].eigenvalues.size() == static_cast<std::size_t>(grid().nx() / 2),
                  fmt::format("{}: {} eigenvalues", a.spectra[i].fixture, a.spectra[i].eigenvalues.size()));
        verdicts += (verdicts.empty() ? "" : ", ") + a.spectra[i].fixture + " " + a.spectra[i].verdict;
    }
    const Json ja = to_json(a);
    o.require(ja.dump() == to_json(b).dump(), "reports differ between runs");
    std::string message;
    o.require(schema_valid(ja, message), message);
    if (o.pass) o.detail = "measured_only, full spectra, schema-valid, deterministic; measured: " + verdicts;
    return o;
}

Outcome smoothing_monotonicity() {
    Outcome o;
    const PhaseSpaceGrid& g = grid();
    double smallest_increase = 1e300;
    for (const StateSpec& s : pure_fixtures()) {
        const PhaseSpaceField w = make_field(s, g);
        const double before = s2_wigner(w);
        const double after = s2_wigner(gaussian_smooth(w, SmoothingKernel::minimal_uncertainty(g.hbar())).with_kind(FieldKind::generic));
        smallest_increase = std::min(smallest_increase, after - before);
        o.require(after - before >= 0.2, fmt::format("{}: S2 increase {:.6f}", describe(s), after - before));
    }
    const ClaimReport c6 = run_claim(ClaimId::C6, g);
    o.require(c6.notes.find(kRepresentationSwitchCaveat) != std::string::npos, "caveat missing from C6 notes");
    o.require(c6.verdict == ClaimVerdict::confirmed, fmt::format("C6 verdict {}", to_string(c6.verdict)));
    if (o.pass) o.detail = fmt::format("smallest S2 increase {:.6f} (>= 0.2); caveat present", smallest_increase);
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"pure-state purity", pure_state_purity},
        {"picture equivalence", picture_equivalence},
        {"marginals", marginal_densities},
        {"compact-support inadmissibility", compact_support},
        {"parity iff-condition", parity_condition},
        {"divergence counterexample", divergence_counterexample},
        {"Husimi positivity and Wehrl values", husimi_and_wehrl},
        {"von Neumann entropies", von_neumann_values},
        {"smoothed-state admissibility report (C3)", contested_smoothing_claim},
        {"smoothing monotonicity (C6)", smoothing_monotonicity},
    };
    fmt::print("grid: hbar={} L={} Nx={}\n", grid().hbar(), grid().half_width(), grid().nx());
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += o.pass ? 0 : 1;
        fmt::print("{} {:2d} {}: {} [{:.2f}s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail, seconds);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures;
}
