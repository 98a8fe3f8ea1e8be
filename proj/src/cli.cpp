#include "pslab/cli.hpp"

#include "pslab/entropy.hpp"
#include "pslab/errors.hpp"
#include "pslab/weyl.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <optional>
#include <ostream>

namespace pslab {
namespace {

void emit_text(const OutputSpec& output, const std::string& text, std::ostream& out) {
    if (output.path == "-") {
        out << text;
    } else {
        write_text(output.path, text);
    }
}

void emit_field(const OutputSpec& output, const PhaseSpaceField& field, std::ostream& out) {
    if (output.path != "-") {
        export_field(field, output.format, output.path);
        return;
    }
    if (output.format == FieldFormat::csv) {
        write_field_csv(out, field.grid(),
                        std::span<const double>(field.values().data(), field.values().size()));
    } else {
        out << field_to_json(field).dump() << '\n';
    }
}

void emit_json(const OutputSpec& output, const Json& j, std::ostream& out) {
    if (output.format != FieldFormat::json)
        throw ValidationError("\"format\": this operation only writes JSON");
    emit_text(output, j.dump(2) + "\n", out);
}

template <class F>
Json optional_value(F&& compute) {
    try {
        return compute();
    } catch (const NumericalGuardError& e) {
        return nullptr;
    }
}

Json entropy_json(const Scenario& s) {
    const PhaseSpaceGrid& grid = s.grid;
    const HusimiParameter kappa(s.operation.kappa);
    const bool all_pure = std::all_of(s.states.begin(), s.states.end(), describes_wavefunction);
    Json states = Json::array();
    for (const StateSpec& spec : s.states) states.push_back(to_json(spec));

    if (!all_pure) {
        if (s.states.size() != 1) throw ValidationError("\"state\": mixtures need wave-function states");
        const PhaseSpaceField field = make_field(s.states.front(), grid);
        const DensityOperatorKernel rho = inverse_weyl(field);
        return {{"states", std::move(states)},
                {"grid", to_json(grid)},
                {"s2_wigner", s2_wigner(field)},
                {"s2_operator", s2_operator(rho)},
                {"von_neumann", optional_value([&] { return Json(von_neumann_entropy(rho)); })},
                {"wehrl", optional_value([&] {
                     return Json(wehrl_entropy(gaussian_smooth(field, kappa.kernel(grid.hbar()))
                                                   .with_kind(FieldKind::husimi)));
                 })},
                {"kappa", kappa.kappa()}};
    }

    std::vector<DensityOperatorKernel> kernels;
    for (const StateSpec& spec : s.states) kernels.push_back(density_from_pure(make_wavefunction(spec, grid)));
    std::vector<double> weights = s.operation.weights;
    if (weights.empty()) weights.assign(kernels.size(), 1.0 / static_cast<double>(kernels.size()));
    const DensityOperatorKernel rho = mix(kernels, weights);
    const PhaseSpaceField w = wigner_from_density(rho);
    return {{"states", std::move(states)},
            {"weights", weights},
            {"grid", to_json(grid)},
            {"purity", purity_integral(w)},
            {"s2_wigner", s2_wigner(w)},
            {"s2_operator", s2_operator(rho)},
            {"von_neumann", von_neumann_entropy(rho)},
            {"wehrl", wehrl_entropy(husimi_from_density(rho, kappa))},
            {"kappa", kappa.kappa()}};
}

std::vector<ClaimId> claim_selection(const std::vector<std::string>& ids) {
    if (ids.empty()) throw ValidationError("\"id\": choose claims with --id or --all");
    std::vector<ClaimId> out;
    for (const std::string& id : ids) {
        if (id == "all") return all_claims();
        out.push_back(parse_claim_id(id));
    }
    return out;
}

} // namespace

void execute_scenario(const Scenario& s, std::ostream& out) {
    const Operation& op = s.operation;
    const PhaseSpaceGrid& grid = s.grid;
    if (op.name == "wigner") {
        const StateSpec& spec = s.states.front();
        if (!describes_wavefunction(spec))
            throw ValidationError(fmt::format("\"state\": '{}' is not a wave function", describe(spec)));
        emit_field(s.output, wigner_from_pure(make_wavefunction(spec, grid)), out);
    } else if (op.name == "husimi") {
        const StateSpec& spec = s.states.front();
        const HusimiParameter kappa(op.kappa);
        if (describes_wavefunction(spec)) {
            emit_field(s.output, husimi_from_state(make_wavefunction(spec, grid), kappa), out);
        } else {
            emit_field(s.output, gaussian_smooth(make_field(spec, grid), kappa.kernel(grid.hbar())), out);
        }
    } else if (op.name == "smooth") {
        const SmoothingKernel kernel(op.sigma_x, op.sigma_p);
        emit_field(s.output, gaussian_smooth(make_field(s.states.front(), grid), kernel), out);
    } else if (op.name == "entropy") {
        emit_json(s.output, entropy_json(s), out);
    } else if (op.name == "admissibility") {
        const StateSpec& spec = s.states.front();
        Json j = to_json(admissibility_report(make_field(spec, grid)));
        j["state"] = to_json(spec);
        j["grid"] = to_json(grid);
        emit_json(s.output, j, out);
    } else if (op.name == "probe") {
        const SmoothingKernel kernel(op.sigma_x, op.sigma_p);
        emit_json(s.output, to_json(divergence_probe(op.a, kernel, op.cutoffs)), out);
    } else if (op.name == "claims") {
        const std::vector<ClaimId> ids = claim_selection(op.claim_ids);
        const std::vector<ClaimReport> reports = run_claims(ids, grid);
        if (reports.size() == 1) {
            emit_json(s.output, to_json(reports.front()), out);
        } else {
            Json all = Json::array();
            for (const ClaimReport& r : reports) all.push_back(to_json(r));
            emit_json(s.output, all, out);
        }
    } else {
        throw ValidationError(fmt::format("\"name\": unknown operation '{}'", op.name));
    }
}

namespace {

struct GridFlags {
    double hbar = kDefaultHbar;
    double half_width = kDefaultHalfWidth;
    int nx = 0;

    void attach(CLI::App* app) {
        app->add_option("--hbar", hbar, "Reduced Planck constant")->capture_default_str();
        app->add_option("--L", half_width, "Half-width of the position axis")->capture_default_str();
        app->add_option("--Nx", nx, "Samples per axis (even, >= 8; default 256 or PSLAB_GRID_NX)");
    }

    PhaseSpaceGrid grid() const {
        const int n = nx == 0 ? default_nx() : nx;
        if (n < 8 || n % 2 != 0) throw ValidationError(fmt::format("--Nx must be even and >= 8, got {}", n));
        return build_grid(hbar, half_width, n);
    }
};

struct Options {
    GridFlags grid;
    std::vector<std::string> states;
    std::vector<double> weights;
    double kappa = 1.0;
    std::optional<double> sigma;
    std::optional<double> sigma_x;
    std::optional<double> sigma_p;
    double a = 0.0;
    std::vector<double> cutoffs{2, 3, 4, 5, 6, 7, 8};
    std::vector<std::string> ids;
    bool all = false;
    std::string out_path = "-";
    std::string format;
    std::string scenario_path;
};

Scenario scenario_from_options(const std::string& name, const Options& o) {
    Scenario s;
    s.grid = o.grid.grid();
    s.operation.name = name;
    if (!(o.kappa > 0.0)) throw ValidationError("--kappa must be positive");
    s.operation.kappa = o.kappa;
    s.operation.sigma_x = o.sigma_x.value_or(o.sigma.value_or(1.0));
    s.operation.sigma_p = o.sigma_p.value_or(o.sigma.value_or(1.0));
    if (!(s.operation.sigma_x > 0.0) || !(s.operation.sigma_p > 0.0))
        throw ValidationError("--sigma must be positive");
    s.operation.a = o.a;
    s.operation.cutoffs = o.cutoffs;
    s.operation.claim_ids = o.all ? std::vector<std::string>{"all"} : o.ids;
    s.operation.weights = o.weights;
    for (const std::string& text : o.states) s.states.push_back(parse_state(text));
    if (!s.operation.weights.empty() && s.operation.weights.size() != s.states.size())
        throw ValidationError("--weights needs one entry per --state");
    s.output.path = o.out_path;
    s.output.format = o.format.empty() ? field_format_for_path(o.out_path) : field_format_from_string(o.format);
    return s;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical phase-space laboratory: Wigner and Husimi functions, entropies, "
                 "inverse Weyl admissibility and the claims suite.",
                 "pslab"};
    app.require_subcommand(1);
    Options o;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out,-o", o.out_path, "Output path ('-' for stdout)")->capture_default_str();
        sub->add_option("--format", o.format, "csv or json (default: from the --out extension)")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_state = [&](CLI::App* sub) {
        sub->add_option("--state,-s", o.states, "State, e.g. fock:0, coherent:x0=2,p0=0, cat:d=6,parity=-1")
            ->required()
            ->expected(1);
    };

    CLI::App* wigner = app.add_subcommand("wigner", "Wigner function of a pure state");
    add_state(wigner);
    CLI::App* husimi = app.add_subcommand("husimi", "Husimi function (minimal-uncertainty smoothing)");
    add_state(husimi);
    husimi->add_option("--kappa", o.kappa, "Squeezing ratio of the kernel")->capture_default_str();
    CLI::App* entropy = app.add_subcommand("entropy", "S2, von Neumann and Wehrl entropies");
    entropy->add_option("--state,-s", o.states, "State (repeat for an equal or weighted mixture)")
        ->required()
        ->take_all();
    entropy->add_option("--weights", o.weights, "Mixture weights, one per state");
    entropy->add_option("--kappa", o.kappa, "Husimi squeezing ratio for the Wehrl entropy")->capture_default_str();
    CLI::App* admissibility = app.add_subcommand("admissibility", "Inverse-Weyl spectrum and verdict");
    add_state(admissibility);
    CLI::App* smooth = app.add_subcommand("smooth", "Gaussian smoothing of a phase-space field");
    add_state(smooth);
    smooth->add_option("--sigma", o.sigma, "Kernel width in both directions");
    smooth->add_option("--sigma-x", o.sigma_x, "Kernel width in x");
    smooth->add_option("--sigma-p", o.sigma_p, "Kernel width in p");
    CLI::App* probe = app.add_subcommand("probe", "Truncated smoothing integrals of exp(a(x^2+p^2))");
    probe->add_option("--a", o.a, "Growth rate a > 0")->required();
    probe->add_option("--sigma", o.sigma, "Kernel width");
    probe->add_option("--cutoffs", o.cutoffs, "Increasing cutoff radii")->capture_default_str();
    CLI::App* claims = app.add_subcommand("claims", "Run the claims suite");
    auto* id_opt = claims->add_option("--id", o.ids, "Claim id C1..C6 (repeatable)");
    claims->add_flag("--all", o.all, "Run every claim")->excludes(id_opt);
    CLI::App* run = app.add_subcommand("run", "Execute a JSON scenario file");
    run->add_option("scenario", o.scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);

    for (CLI::App* sub : {wigner, husimi, entropy, admissibility, smooth, probe, claims}) {
        o.grid.attach(sub);
        add_output(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        const Scenario scenario =
            chosen == run ? load_scenario(o.scenario_path) : scenario_from_options(chosen->get_name(), o);
        execute_scenario(scenario, out);
        out.flush();
        return 0;
    } catch (const DivergenceSuspected& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalGuardError& e) {
        err << "error: NumericalGuardError: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace pslab
