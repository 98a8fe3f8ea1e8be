#include "pslab/io.hpp"

#include "pslab/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

namespace pslab {
namespace {

void reject_unknown_keys(const Json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ValidationError(fmt::format("{}: expected a JSON object", where));
    for (const auto& item : j.items()) {
        bool known = false;
        for (std::string_view a : allowed) known = known || item.key() == a;
        if (!known) throw ValidationError(fmt::format("{}: unknown key \"{}\"", where, item.key()));
    }
}

double number(const Json& j, std::string_view key, double fallback) {
    const auto it = j.find(std::string(key));
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw ValidationError(fmt::format("\"{}\" must be a number", key));
    return it->get<double>();
}

double required_number(const Json& j, std::string_view key) {
    if (!j.contains(std::string(key))) throw ValidationError(fmt::format("missing required key \"{}\"", key));
    return number(j, key, 0.0);
}

int integer(const Json& j, std::string_view key, int fallback) {
    const auto it = j.find(std::string(key));
    if (it == j.end()) return fallback;
    if (!it->is_number_integer()) throw ValidationError(fmt::format("\"{}\" must be an integer", key));
    return it->get<int>();
}

std::string string_value(const Json& j, std::string_view key, std::string fallback) {
    const auto it = j.find(std::string(key));
    if (it == j.end()) return fallback;
    if (!it->is_string()) throw ValidationError(fmt::format("\"{}\" must be a string", key));
    return it->get<std::string>();
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

} // namespace

FieldFormat field_format_from_string(std::string_view name) {
    if (name == "csv") return FieldFormat::csv;
    if (name == "json") return FieldFormat::json;
    throw ValidationError(fmt::format("\"format\" must be csv or json, got '{}'", name));
}

FieldFormat field_format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? FieldFormat::csv : FieldFormat::json;
}

Json to_json(const PhaseSpaceGrid& grid) {
    return {{"hbar", grid.hbar()}, {"L", grid.half_width()}, {"Nx", grid.nx()}, {"Np", grid.np()},
            {"dx", grid.dx()},     {"dp", grid.dp()},        {"P", grid.p_max()}};
}

PhaseSpaceGrid grid_from_json(const Json& j) {
    reject_unknown_keys(j, "grid", {"hbar", "L", "Nx", "Np", "dx", "dp", "P"});
    const double hbar = number(j, "hbar", kDefaultHbar);
    const double half_width = number(j, "L", kDefaultHalfWidth);
    const int nx = integer(j, "Nx", default_nx());
    if (!(hbar > 0.0)) throw ValidationError("\"hbar\" must be positive");
    if (!(half_width > 0.0)) throw ValidationError("\"L\" must be positive");
    if (nx < 8 || nx % 2 != 0) throw ValidationError(fmt::format("\"Nx\" must be even and >= 8, got {}", nx));
    if (j.contains("Np") && integer(j, "Np", nx) != nx) throw ValidationError("\"Np\" must equal Nx");
    return build_grid(hbar, half_width, nx);
}

Json to_json(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FockSpec>) {
                return {{"kind", "fock"}, {"n", s.n}};
            } else if constexpr (std::is_same_v<T, CoherentSpec>) {
                return {{"kind", "coherent"}, {"x0", s.x0}, {"p0", s.p0}};
            } else if constexpr (std::is_same_v<T, CatSpec>) {
                return {{"kind", "cat"}, {"d", s.separation}, {"parity", s.parity}};
            } else if constexpr (std::is_same_v<T, BoxSpec>) {
                return {{"kind", "box"}, {"omega", s.omega}, {"shape", std::string(to_string(s.shape))}};
            } else if constexpr (std::is_same_v<T, ExpQuadraticSpec>) {
                return {{"kind", "exp_quadratic"}, {"a", s.a}};
            } else {
                return {{"kind", "gaussian_field"}, {"x0", s.x0},           {"p0", s.p0},
                        {"sigma_x", s.sigma_x},     {"sigma_p", s.sigma_p}};
            }
        },
        spec);
}

StateSpec state_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("state: expected a JSON object");
    const std::string kind = string_value(j, "kind", "");
    if (kind == "fock") {
        reject_unknown_keys(j, "state", {"kind", "n"});
        if (!j.contains("n")) throw ValidationError("missing required key \"n\"");
        return FockSpec{integer(j, "n", 0)};
    }
    if (kind == "coherent") {
        reject_unknown_keys(j, "state", {"kind", "x0", "p0"});
        return CoherentSpec{number(j, "x0", 0.0), number(j, "p0", 0.0)};
    }
    if (kind == "cat") {
        reject_unknown_keys(j, "state", {"kind", "d", "parity"});
        return CatSpec{required_number(j, "d"), integer(j, "parity", 1)};
    }
    if (kind == "box") {
        reject_unknown_keys(j, "state", {"kind", "omega", "shape"});
        const std::string shape = string_value(j, "shape", "square");
        if (shape != "square" && shape != "disk") throw ValidationError("\"shape\" must be square or disk");
        return BoxSpec{required_number(j, "omega"), shape == "disk" ? BoxShape::disk : BoxShape::square};
    }
    if (kind == "exp_quadratic") {
        reject_unknown_keys(j, "state", {"kind", "a"});
        return ExpQuadraticSpec{required_number(j, "a")};
    }
    if (kind == "gaussian_field") {
        reject_unknown_keys(j, "state", {"kind", "x0", "p0", "sigma_x", "sigma_p"});
        return GaussianFieldSpec{number(j, "x0", 0.0), number(j, "p0", 0.0), number(j, "sigma_x", 1.0),
                                 number(j, "sigma_p", 1.0)};
    }
    throw ValidationError(fmt::format("\"kind\": unknown state kind '{}'", kind));
}

Json to_json(const AdmissibilityReport& report) {
    Json spectrum = Json::array();
    for (double v : report.spectrum) spectrum.push_back(v);
    return {{"trace", report.trace},
            {"hermiticity_residual", report.hermiticity_residual},
            {"min_eigenvalue", report.min_eigenvalue},
            {"purity", report.purity},
            {"negative_mass", report.negative_mass},
            {"marginals_nonneg", report.marginals_nonneg},
            {"verdict", std::string(to_string(report.verdict))},
            {"tolerances", {{"eigenvalue", report.tolerances.eigenvalue}, {"trace", report.tolerances.trace}}},
            {"spectrum", std::move(spectrum)}};
}

Json to_json(const DivergenceReport& report) {
    return {{"a", report.a},
            {"sigma_x", report.sigma_x},
            {"sigma_p", report.sigma_p},
            {"threshold", report.threshold},
            {"cutoffs", report.cutoffs},
            {"integrals", report.integrals},
            {"tail_estimate", nullable(report.tail_estimate)},
            {"convergence_tolerance", kConvergenceTol},
            {"classification", std::string(to_string(report.classification))}};
}

Json to_json(const ClaimReport& report) {
    Json fixtures = Json::array();
    for (const StateSpec& s : report.fixtures) fixtures.push_back(to_json(s));
    Json measurements = Json::array();
    for (const Measurement& m : report.measurements) {
        measurements.push_back({{"name", m.name},
                                {"value", nullable(m.value)},
                                {"tolerance", m.tolerance},
                                {"criterion", m.criterion},
                                {"passed", m.passed ? Json(*m.passed) : Json(nullptr)}});
    }
    Json spectra = Json::array();
    for (const SpectrumRecord& s : report.spectra)
        spectra.push_back({{"fixture", s.fixture}, {"verdict", s.verdict}, {"eigenvalues", s.eigenvalues}});
    return {{"claim_id", std::string(to_string(report.id))},
            {"description", report.description},
            {"verdict", std::string(to_string(report.verdict))},
            {"grid", to_json(report.grid)},
            {"fixtures", std::move(fixtures)},
            {"measurements", std::move(measurements)},
            {"spectra", std::move(spectra)},
            {"notes", report.notes}};
}

Json field_to_json(const PhaseSpaceField& field) {
    Json values = Json::array();
    for (int j = 0; j < field.grid().nx(); ++j)
        for (int k = 0; k < field.grid().np(); ++k) values.push_back(field(j, k));
    return {{"kind", std::string(to_string(field.kind()))},
            {"grid", to_json(field.grid())},
            {"layout", "row-major, x outer, p inner"},
            {"values", std::move(values)}};
}

PhaseSpaceField field_from_json(const Json& j) {
    reject_unknown_keys(j, "field", {"kind", "grid", "layout", "values"});
    if (!j.contains("grid") || !j.contains("values")) throw ValidationError("field needs \"grid\" and \"values\"");
    const PhaseSpaceGrid grid = grid_from_json(j.at("grid"));
    const Json& values = j.at("values");
    if (!values.is_array() || values.size() != static_cast<std::size_t>(grid.nx()) * grid.np())
        throw ValidationError("\"values\" must hold Nx*Np numbers");
    RealArray data(grid.nx(), grid.np());
    std::size_t i = 0;
    for (int r = 0; r < grid.nx(); ++r)
        for (int c = 0; c < grid.np(); ++c) data(r, c) = values[i++].get<double>();
    return {grid, std::move(data), field_kind_from_string(string_value(j, "kind", "generic"))};
}

void write_field_csv(std::ostream& out, const PhaseSpaceGrid& grid, std::span<const double> values) {
    if (values.empty()) throw ValidationError("refusing to export an empty field");
    if (values.size() != static_cast<std::size_t>(grid.nx()) * grid.np())
        throw ValidationError("field size does not match grid");
    out << "x,p,value\n";
    std::size_t i = 0;
    for (int j = 0; j < grid.nx(); ++j)
        for (int k = 0; k < grid.np(); ++k)
            out << fmt::format("{:.17g},{:.17g},{:.17g}\n", grid.x(j), grid.p(k), values[i++]);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::filesystem::path tmp = path;
    tmp += fmt::format(".tmp{}", ::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError(fmt::format("cannot write '{}'", path.string()));
        out << text;
        out.close();
        if (!out) throw ValidationError(fmt::format("failed writing '{}'", path.string()));
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ValidationError(fmt::format("cannot write '{}': {}", path.string(), ec.message()));
    }
}

void export_field(const PhaseSpaceField& field, FieldFormat format, const std::filesystem::path& path) {
    if (format == FieldFormat::csv) {
        std::ostringstream out;
        write_field_csv(out, field.grid(), std::span<const double>(field.values().data(), field.values().size()));
        write_text(path, out.str());
    } else {
        write_text(path, field_to_json(field).dump() + "\n");
    }
}

PhaseSpaceField import_field_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot read '{}'", path.string()));
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
    }
    return field_from_json(j);
}

namespace {

const std::set<std::string> kOperations = {"wigner", "husimi", "entropy", "admissibility",
                                           "smooth", "probe",  "claims"};

Operation operation_from_json(const Json& j) {
    reject_unknown_keys(j, "operation",
                        {"name", "kappa", "sigma", "sigma_x", "sigma_p", "a", "cutoffs", "id", "weights"});
    Operation op;
    op.name = string_value(j, "name", "");
    if (!kOperations.contains(op.name))
        throw ValidationError(fmt::format("\"name\": unknown operation '{}'", op.name));
    op.kappa = number(j, "kappa", 1.0);
    if (!(op.kappa > 0.0)) throw ValidationError("\"kappa\" must be positive");
    const double sigma = number(j, "sigma", 1.0);
    op.sigma_x = number(j, "sigma_x", sigma);
    op.sigma_p = number(j, "sigma_p", sigma);
    if (!(op.sigma_x > 0.0)) throw ValidationError("\"sigma_x\" must be positive");
    if (!(op.sigma_p > 0.0)) throw ValidationError("\"sigma_p\" must be positive");
    op.a = number(j, "a", 0.0);
    if (op.name == "probe" && !(op.a > 0.0)) throw ValidationError("\"a\" must be positive");
    if (j.contains("cutoffs")) {
        if (!j.at("cutoffs").is_array()) throw ValidationError("\"cutoffs\" must be an array");
        op.cutoffs.clear();
        for (const Json& c : j.at("cutoffs")) {
            if (!c.is_number()) throw ValidationError("\"cutoffs\" must hold numbers");
            op.cutoffs.push_back(c.get<double>());
        }
    }
    if (j.contains("id")) {
        const Json& id = j.at("id");
        if (id.is_string()) {
            op.claim_ids.push_back(id.get<std::string>());
        } else if (id.is_array()) {
            for (const Json& s : id) {
                if (!s.is_string()) throw ValidationError("\"id\" must hold strings");
                op.claim_ids.push_back(s.get<std::string>());
            }
        } else {
            throw ValidationError("\"id\" must be a string or an array of strings");
        }
        for (const std::string& s : op.claim_ids) {
            if (s != "all") (void)parse_claim_id(s);
        }
    }
    if (j.contains("weights")) {
        if (!j.at("weights").is_array()) throw ValidationError("\"weights\" must be an array");
        for (const Json& w : j.at("weights")) {
            if (!w.is_number() || w.get<double>() < 0.0)
                throw ValidationError("\"weights\" must hold non-negative numbers");
            op.weights.push_back(w.get<double>());
        }
    }
    return op;
}

} // namespace

Scenario parse_scenario(const Json& j) {
    reject_unknown_keys(j, "scenario", {"grid", "state", "operation", "output"});
    Scenario s;
    s.grid = j.contains("grid") ? grid_from_json(j.at("grid")) : default_grid();
    if (!j.contains("operation")) throw ValidationError("missing required key \"operation\"");
    s.operation = operation_from_json(j.at("operation"));
    if (j.contains("state")) {
        const Json& state = j.at("state");
        if (state.is_array()) {
            for (const Json& item : state) s.states.push_back(state_from_json(item));
        } else {
            s.states.push_back(state_from_json(state));
        }
    }
    const bool needs_state = s.operation.name != "probe" && s.operation.name != "claims";
    if (needs_state && s.states.empty()) throw ValidationError("missing required key \"state\"");
    if (s.states.size() > 1 && s.operation.name != "entropy")
        throw ValidationError("\"state\": mixtures are only supported by the entropy operation");
    if (!s.operation.weights.empty() && s.operation.weights.size() != s.states.size())
        throw ValidationError("\"weights\" needs one entry per state");
    if (j.contains("output")) {
        const Json& out = j.at("output");
        reject_unknown_keys(out, "output", {"path", "format"});
        s.output.path = string_value(out, "path", "-");
        s.output.format = out.contains("format") ? field_format_from_string(string_value(out, "format", "json"))
                                                 : field_format_for_path(s.output.path);
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot read scenario '{}'", path.string()));
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(fmt::format("scenario '{}' is not valid JSON: {}", path.string(), e.what()));
    }
    return parse_scenario(j);
}

} // namespace pslab
