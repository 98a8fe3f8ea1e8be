#include "test_util.hpp"

#include "pslab/errors.hpp"
#include "pslab/io.hpp"
#include "pslab/statelib.hpp"
#include "pslab/weyl.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pslab;
namespace fs = std::filesystem;

namespace {

const PhaseSpaceGrid g = build_grid(1.0, 8.0, 256);

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "pslab_test_io";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string error_of(const std::string& text) {
    try {
        (void)parse_scenario(Json::parse(text));
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("CSV layout") {
    const PhaseSpaceField w0 = wigner_from_pure(harmonic_eigenstate(0, g));
    const fs::path p = scratch("w0.csv");
    export_field(w0, FieldFormat::csv, p);
    std::ifstream in(p);
    std::string header;
    std::string first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "x,p,value");
    CHECK(first.rfind(fmt::format("-8,{:.17g},", -g.p_max()), 0) == 0);
    std::size_t rows = 1;
    std::string line;
    double max_err = 0.0;
    std::size_t i = 0;
    in.seekg(0);
    std::getline(in, line);
    while (std::getline(in, line)) {
        double x = 0, p_ = 0, v = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &p_, &v) == 3);
        const int j = static_cast<int>(i / g.np());
        const int k = static_cast<int>(i % g.np());
        CHECK(x == g.x(j));
        CHECK(p_ == g.p(k));
        max_err = std::max(max_err, std::abs(v - w0(j, k)));
        ++i;
    }
    rows = i;
    CHECK(rows == static_cast<std::size_t>(g.nx()) * g.np());
    CHECK(max_err <= 1e-15);
}

TEST_CASE("JSON round trip is bitwise") {
    const PhaseSpaceField w0 = wigner_from_pure(harmonic_eigenstate(3, g));
    const fs::path p = scratch("w3.json");
    export_field(w0, FieldFormat::json, p);
    const PhaseSpaceField back = import_field_json(p);
    CHECK(back.grid() == g);
    CHECK(back.kind() == FieldKind::wigner);
    CHECK(std::memcmp(back.values().data(), w0.values().data(), sizeof(double) * w0.values().size()) == 0);
}

TEST_CASE("empty export is rejected") {
    std::ostringstream out;
    CHECK_THROWS_AS(write_field_csv(out, g, std::span<const double>{}), ValidationError);
    CHECK(out.str().empty());
}

TEST_CASE("unwritable path") {
    const PhaseSpaceField w0 = wigner_from_pure(harmonic_eigenstate(0, g));
    CHECK_THROWS_AS(export_field(w0, FieldFormat::csv, "/nonexistent-dir/w.csv"), ValidationError);
}

TEST_CASE("atomic write leaves no temporary files") {
    const fs::path dir = scratch("atomic");
    fs::remove_all(dir);
    fs::create_directories(dir);
    export_field(wigner_from_pure(harmonic_eigenstate(0, g)), FieldFormat::json, dir / "w.json");
    std::size_t count = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        (void)e;
        ++count;
    }
    CHECK(count == 1);
}

TEST_CASE("minimal scenario gets defaults") {
    ::unsetenv("PSLAB_GRID_NX");
    const Scenario s = load_scenario(write_file("min.json", R"({"state": {"kind": "fock", "n": 0}, "operation": {"name": "wigner"}})"));
    CHECK(s.grid.hbar() == 1.0);
    CHECK(s.grid.half_width() == 8.0);
    CHECK(s.grid.nx() == 256);
    CHECK(s.operation.kappa == 1.0);
    CHECK(s.output.path == "-");
    CHECK(s.states.size() == 1);
}

TEST_CASE("scenario errors name the offending key") {
    CHECK(error_of(R"({"state": {"kind": "fock", "n": 0}, "operation": {"name": "husimi", "kappa": -1}})").find("kappa") != std::string::npos);
    CHECK(error_of(R"({"grid": {"Nx": 255}, "state": {"kind": "fock", "n": 0}, "operation": {"name": "wigner"}})").find("Nx") != std::string::npos);
    CHECK(error_of(R"({"state": {"kind": "fock", "n": 0}, "operation": {"name": "wigner"}, "colour": 1})").find("colour") != std::string::npos);
    CHECK(error_of(R"({"state": {"kind": "fock", "n": 0, "m": 1}, "operation": {"name": "wigner"}})").find("\"m\"") != std::string::npos);
    CHECK(error_of(R"({"state": {"kind": "fock", "n": 0}, "operation": {"name": "wigner", "sigmaa": 1}})").find("sigmaa") != std::string::npos);
    CHECK(error_of(R"({"state": {"kind": "fock", "n": 0}, "operation": {"name": "fly"}})").find("name") != std::string::npos);
    CHECK(error_of(R"({"operation": {"name": "wigner"}})").find("state") != std::string::npos);
    CHECK(error_of(R"({"state": {"kind": "fock", "n": 0}})").find("operation") != std::string::npos);
    CHECK(error_of(R"({"state": {"kind": "fock", "n": 0}, "operation": {"name": "wigner"}, "output": {"format": "xml"}})").find("format") != std::string::npos);
    CHECK(error_of(R"({"grid": {"hbar": "one"}, "state": {"kind": "fock", "n": 0}, "operation": {"name": "wigner"}})").find("hbar") != std::string::npos);
    CHECK_THROWS_AS(load_scenario(write_file("broken.json", "{")), ValidationError);
    CHECK_THROWS_AS(load_scenario(scratch("missing.json")), ValidationError);
}

TEST_CASE("state JSON round trips") {
    const std::vector<StateSpec> specs{FockSpec{3},
                                       CoherentSpec{2, -1.5},
                                       CatSpec{6, -1},
                                       BoxSpec{4, BoxShape::disk},
                                       ExpQuadraticSpec{0.25},
                                       GaussianFieldSpec{1, 1, 0.5, 2}};
    for (const StateSpec& s : specs) CHECK(state_from_json(to_json(s)) == s);
}

TEST_CASE("mixtures and outputs in scenarios") {
    const Scenario s = parse_scenario(Json::parse(R"({
        "grid": {"hbar": 1, "L": 8, "Nx": 128},
        "state": [{"kind": "fock", "n": 0}, {"kind": "fock", "n": 1}],
        "operation": {"name": "entropy", "weights": [0.25, 0.75]},
        "output": {"path": "out.json"}})"));
    CHECK(s.states.size() == 2);
    CHECK(s.operation.weights == std::vector<double>{0.25, 0.75});
    CHECK(s.output.format == FieldFormat::json);
    CHECK(s.grid.nx() == 128);
    CHECK(field_format_for_path("a.csv") == FieldFormat::csv);
}
