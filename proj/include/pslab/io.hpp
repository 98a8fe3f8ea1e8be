#pragma once

#include "pslab/admissibility.hpp"
#include "pslab/claims.hpp"
#include "pslab/phase_space.hpp"
#include "pslab/statelib.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pslab {

using Json = nlohmann::ordered_json;

enum class FieldFormat { csv, json };

FieldFormat field_format_from_string(std::string_view name);
/// csv for *.csv, json otherwise.
FieldFormat field_format_for_path(const std::filesystem::path& path);

Json to_json(const PhaseSpaceGrid& grid);
Json to_json(const StateSpec& spec);
Json to_json(const AdmissibilityReport& report);
Json to_json(const DivergenceReport& report);
Json to_json(const ClaimReport& report);
Json field_to_json(const PhaseSpaceField& field);

PhaseSpaceGrid grid_from_json(const Json& j);
StateSpec state_from_json(const Json& j);
PhaseSpaceField field_from_json(const Json& j);

/// `x,p,value` header then one row per sample, x-major, 17 significant digits.
void write_field_csv(std::ostream& out, const PhaseSpaceGrid& grid, std::span<const double> values);

/// Writes the field to `path` atomically (temporary file + rename); "-" writes to stdout.
void export_field(const PhaseSpaceField& field, FieldFormat format, const std::filesystem::path& path);

PhaseSpaceField import_field_json(const std::filesystem::path& path);

/// Writes text atomically; "-" writes to stdout.
void write_text(const std::filesystem::path& path, const std::string& text);

struct Operation {
    std::string name; ///< wigner | husimi | entropy | admissibility | smooth | probe | claims
    double kappa = 1.0;
    double sigma_x = 1.0;
    double sigma_p = 1.0;
    double a = 0.0;
    std::vector<double> cutoffs{2, 3, 4, 5, 6, 7, 8};
    std::vector<std::string> claim_ids;
    std::vector<double> weights;
};

struct OutputSpec {
    std::string path = "-";
    FieldFormat format = FieldFormat::json;
};

struct Scenario {
    PhaseSpaceGrid grid = default_grid();
    std::vector<StateSpec> states; ///< more than one: mixture (entropy only)
    Operation operation;
    OutputSpec output;
};

/// Validates against the scenario schema; unknown keys and bad values raise
/// ValidationError naming the offending key.
Scenario parse_scenario(const Json& j);
Scenario load_scenario(const std::filesystem::path& path);

} // namespace pslab
