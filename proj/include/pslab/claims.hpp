#pragma once

#include "pslab/grid.hpp"
#include "pslab/statelib.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pslab {

enum class ClaimId { C1, C2, C3, C4, C5, C6 };
enum class ClaimVerdict { confirmed, refuted, measured_only };

std::string_view to_string(ClaimId id);
std::string_view to_string(ClaimVerdict verdict);
ClaimId parse_claim_id(std::string_view text);
std::vector<ClaimId> all_claims();

struct Measurement {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    std::string criterion; ///< human-readable check, e.g. "|value - 1| <= tol"
    std::optional<bool> passed;
};

/// Eigen-spectrum of one inverse-Weyl kernel, kept verbatim for measured claims.
struct SpectrumRecord {
    std::string fixture;
    std::string verdict;
    std::vector<double> eigenvalues;
};

struct ClaimReport {
    ClaimId id = ClaimId::C1;
    std::string description;
    std::vector<Measurement> measurements;
    ClaimVerdict verdict = ClaimVerdict::measured_only;
    std::vector<StateSpec> fixtures;
    PhaseSpaceGrid grid{kDefaultHbar, kDefaultHalfWidth, kDefaultNx};
    std::vector<SpectrumRecord> spectra;
    std::string notes;
};

/// Text carried by every C6 report.
extern const std::string_view kRepresentationSwitchCaveat;

/// Pure-state fixtures shared by the claims (Fock 0-5, two coherent states, both cats).
std::vector<StateSpec> pure_fixtures();

ClaimReport run_claim(ClaimId id, const PhaseSpaceGrid& grid);

/// Runs claims concurrently; result order follows `ids`.
std::vector<ClaimReport> run_claims(const std::vector<ClaimId>& ids, const PhaseSpaceGrid& grid);

} // namespace pslab
