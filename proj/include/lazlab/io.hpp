#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "lazlab/conjugacy.hpp"
#include "lazlab/dynamics.hpp"
#include "lazlab/fitting.hpp"
#include "lazlab/geometry.hpp"
#include "lazlab/rigidity.hpp"

namespace lazlab {

using Json = nlohmann::ordered_json;

/// {"name", "c0", "harmonics": [{"n", "cos", "sin"}]}. Throws InvalidSpec on
/// malformed input; the curve invariants are checked separately by validate().
FourierCurvatureSpec spec_from_json(const Json& j);
Json spec_to_json(const FourierCurvatureSpec& spec);

FourierCurvatureSpec load_spec(const std::filesystem::path& path);
void save_spec(const FourierCurvatureSpec& spec, const std::filesystem::path& path);

/// %.17g
std::string format_number(double v);

/// Columns step, s, phi, x, y; the seed is step 0. x and y are left empty
/// unless `lazutkin` is set.
void write_orbit_csv(std::ostream& os, const BoundaryCurve& curve, const PhasePoint& seed,
                     std::span<const PhasePoint> iterates, bool lazutkin);

/// Columns x, alpha3, alpha4, beta4, alpha3prime, source.
void write_profile_csv(std::ostream& os, const CoeffProfile& profile);

/// Columns x, K, g, log_rho. K and g are optional and left empty when absent.
void write_curvature_csv(std::ostream& os, const CurvatureProfile& profile,
                         std::span<const double> k = {}, std::span<const double> g = {});

/// Columns s, a0, a0prime, b1.
void write_jet_csv(std::ostream& os, const ConjugacyJet& jet);

/// Reads the x and log_rho columns of a curvature CSV.
CurvatureProfile read_curvature_csv(const std::filesystem::path& path);

/// Reads a profile CSV written by write_profile_csv.
CoeffProfile read_profile_csv(const std::filesystem::path& path);

Json to_json(const MatchResult& m);
Json to_json(const TangencyReport& r);
Json to_json(const FittedCoeffs& f);
Json to_json(const CombinationSearch& c);

}  // namespace lazlab
