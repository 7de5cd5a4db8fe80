#pragma once

#include <iosfwd>

#include "taulift/catalog.hpp"

namespace taulift {

// Parses an algebra-config JSON document (see README for the schema) into a
// runnable problem definition. Schema violations raise input_error with a
// JSON-path location.
ExampleDefinition parse_config(const std::string& json_text);

// Resolve --example NAME / --config PATH to a definition.
ExampleDefinition resolve_input(const std::string& example_name, const std::string& config_path);

// Parse an h-coordinate map {"<label>.1": x, "<label>.2": y} (JSON text).
HVector parse_hvector(const SemidirectAlgebra& h, const std::string& json_text);

struct VerifyReport {
  AlgebraReport algebra;
  SplitReport split;
  ManinReport manin;
  double ad_invariance_residual = 0.0;       // lifted form, sampled triples
  double antihomomorphism_residual = 0.0;    // sampled pairs
  double base_form_invariance_residual = 0.0;  // witness of non-invariance
  double rep_bracket_residual = -1.0;          // -1 when no representation
  bool pass = false;
};

VerifyReport run_verify(const ExampleDefinition& ex, int samples = 100, std::uint64_t seed = 42);

std::string verify_report_text(const ExampleDefinition& ex, const VerifyReport& r);
std::string verify_report_json(const ExampleDefinition& ex, const VerifyReport& r);

// Trajectory serialization. CSV columns: t, then <label>.1 and <label>.2.
std::string trajectory_csv(const SemidirectAlgebra& h, const Trajectory& traj);
Trajectory trajectory_from_csv(const SemidirectAlgebra& h, const std::string& csv);
std::string trajectory_json(const SemidirectAlgebra& h, const ExampleDefinition& ex,
                            const std::vector<Trajectory>& trajs);

// Max coordinate gap between two trajectories on the same grid.
double trajectory_gap(const Trajectory& a, const Trajectory& b);

}  // namespace taulift
