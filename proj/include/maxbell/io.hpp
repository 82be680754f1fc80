#pragma once

#include "maxbell/extremal.hpp"
#include "maxbell/hardy.hpp"
#include "maxbell/maximal.hpp"
#include "maxbell/tree_model.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace maxbell {

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// {"arity": m, "depth": d, "values": [...]}
std::string step_function_json(const StepFunction& phi);
StepFunction step_function_from_json(const std::string& text);
StepFunction read_step_function(const std::string& path);

/// {"support": [...], "y": {...}, "aMeasure": {...}, "star": {...}} keyed by
/// digit strings; the root is "".
std::string linearization_json(const Linearization& lin);

/// {"name", "lhs", "rhs", "gap", "components", "params"}
std::string gap_report_json(const GapReport& r);

void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points);
void write_beta_sweep_csv(std::ostream& os, std::span<const BetaSweepPoint> points);
void write_experiment_csv(std::ostream& os, std::span<const ExperimentRow> rows);

}  // namespace maxbell
