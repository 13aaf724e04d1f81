#pragma once

#include "fvbeam/bench.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace fvbeam {

/// Shortest text with 17 significant digits.
std::string format_number(double v);

void write_history_header(std::ostream& os, const std::vector<Monitor>& monitors, const BeamMesh& mesh);
void write_history_row(std::ostream& os, const IncrementReport& rep);

/// One row per face: s, r, w, psi, Gamma, K, n, m.
void write_final_state(std::ostream& os, const BeamState& state, const InitialGeometry& geom, const BeamMesh& mesh);

/// Deformed mean-line points (one "x y z" per face). Snapshots after the
/// first are preceded by a blank line.
void write_polyline_snapshot(std::ostream& os, const BeamState& state, const InitialGeometry& geom, bool first);

/// mesh, h, quantity, value, reference, error_pct, order
void write_convergence(std::ostream& os, const BenchmarkResult& result);

} // namespace fvbeam
