#pragma once

#include "fvbeam/assembly.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvbeam {

class SingularPivotError : public std::runtime_error {
public:
    SingularPivotError(std::size_t cell, const std::string& what)
        : std::runtime_error(what), cell_(cell)
    {
    }
    std::size_t cell() const { return cell_; }

private:
    std::size_t cell_;
};

/// Direct block-tridiagonal solve with partial pivoting inside each 6x6
/// pivot block. Throws SingularPivotError with the offending cell.
std::vector<Vec6> block_thomas_solve(const BlockTridiagonalSystem& system);

/// max over cells of max(|dw| / L_ref, |dpsi|)
double residual_norm(const std::vector<Vec3>& dw, const std::vector<Vec3>& dpsi, double L_ref);

struct SolverSettings {
    double tolerance = 1e-10;
    int max_iterations = 30;
    double L_ref = 0.0; ///< zero means "use the beam length"
};

/// Fields sampled after each increment. A monitor names a face or a cell;
/// negative indices count from the east end.
struct Monitor {
    enum class Kind { Face, Cell };
    Kind kind = Kind::Face;
    long index = -1;

    std::size_t resolve(const BeamMesh& mesh) const;
    std::string label(const BeamMesh& mesh) const;
};

struct MonitorSample {
    Vec3 w = Vec3::Zero();
    Vec3 psi = Vec3::Zero();
    Vec3 n = Vec3::Zero();
    Vec3 m = Vec3::Zero();
};

MonitorSample sample(const Monitor& mon, const BeamState& state, const BeamMesh& mesh);

struct IncrementReport {
    std::size_t increment = 0;
    double load_factor = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history;
    std::vector<MonitorSample> samples;
    std::string failure; ///< empty unless the increment failed
};

/// Everything fixed for a run.
struct Problem {
    BeamMesh mesh;
    InitialGeometry geom;
    Material material;
    CellLoads loads;
    std::array<BoundarySpec, 2> bcs;
    SolverSettings settings;
    std::vector<Monitor> monitors;

    double reference_length() const { return settings.L_ref > 0.0 ? settings.L_ref : mesh.length; }
};

/// Newton iterations at load factor `lambda`, starting from `state`. The
/// state is replaced by the last iterate. Failures (non-convergence, a
/// rotation increment reaching pi, a singular pivot or a non-finite
/// correction) are reported, not thrown.
IncrementReport run_increment(BeamState& state, const Problem& problem, double lambda);

/// One stage of the pseudo-time schedule: advance the load factor to `to`
/// in `increments` equal steps.
struct ScheduleStage {
    std::size_t increments = 1;
    double to = 1.0;
};

std::vector<double> load_factors(const std::vector<ScheduleStage>& schedule);

struct RunResult {
    std::vector<IncrementReport> history;
    BeamState final_state;          ///< last converged state
    bool aborted = false;
    double last_converged_load = 0.0;
};

using IncrementCallback = std::function<void(const IncrementReport&, const BeamState&)>;

/// Pseudo-time loop over the schedule from the undeformed state. Stops at
/// the first increment that fails to converge.
RunResult run_schedule(const Problem& problem, const std::vector<ScheduleStage>& schedule,
                       const IncrementCallback& on_increment = {});

} // namespace fvbeam
