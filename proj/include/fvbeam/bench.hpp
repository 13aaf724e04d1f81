#pragma once

#include "fvbeam/case.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvbeam {

/// Tip of a straight cantilever of length L bent into a circular arc by an
/// end moment M_z: rotation psi_z = M_z L / EI, axial shortening w_x and
/// transverse deflection w_y.
struct EulerSolution {
    double psi_z = 0.0;
    double w_x = 0.0;
    double w_y = 0.0;
};

EulerSolution euler_analytic(double Mz, double L, double EI);

class UndefinedReferenceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// |(numeric - reference) / reference| in percent.
double relative_error(double numeric, double reference);

/// Least-squares slope of log(error) against log(h). Needs at least three
/// levels, positive errors and geometrically spaced h.
double convergence_order(const std::vector<double>& errors, const std::vector<double>& h);

class ScheduleExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BucklingResult {
    double critical_load = 0.0;  ///< last converged load factor
    double failed_load = 0.0;    ///< first load factor that did not converge
    std::size_t increments = 0;  ///< increments attempted
    std::string failure;
    RunResult run;
};

/// Runs the schedule until an increment fails to converge. Throws
/// ScheduleExhaustedError when every increment converges.
BucklingResult detect_buckling(const CaseSetup& setup);

/// Signed in-plane angle (rad) from the initial to the deformed tangent at
/// face f, positive counter-clockwise about `normal`.
double tangent_rotation_angle(const BeamState& state, const InitialGeometry& geom, std::size_t f,
                              const Vec3& normal);

/// The verification cases: rigid_rotation, pure_bending, helix, bend45,
/// bend45_driven and arch.
std::vector<CaseDefinition> standard_cases();
CaseDefinition standard_case(const std::string& name);

/// Mesh refinement study of one case.
struct BenchmarkResult {
    std::string case_id;
    std::vector<std::size_t> meshes;
    std::vector<double> h;
    std::vector<std::string> quantities;
    std::vector<std::vector<double>> values;                 ///< [mesh][quantity]
    std::vector<std::optional<double>> reference;            ///< per quantity
    std::vector<std::vector<std::optional<double>>> errors;  ///< percent, [mesh][quantity]
    std::vector<std::optional<double>> order;                ///< per quantity
    std::vector<double> seconds;                             ///< wall clock per mesh
    std::vector<bool> completed;                             ///< schedule ran to the end
    std::optional<std::size_t> reference_mesh;
};

/// Quantities sampled from the first monitor of the final state.
std::vector<std::string> study_quantities();

/// Runs `def` on every mesh in parallel (one solver per worker). Errors are
/// measured against `reference_mesh` when given, else against the case's
/// analytic reference block. Components are compared by magnitude; the
/// quantity "w" is the norm of the componentwise difference.
BenchmarkResult mesh_study(const CaseDefinition& def, const std::vector<std::size_t>& meshes,
                           std::optional<std::size_t> reference_mesh, unsigned workers = 0);

} // namespace fvbeam
