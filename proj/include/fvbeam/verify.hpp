#pragma once

#include "fvbeam/bench.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fvbeam {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string measured;
    std::string expected;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::string filter;          ///< check number or substring of its name; empty runs all
    double stiffness_scale = 1.0; ///< multiplies every material stiffness (fault injection)
};

struct CheckInfo {
    int id;
    std::string name;
};

const std::vector<CheckInfo>& acceptance_checks();
bool check_selected(const CheckInfo& info, const std::string& filter);

CheckResult run_check(int id, const VerifyOptions& options);

/// Runs every selected check in order; `on_result` sees each as it finishes.
std::vector<CheckResult> run_acceptance(const VerifyOptions& options,
                                        const std::function<void(const CheckResult&)>& on_result = {});

/// One table line: "[PASS] 2 pure_bending  measured ... | expected ... (0.01 s)".
std::string format_check(const CheckResult& r);

// Property oracles used by the last check.

/// Largest relative difference between the assembled Jacobian action and a
/// central difference of the discrete residual, over random states and
/// all boundary kinds.
double jacobian_fd_error(unsigned seed);

/// Largest relative solution difference between the block Thomas solver and
/// a dense LU factorisation, for random systems of 1..max_cells cells.
double thomas_dense_error(std::size_t max_cells, unsigned seed);

/// Largest orthogonality defect of any stored rotation after `updates`
/// random small-increment state updates.
double rotation_drift(std::size_t updates, unsigned seed);

/// Largest entrywise difference between the Taylor and closed-form
/// evaluations of exp and the tangent operator around the threshold.
double branch_agreement();

/// max over cells of |K_def - K_acc| on a straight beam rotated by a smooth
/// non-planar field in three increments, for each mesh.
std::vector<double> two_route_strain_gap(const std::vector<std::size_t>& meshes);

} // namespace fvbeam
