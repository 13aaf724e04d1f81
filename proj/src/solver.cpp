#include "fvbeam/solver.hpp"

#include <algorithm>
#include <cmath>

namespace fvbeam {

std::vector<Vec6> block_thomas_solve(const BlockTridiagonalSystem& system)
{
    const std::size_t M = system.size();
    std::vector<Mat6> G(M);
    std::vector<Vec6> y(M);

    for (std::size_t i = 0; i < M; ++i) {
        const BlockRow& r = system.rows[i];
        Mat6 D = r.AC;
        Vec6 b = r.R;
        if (i > 0) {
            D.noalias() -= r.AW * G[i - 1];
            b.noalias() -= r.AW * y[i - 1];
        }
        const Eigen::PartialPivLU<Mat6> lu(D);
        const double rc = lu.rcond();
        if (!std::isfinite(rc) || rc < 1e-15) {
            throw SingularPivotError(i, "singular pivot block at cell " + std::to_string(i));
        }
        G[i] = lu.solve(r.AE);
        y[i] = lu.solve(b);
    }

    for (std::size_t i = M - 1; i-- > 0;) {
        y[i].noalias() -= G[i] * y[i + 1];
    }
    return y;
}

double residual_norm(const std::vector<Vec3>& dw, const std::vector<Vec3>& dpsi, double L_ref)
{
    double r = 0.0;
    for (std::size_t c = 0; c < dw.size(); ++c) {
        r = std::max({r, dw[c].norm() / L_ref, dpsi[c].norm()});
    }
    return r;
}

std::size_t Monitor::resolve(const BeamMesh& mesh) const
{
    const long count = static_cast<long>(kind == Kind::Face ? mesh.face_count() : mesh.cells);
    const long i = index < 0 ? count + index : index;
    if (i < 0 || i >= count) {
        throw std::out_of_range("monitor index " + std::to_string(index) + " outside the mesh");
    }
    return static_cast<std::size_t>(i);
}

std::string Monitor::label(const BeamMesh& mesh) const
{
    return (kind == Kind::Face ? "face" : "cell") + std::to_string(resolve(mesh));
}

MonitorSample sample(const Monitor& mon, const BeamState& state, const BeamMesh& mesh)
{
    const std::size_t i = mon.resolve(mesh);
    MonitorSample s;
    if (mon.kind == Monitor::Kind::Face) {
        s.w = state.w_f[i];
        s.psi = state.psi_f[i];
        s.n = state.n_f[i];
        s.m = state.m_f[i];
    } else {
        s.w = state.w_c[i];
        s.psi = state.psi_c[i];
        s.n = 0.5 * (state.n_f[i] + state.n_f[i + 1]);
        s.m = 0.5 * (state.m_f[i] + state.m_f[i + 1]);
    }
    return s;
}

IncrementReport run_increment(BeamState& state, const Problem& problem, double lambda)
{
    IncrementReport rep;
    rep.load_factor = lambda;
    const double L_ref = problem.reference_length();

    try {
        for (int it = 1; it <= problem.settings.max_iterations; ++it) {
            const AssembledSystem sys = assemble_system(state, problem.geom, problem.mesh, problem.material,
                                                        problem.loads, problem.bcs, lambda);
            const Correction corr = expand_solution(block_thomas_solve(sys.system), sys.closures);
            const double res = residual_norm(corr.dw, corr.dpsi, L_ref);
            rep.iterations = it;
            rep.residual = res;
            rep.residual_history.push_back(res);
            if (!std::isfinite(res)) {
                rep.failure = "non-finite correction";
                break;
            }
            update_state(state, corr, problem.geom, problem.mesh, problem.material);
            if (res <= problem.settings.tolerance) {
                rep.converged = true;
                break;
            }
        }
        if (!rep.converged && rep.failure.empty()) {
            rep.failure = "no convergence within " + std::to_string(problem.settings.max_iterations) + " iterations";
        }
    } catch (const DomainError& e) {
        rep.failure = e.what();
    } catch (const SingularPivotError& e) {
        rep.failure = e.what();
    } catch (const SingularMatrixError& e) {
        rep.failure = e.what();
    }

    for (const Monitor& mon : problem.monitors) {
        rep.samples.push_back(sample(mon, state, problem.mesh));
    }
    return rep;
}

std::vector<double> load_factors(const std::vector<ScheduleStage>& schedule)
{
    std::vector<double> out;
    double from = 0.0;
    for (const ScheduleStage& st : schedule) {
        for (std::size_t k = 1; k <= st.increments; ++k) {
            // Exact stage end points; intermediate values by linear interpolation.
            out.push_back(k == st.increments ? st.to
                                             : from + (st.to - from) * static_cast<double>(k) /
                                                          static_cast<double>(st.increments));
        }
        from = st.to;
    }
    return out;
}

RunResult run_schedule(const Problem& problem, const std::vector<ScheduleStage>& schedule,
                       const IncrementCallback& on_increment)
{
    RunResult result;
    result.final_state = initial_state(problem.mesh, problem.geom);

    const std::vector<double> lambdas = load_factors(schedule);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        BeamState trial = result.final_state;
        IncrementReport rep = run_increment(trial, problem, lambdas[k]);
        rep.increment = k + 1;
        if (on_increment) on_increment(rep, trial);
        result.history.push_back(std::move(rep));
        if (!result.history.back().converged) {
            result.aborted = true;
            break;
        }
        result.final_state = std::move(trial);
        result.last_converged_load = lambdas[k];
    }
    return result;
}

} // namespace fvbeam
