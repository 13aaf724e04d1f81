#include "fvbeam/bench.hpp"
#include "fvbeam/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fvbeam;

namespace {

constexpr double kPi = std::numbers::pi;

BlockTridiagonalSystem random_dominant(std::size_t M, std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto block = [&] {
        Mat6 A;
        for (int i = 0; i < 36; ++i) A(i) = u(rng);
        return A;
    };
    BlockTridiagonalSystem sys;
    sys.rows.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        if (i > 0) sys.rows[i].AW = block();
        if (i + 1 < M) sys.rows[i].AE = block();
        sys.rows[i].AC = block() + 20.0 * Mat6::Identity();
    }
    return sys;
}

Eigen::VectorXd stacked(const std::vector<Vec6>& x)
{
    Eigen::VectorXd v(6 * static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) v.segment<6>(6 * static_cast<Eigen::Index>(i)) = x[i];
    return v;
}

void set_rhs(BlockTridiagonalSystem& sys, const Eigen::VectorXd& b)
{
    for (std::size_t i = 0; i < sys.size(); ++i) sys.rows[i].R = b.segment<6>(6 * static_cast<Eigen::Index>(i));
}

CaseSetup pure_bending(std::size_t increments)
{
    CaseDefinition def = standard_case("pure_bending");
    def.schedule = {ScheduleStage{increments, 1.0}};
    return build_problem(def);
}

} // namespace

TEST(BlockThomas, IdentityPivotsReturnRightHandSide)
{
    BlockTridiagonalSystem sys;
    sys.rows.resize(4);
    for (std::size_t i = 0; i < 4; ++i) {
        sys.rows[i].AC = Mat6::Identity();
        sys.rows[i].R = Vec6::Constant(static_cast<double>(i) + 0.5);
    }
    const std::vector<Vec6> x = block_thomas_solve(sys);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(x[i], sys.rows[i].R);
}

TEST(BlockThomas, RecoversKnownSolution)
{
    std::mt19937 rng(21);
    BlockTridiagonalSystem sys = random_dominant(17, rng);
    const Eigen::VectorXd known = Eigen::VectorXd::Random(6 * 17);
    set_rhs(sys, sys.apply(known));
    const Eigen::VectorXd x = stacked(block_thomas_solve(sys));
    EXPECT_LE((x - known).norm() / known.norm(), 1e-11);
}

TEST(BlockThomas, MatchesDenseFactorisation)
{
    std::mt19937 rng(22);
    BlockTridiagonalSystem sys = random_dominant(3, rng);
    set_rhs(sys, Eigen::VectorXd::LinSpaced(18, -2.0, 3.0));
    const Eigen::VectorXd dense = sys.dense().fullPivLu().solve(sys.rhs());
    EXPECT_LE((stacked(block_thomas_solve(sys)) - dense).norm() / dense.norm(), 1e-12);

    EXPECT_LE(thomas_dense_error(50, 23), 1e-11);
}

TEST(BlockThomas, ReportsSingularPivotCell)
{
    std::mt19937 rng(24);
    BlockTridiagonalSystem sys = random_dominant(5, rng);
    sys.rows[0].AE.setZero();
    sys.rows[1].AW.setZero();
    sys.rows[1].AC.setZero();
    try {
        block_thomas_solve(sys);
        FAIL() << "expected a singular pivot";
    } catch (const SingularPivotError& e) {
        EXPECT_EQ(e.cell(), 1u);
    }
}

TEST(ResidualNorm, Examples)
{
    const double L = 7.0;
    std::vector<Vec3> dw(3, Vec3::Zero()), dpsi(3, Vec3::Zero());
    EXPECT_EQ(residual_norm(dw, dpsi, L), 0.0);
    dw[1] = Vec3(1e-11 * L, 0, 0);
    EXPECT_NEAR(residual_norm(dw, dpsi, L), 1e-11, 1e-25);
    EXPECT_LE(residual_norm(dw, dpsi, L), SolverSettings{}.tolerance);
    dw[1] = Vec3(1e-14, 0, 0);
    dpsi[2] = Vec3(0, 2e-10, 0);
    EXPECT_DOUBLE_EQ(residual_norm(dw, dpsi, L), 2e-10);
    EXPECT_GT(residual_norm(dw, dpsi, L), SolverSettings{}.tolerance);
}

TEST(LoadFactors, Stages)
{
    const std::vector<double> f = load_factors({{2, 1.0}, {3, 2.5}});
    ASSERT_EQ(f.size(), 5u);
    EXPECT_DOUBLE_EQ(f[0], 0.5);
    EXPECT_DOUBLE_EQ(f[1], 1.0);
    EXPECT_DOUBLE_EQ(f[2], 1.5);
    EXPECT_DOUBLE_EQ(f[4], 2.5);
}

TEST(Monitor, NegativeIndicesCountFromEast)
{
    const BeamMesh mesh = build_uniform_mesh(1.0, 4);
    EXPECT_EQ(Monitor{}.resolve(mesh), 4u);
    EXPECT_EQ((Monitor{Monitor::Kind::Cell, -1}).resolve(mesh), 3u);
    EXPECT_EQ((Monitor{Monitor::Kind::Face, 2}).label(mesh), "face2");
    EXPECT_THROW((Monitor{Monitor::Kind::Cell, 4}).resolve(mesh), std::out_of_range);
}

TEST(RunIncrement, ZeroLoadConvergesAtOnce)
{
    CaseSetup setup = pure_bending(1);
    setup.problem.bcs[1].moment = Vec3::Zero();
    BeamState s = initial_state(setup.problem.mesh, setup.problem.geom);
    const IncrementReport rep = run_increment(s, setup.problem, 1.0);
    EXPECT_TRUE(rep.converged);
    EXPECT_EQ(rep.iterations, 1);
    EXPECT_EQ(rep.residual, 0.0);
    for (const Vec3& w : s.w_c) EXPECT_TRUE(w.isZero(0.0));
}

// Within every converging increment the correction norm falls strictly
// after the first iteration and the last two ratios decrease.
void expect_newton_decay(const CaseDefinition& def)
{
    const CaseSetup setup = build_problem(def);
    const RunResult r = run_schedule(setup.problem, setup.schedule);
    ASSERT_FALSE(r.aborted);
    for (const IncrementReport& rep : r.history) {
        const std::vector<double>& h = rep.residual_history;
        ASSERT_GE(h.size(), 3u);
        for (std::size_t k = 2; k < h.size(); ++k) {
            EXPECT_LT(h[k], h[k - 1]) << "increment " << rep.increment << " iteration " << k + 1;
        }
        const std::size_t n = h.size();
        EXPECT_LT(h[n - 1] / h[n - 2], h[n - 2] / h[n - 3]) << "increment " << rep.increment;
    }
}

TEST(RunIncrement, NewtonDecayPureBending) { expect_newton_decay(standard_case("pure_bending")); }

TEST(RunIncrement, NewtonDecayBend45) { expect_newton_decay(standard_case("bend45")); }

TEST(RunSchedule, AbortsOnFirstFailure)
{
    CaseSetup setup = pure_bending(4);
    setup.problem.settings.max_iterations = 2;
    int calls = 0;
    const RunResult r = run_schedule(setup.problem, setup.schedule, [&](const IncrementReport&, const BeamState&) {
        ++calls;
    });
    EXPECT_TRUE(r.aborted);
    ASSERT_EQ(r.history.size(), 1u);
    EXPECT_EQ(calls, 1);
    EXPECT_FALSE(r.history[0].converged);
    EXPECT_FALSE(r.history[0].failure.empty());
    EXPECT_EQ(r.last_converged_load, 0.0);
    for (const Vec3& w : r.final_state.w_c) EXPECT_TRUE(w.isZero(0.0));
}

TEST(RunSchedule, Deterministic)
{
    const CaseSetup setup = build_problem(standard_case("bend45"));
    const RunResult a = run_schedule(setup.problem, setup.schedule);
    const RunResult b = run_schedule(setup.problem, setup.schedule);
    ASSERT_EQ(a.history.size(), b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        EXPECT_EQ(a.history[i].residual_history, b.history[i].residual_history);
    }
    for (std::size_t f = 0; f < a.final_state.w_f.size(); ++f) EXPECT_EQ(a.final_state.w_f[f], b.final_state.w_f[f]);
}

// Planar elastic bending is path independent: halving the step size
// reaches the same converged state.
TEST(RunSchedule, PlanarBendingIsPathIndependent)
{
    const std::size_t steps[] = {1, 2, 4};
    std::vector<Vec3> tips;
    for (std::size_t n : steps) {
        const CaseSetup setup = pure_bending(n);
        const RunResult r = run_schedule(setup.problem, setup.schedule);
        ASSERT_FALSE(r.aborted);
        tips.push_back(r.final_state.w_f.back());
    }
    EXPECT_LT((tips[0] - tips[1]).norm(), 1e-8);
    EXPECT_LT((tips[1] - tips[2]).norm(), 1e-8);
}

TEST(RunSchedule, PureBendingTip)
{
    const CaseSetup setup = pure_bending(1);
    const RunResult r = run_schedule(setup.problem, setup.schedule);
    ASSERT_FALSE(r.aborted);
    const Vec3 w = r.final_state.w_f.back();
    const EulerSolution e = euler_analytic(2.5 * kPi, 10.0, 100.0);
    EXPECT_NEAR(w.x(), -1.00146, 1e-4);
    EXPECT_NEAR(w.y(), 3.72731, 1e-4);
    EXPECT_LT(relative_error(w.y(), e.w_y), 0.1);
    EXPECT_NEAR(r.final_state.psi_f.back().z(), e.psi_z, 1e-9);
}

TEST(RunSchedule, Bend45TipDisplacement)
{
    const CaseSetup setup = build_problem(standard_case("bend45"));
    const RunResult r = run_schedule(setup.problem, setup.schedule);
    ASSERT_FALSE(r.aborted);
    const Vec3 w = r.final_state.w_f.back().cwiseAbs();
    const Vec3 expected(23.540, 13.564, 53.225);
    for (int i = 0; i < 3; ++i) EXPECT_LT(relative_error(w(i), expected(i)), 0.5) << i;
}
