#include "fvbeam/bench.hpp"
#include "fvbeam/verify.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace fvbeam;

namespace {

constexpr double kPi = std::numbers::pi;

struct Beam {
    BeamMesh mesh;
    InitialGeometry geom;
    Material mat = Material::from_products(1e4, 5e3, 5e3, 100, 100, 100);
    BeamState state;
    std::array<BoundarySpec, 2> bcs;

    Beam(double L, std::size_t M) : mesh(build_uniform_mesh(L, M)), geom(make_straight(L, mesh))
    {
        state = initial_state(mesh, geom);
        bcs[0].kind = BoundaryKind::Clamped;
        bcs[1].kind = BoundaryKind::Free;
    }

    AssembledSystem assemble(const CellLoads& loads, double lambda = 1.0) const
    {
        return assemble_system(state, geom, mesh, mat, loads, bcs, lambda);
    }
};

// Uniform resultants on every face: n = (0, 0, P) with r' = e1.
std::vector<FaceResultants> uniform_shear(std::size_t faces, double P)
{
    std::vector<FaceResultants> out(faces);
    for (FaceResultants& f : out) {
        f.n.c = Vec3(0, 0, P);
        f.q.c = Vec3::UnitX().cross(Vec3(0, 0, P));
    }
    return out;
}

} // namespace

TEST(Assembly, UnloadedClampedFreeBeamHasZeroSolution)
{
    Beam b(1.0, 2);
    const AssembledSystem sys = b.assemble(CellLoads::zero(2));
    for (const Vec6& x : block_thomas_solve(sys.system)) EXPECT_TRUE(x.isZero(0.0));
    EXPECT_TRUE(sys.system.rhs().isZero(0.0));
}

TEST(Assembly, DisplacementColumnsAnnihilateConstants)
{
    Beam b(10.0, 6);
    const AssembledSystem sys = b.assemble(CellLoads::zero(6));
    for (std::size_t c = 1; c + 1 < 6; ++c) {
        const BlockRow& r = sys.system.rows[c];
        const Mat6 sum = r.AW + r.AC + r.AE;
        EXPECT_LT(sum.leftCols<3>().cwiseAbs().maxCoeff(), 1e-10) << c;
    }
}

TEST(Assembly, InteriorStencilOfStraightBeam)
{
    Beam b(10.0, 5);
    const AssembledSystem sys = b.assemble(CellLoads::zero(5));
    const BlockRow& r = sys.system.rows[2];
    const double LC = b.mesh.cell_length;
    EXPECT_TRUE((r.AE.topLeftCorner<3, 3>()).isApprox(b.mat.CN / LC, 1e-14));
    EXPECT_TRUE((r.AW.topLeftCorner<3, 3>()).isApprox(b.mat.CN / LC, 1e-14));
    // Rotational stiffness picks up C_M / L_C from the curvature stencil.
    EXPECT_NEAR(r.AE(3, 3), b.mat.CM(0, 0) / LC, 1e-12);
}

TEST(Assembly, DistributedForceEntersRightHandSide)
{
    const BeamMesh mesh = build_uniform_mesh(3.0, 3);
    const std::vector<FaceResultants> faces = uniform_shear(4, 0.0);
    const RowStencil row = assemble_force_row(faces, mesh, Vec3(0, -2.5, 0), 1);
    EXPECT_LT((row.rhs - Vec3(0, 2.5, 0)).norm(), 1e-15);
    EXPECT_TRUE(assemble_force_row(faces, mesh, Vec3::Zero(), 1).rhs.isZero(0.0));
}

TEST(Assembly, MomentRowCarriesShearCouple)
{
    const BeamMesh mesh = build_uniform_mesh(3.0, 3);
    const double P = 4.0;
    const RowStencil row = assemble_moment_row(uniform_shear(4, P), mesh, Vec3::Zero(), 1);
    // e1 x (0, 0, P) = (0, -P, 0) weighted by half a cell on each face.
    EXPECT_LT((row.rhs - Vec3(0, P * mesh.cell_length, 0)).norm(), 1e-15);
    EXPECT_TRUE(assemble_moment_row(uniform_shear(4, 0.0), mesh, Vec3::Zero(), 1).rhs.isZero(0.0));
}

TEST(Assembly, JacobianMatchesFiniteDifferences)
{
    for (unsigned seed : {1u, 2u, 3u}) EXPECT_LE(jacobian_fd_error(seed), 1e-5) << seed;
}

TEST(Assembly, DiscreteResidualVanishesAtRest)
{
    Beam b(2.0, 4);
    for (const Vec6& r : discrete_residual(b.state, b.mesh, CellLoads::zero(4), 1.0)) EXPECT_TRUE(r.isZero(0.0));
}

// The first Newton step from the undeformed state is linear beam theory:
// the tip rotates by M L / EI.
TEST(Assembly, FirstStepOfPureBendingIsLinearTheory)
{
    Beam b(10.0, 10);
    b.bcs[1].moment = Vec3(0, 0, 2.5 * kPi);
    const AssembledSystem sys = b.assemble(CellLoads::zero(10));
    const Correction c = expand_solution(block_thomas_solve(sys.system), sys.closures);
    EXPECT_NEAR(c.dpsi_boundary[1].z(), 2.5 * kPi * 10.0 / 100.0, 1e-10);
    EXPECT_TRUE(c.dpsi_boundary[0].isZero(0.0));
    EXPECT_TRUE(c.dw_boundary[0].isZero(0.0));
}

TEST(Assembly, LoadFactorScalesLoads)
{
    Beam b(2.0, 4);
    CellLoads loads = CellLoads::zero(4);
    for (Vec3& f : loads.force) f = Vec3(0, 1, 0);
    const Eigen::VectorXd full = b.assemble(loads, 1.0).system.rhs();
    const Eigen::VectorXd half = b.assemble(loads, 0.5).system.rhs();
    EXPECT_TRUE(half.isApprox(0.5 * full, 1e-14));
}

TEST(Assembly, DenseMatchesApply)
{
    Beam b(2.0, 4);
    b.bcs[1].force = Vec3(0, 0, 3);
    const BlockTridiagonalSystem sys = b.assemble(CellLoads::zero(4)).system;
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(24, -1.0, 1.0);
    EXPECT_LT((sys.dense() * x - sys.apply(x)).norm(), 1e-10);
}
