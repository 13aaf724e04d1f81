#include "fvbeam/boundary.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace fvbeam;

namespace {

constexpr double kPi = std::numbers::pi;

struct AtRest {
    BeamMesh mesh = build_uniform_mesh(10.0, 10);
    InitialGeometry geom = make_straight(10.0, mesh);
    Material mat = Material::from_products(1e4, 5e3, 5e3, 100, 100, 100);
    BeamState state = initial_state(mesh, geom);

    PointCoefficients face(End end) const
    {
        return compute_face_coefficients(state, geom, mesh, mat)[face_of(end, mesh)];
    }
};

} // namespace

TEST(Coefficients, InitialStraightBeam)
{
    const Material mat = Material::from_products(1e4, 5e3, 5e3, 100, 200, 300);
    const PointCoefficients c = coefficients_at(Mat3::Identity(), Vec3::Zero(), Vec3::Zero(), Vec3::UnitX(), mat);
    EXPECT_TRUE(c.ww.isApprox(mat.CN, 1e-15));
    EXPECT_TRUE(c.mpsi2.isApprox(mat.CM, 1e-15));
    EXPECT_TRUE(c.wpsi.isApprox(mat.CN * hat(Vec3::UnitX()), 1e-15));
    EXPECT_TRUE(c.exp_w.isZero(0.0));
    EXPECT_TRUE(c.exp_m.isZero(0.0));
    EXPECT_TRUE(c.exp_mw.isZero(0.0));
    EXPECT_TRUE(c.mpsi.isZero(0.0));
}

TEST(Coefficients, AxialStrainGivesAxialForce)
{
    const Material mat = Material::from_products(1e4, 5e3, 5e3, 100, 100, 100);
    const PointCoefficients c =
        coefficients_at(Mat3::Identity(), Vec3(0.1, 0, 0), Vec3::Zero(), Vec3(1.1, 0, 0), mat);
    EXPECT_LT((c.exp_w - Vec3(1e4 * 0.1, 0, 0)).norm(), 1e-12);
}

TEST(Coefficients, ForceStiffnessIsRotatedConstitutiveMatrix)
{
    const Material mat = Material::from_products(7.0, 3.0, 2.0, 1.0, 1.0, 1.0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const Mat3 R = exp_so3(Vec3(u(rng), u(rng), u(rng)) * 2.0);
        const PointCoefficients c =
            coefficients_at(R, Vec3(u(rng), u(rng), u(rng)) * 0.1, Vec3(u(rng), u(rng), u(rng)), R.col(0), mat);
        EXPECT_LT((c.ww - c.ww.transpose()).norm(), 1e-13);
        Eigen::SelfAdjointEigenSolver<Mat3> eig(c.ww);
        EXPECT_NEAR(eig.eigenvalues()(0), 2.0, 1e-12);
        EXPECT_NEAR(eig.eigenvalues()(1), 3.0, 1e-12);
        EXPECT_NEAR(eig.eigenvalues()(2), 7.0, 1e-12);
    }
}

TEST(BoundaryKind, NamesRoundTrip)
{
    for (BoundaryKind k : {BoundaryKind::Clamped, BoundaryKind::Hinged, BoundaryKind::Free, BoundaryKind::Prescribed}) {
        EXPECT_EQ(boundary_kind_from_string(to_string(k)), k);
    }
    EXPECT_THROW(boundary_kind_from_string("pinned"), std::invalid_argument);
}

TEST(BoundaryRecovery, ZeroLoadsZeroCell)
{
    AtRest b;
    for (End end : {End::West, End::East}) {
        const BoundaryClosure cl = close_boundary(BoundarySpec{}, 1.0, end, b.state, b.face(end), b.mesh);
        const BoundaryIncrement inc = recover_boundary_kinematics(cl, Vec3::Zero(), Vec3::Zero());
        EXPECT_TRUE(inc.dw.isZero(1e-15));
        EXPECT_TRUE(inc.dpsi.isZero(1e-15));
    }
}

TEST(BoundaryRecovery, StressFreeEndCopiesCellRotation)
{
    AtRest b;
    const Vec3 dpsi(0.01, -0.02, 0.03);
    for (End end : {End::West, End::East}) {
        const BoundaryClosure cl = close_boundary(BoundarySpec{}, 1.0, end, b.state, b.face(end), b.mesh);
        EXPECT_LT((recover_boundary_kinematics(cl, Vec3::Zero(), dpsi).dpsi - dpsi).norm(), 1e-15);
    }
}

TEST(BoundaryRecovery, EndMomentOnBeamAtRest)
{
    AtRest b;
    BoundarySpec spec;
    spec.moment = Vec3(0, 0, 20 * kPi);
    const BoundaryClosure cl = close_boundary(spec, 1.0, End::East, b.state, b.face(End::East), b.mesh);
    const Vec3 dpsi = recover_boundary_kinematics(cl, Vec3::Zero(), Vec3::Zero()).dpsi;
    const double dx = 0.5 * b.mesh.cell_length;
    EXPECT_LT((dpsi - Vec3(0, 0, dx * 20 * kPi / 100)).norm(), 1e-14);
}

TEST(BoundaryRecovery, TipForceOnBeamAtRest)
{
    AtRest b;
    BoundarySpec spec;
    spec.force = Vec3(0, 0, 600);
    const BoundaryClosure cl = close_boundary(spec, 1.0, End::East, b.state, b.face(End::East), b.mesh);
    const Vec3 dw = recover_boundary_kinematics(cl, Vec3::Zero(), Vec3::Zero()).dw;
    // Shear only: dx n / GA3 along z.
    EXPECT_LT((dw - Vec3(0, 0, 0.5 * 600 / 5e3)).norm(), 1e-14);
}

TEST(BoundaryRecovery, PrescribedRotationRampShare)
{
    AtRest b;
    BoundarySpec spec;
    spec.kind = BoundaryKind::Prescribed;
    spec.rotation = Vec3(20 * kPi, 0, 0);
    const BoundaryClosure cl = close_boundary(spec, 0.01, End::West, b.state, b.face(End::West), b.mesh);
    const BoundaryIncrement inc = recover_boundary_kinematics(cl, Vec3(1, 2, 3), Vec3(0.1, 0.2, 0.3));
    EXPECT_LT((inc.dpsi - Vec3(kPi / 5, 0, 0)).norm(), 1e-15);
    EXPECT_TRUE(inc.dw.isZero(0.0));

    // Later increments only take the remaining share of the target.
    b.state.psi_f[0] = Vec3(kPi / 5, 0, 0);
    const BoundaryClosure next = close_boundary(spec, 0.02, End::West, b.state, b.face(End::West), b.mesh);
    EXPECT_LT((next.psi0 - Vec3(kPi / 5, 0, 0)).norm(), 1e-14);
}

TEST(BoundaryRecovery, HingeFixesDisplacementAndFreesRotation)
{
    AtRest b;
    BoundarySpec spec;
    spec.kind = BoundaryKind::Hinged;
    spec.displacement = Vec3(1, 2, 3);
    const BoundaryClosure cl = close_boundary(spec, 0.5, End::East, b.state, b.face(End::East), b.mesh);
    EXPECT_TRUE(cl.w_w.isZero(0.0));
    EXPECT_TRUE(cl.w_psi.isZero(0.0));
    EXPECT_EQ(cl.w0, Vec3(0.5, 1, 1.5));
    EXPECT_TRUE(cl.psi_psi.isIdentity(1e-15));
}

TEST(BoundaryRecovery, ClampedEndIsFixed)
{
    AtRest b;
    BoundarySpec spec;
    spec.kind = BoundaryKind::Clamped;
    const BoundaryClosure cl = close_boundary(spec, 1.0, End::West, b.state, b.face(End::West), b.mesh);
    const BoundaryIncrement inc = recover_boundary_kinematics(cl, Vec3(1, 1, 1), Vec3(1, 1, 1));
    EXPECT_TRUE(inc.dw.isZero(0.0));
    EXPECT_TRUE(inc.dpsi.isZero(0.0));
}
