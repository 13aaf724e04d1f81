#include "fvbeam/bench.hpp"
#include "fvbeam/state.hpp"
#include "fvbeam/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fvbeam;

namespace {

constexpr double kPi = std::numbers::pi;

struct Straight {
    BeamMesh mesh;
    InitialGeometry geom;
    Material mat = Material::from_products(1e4, 5e3, 5e3, 100, 100, 100);
    BeamState state;

    Straight(double L, std::size_t M) : mesh(build_uniform_mesh(L, M)), geom(make_straight(L, mesh))
    {
        state = initial_state(mesh, geom);
    }
};

// Correction sampling a linear field a + b s at every centre and at both ends.
Correction linear_field(const BeamMesh& mesh, const Vec3& w_slope, const Vec3& psi_slope)
{
    Correction c = Correction::zero(mesh.cells);
    for (std::size_t i = 0; i < mesh.cells; ++i) {
        c.dw[i] = w_slope * mesh.centres[i];
        c.dpsi[i] = psi_slope * mesh.centres[i];
    }
    c.dw_boundary[1] = w_slope * mesh.length;
    c.dpsi_boundary[1] = psi_slope * mesh.length;
    return c;
}

} // namespace

TEST(Material, FromProductsAndSections)
{
    const Material m = Material::from_products(1, 2, 3, 4, 5, 6);
    EXPECT_EQ(m.CN.diagonal(), Vec3(1, 2, 3));
    EXPECT_EQ(m.CM.diagonal(), Vec3(4, 5, 6));
    EXPECT_TRUE(m.CN.isDiagonal());

    const Section c = Section::circle(1.0 / std::sqrt(kPi));
    EXPECT_NEAR(c.area, 1.0, 1e-15);
    EXPECT_NEAR(c.torsion, c.inertia2 + c.inertia3, 1e-15);
    const Material arch = c.material(4 * kPi * 1e4, 2 * kPi * 1e4);
    EXPECT_NEAR(arch.CM(0, 0), 1e4, 1e-9);
    EXPECT_NEAR(arch.CM(2, 2), 1e4, 1e-9);

    const Section r = Section::rectangle(1.0, 1.0);
    EXPECT_DOUBLE_EQ(r.inertia2, 1.0 / 12.0);
    EXPECT_DOUBLE_EQ(r.torsion, 1.0 / 6.0);
    // Saint-Venant torsion of a square: beta = 0.1406 a^4.
    EXPECT_NEAR(Section::rectangle(1.0, 1.0, TorsionModel::SaintVenant).torsion, 0.1406, 2e-4);
}

TEST(Material, ValidationRejectsNonPositive)
{
    EXPECT_THROW(validate(Material::from_products(1, 1, 1, 0, 1, 1)), ValidationError);
    EXPECT_THROW(validate(Material::from_products(-1, 1, 1, 1, 1, 1)), ValidationError);
    EXPECT_NO_THROW(validate(Material::from_products(1, 1, 1, 1, 1, 1)));
    EXPECT_THROW(Section::circle(0.0), ValidationError);
    EXPECT_THROW(Section::rectangle(1.0, -1.0), ValidationError);
}

TEST(UpdateState, ZeroCorrectionLeavesInitialState)
{
    Straight b(10.0, 6);
    update_state(b.state, Correction::zero(6), b.geom, b.mesh, b.mat);
    for (std::size_t f = 0; f < b.mesh.face_count(); ++f) {
        EXPECT_TRUE(b.state.Gamma_f[f].isZero(0.0));
        EXPECT_TRUE(b.state.K_f[f].isZero(0.0));
        EXPECT_TRUE(b.state.n_f[f].isZero(0.0));
        EXPECT_TRUE(b.state.m_f[f].isZero(0.0));
        EXPECT_TRUE(b.state.lambda_f[f].isIdentity(0.0));
    }
    EXPECT_EQ(strain_energy(b.state, b.mesh, b.mat), 0.0);
}

TEST(UpdateState, AxialStretch)
{
    Straight b(10.0, 8);
    const double alpha = 1e-3;
    update_state(b.state, linear_field(b.mesh, alpha * Vec3::UnitX(), Vec3::Zero()), b.geom, b.mesh, b.mat);
    for (std::size_t f = 0; f < b.mesh.face_count(); ++f) {
        EXPECT_LT((b.state.Gamma_f[f] - Vec3(alpha, 0, 0)).norm(), 1e-15);
        EXPECT_LT((b.state.n_f[f] - Vec3(1e4 * alpha, 0, 0)).norm(), 1e-11);
    }
}

TEST(UpdateState, SmallBending)
{
    Straight b(1.0, 10);
    const double beta = 1e-6;
    update_state(b.state, linear_field(b.mesh, Vec3::Zero(), beta * Vec3::UnitZ()), b.geom, b.mesh, b.mat);
    for (std::size_t f = 0; f < b.mesh.face_count(); ++f) {
        EXPECT_NEAR(b.state.K_f[f].z(), beta, 1e-12);
        EXPECT_NEAR(b.state.m_f[f].z(), 100 * beta, 1e-10);
    }
}

TEST(UpdateState, RejectsRotationIncrementOfPi)
{
    Straight b(1.0, 4);
    Correction c = Correction::zero(4);
    c.dpsi_boundary[1] = Vec3(0, 0, 4.0);
    EXPECT_THROW(update_state(b.state, c, b.geom, b.mesh, b.mat), DomainError);
}

TEST(UpdateState, RotationsStayOrthogonal)
{
    EXPECT_LE(rotation_drift(2000, 7), 1e-12);
}

TEST(InterpolateToFaces, LinearFieldsAreExact)
{
    const BeamMesh mesh = build_uniform_mesh(2.0, 5);
    const FaceIncrements fi = interpolate_to_faces(linear_field(mesh, Vec3(1, 2, 3), Vec3(-1, 0, 2)), mesh);
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        EXPECT_LT((fi.dw[f] - Vec3(1, 2, 3) * mesh.faces[f]).norm(), 1e-14);
        EXPECT_LT((fi.dw_prime[f] - Vec3(1, 2, 3)).norm(), 1e-13);
        EXPECT_LT((fi.dpsi_prime[f] - Vec3(-1, 0, 2)).norm(), 1e-13);
    }
}

TEST(RotationalStrain, InitialStateIsZero)
{
    Straight b(5.0, 5);
    for (const Vec3& k : rotational_strain_by_definition(b.state, b.geom, b.mesh)) EXPECT_TRUE(k.isZero(0.0));
}

TEST(RotationalStrain, UniformTwist)
{
    Straight b(1.0, 10);
    const double beta = 1e-4;
    update_state(b.state, linear_field(b.mesh, Vec3::Zero(), beta * Vec3::UnitX()), b.geom, b.mesh, b.mat);
    for (const Vec3& k : rotational_strain_by_definition(b.state, b.geom, b.mesh)) {
        EXPECT_NEAR(k.x(), beta, 1e-12);
        EXPECT_NEAR(k.tail<2>().norm(), 0.0, 1e-12);
    }
}

TEST(RotationalStrain, TwoRoutesAgreeAtSecondOrder)
{
    const std::vector<std::size_t> meshes{10, 20, 40, 80};
    const std::vector<double> gaps = two_route_strain_gap(meshes);
    std::vector<double> h;
    for (std::size_t M : meshes) h.push_back(1.0 / static_cast<double>(M));
    EXPECT_NEAR(convergence_order(gaps, h), 2.0, 0.2);
}

// Closed-form bending energy M^2 L / (2 EI) and curvature M / EI.
TEST(PureBending, EnergyAndCurvature)
{
    const CaseDefinition def = standard_case("pure_bending");
    const CaseSetup setup = build_problem(def);
    const RunResult r = run_schedule(setup.problem, setup.schedule);
    ASSERT_FALSE(r.aborted);
    const double M = 2.5 * kPi, L = 10.0, EI = 100.0;
    const double energy = strain_energy(r.final_state, setup.problem.mesh, setup.problem.material);
    EXPECT_NEAR(energy, M * M * L / (2 * EI), 1e-3 * M * M * L / (2 * EI));
    EXPECT_NEAR(M * M * L / (2 * EI), 3.0843, 1e-4);
    for (const Vec3& k : rotational_strain_by_definition(r.final_state, setup.problem.geom, setup.problem.mesh)) {
        EXPECT_NEAR(k.z(), M / EI, 1e-3 * M / EI);
        EXPECT_NEAR(k.z(), 0.0785398, 1e-4);
    }
}

TEST(RigidRotation, StoresNoEnergy)
{
    const CaseSetup setup = build_problem(standard_case("rigid_rotation"));
    const RunResult r = run_schedule(setup.problem, setup.schedule);
    ASSERT_FALSE(r.aborted);
    EXPECT_LE(strain_energy(r.final_state, setup.problem.mesh, setup.problem.material), 1e-20);
}
