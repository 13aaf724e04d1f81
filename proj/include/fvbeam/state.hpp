#pragma once

#include "fvbeam/geometry.hpp"
#include "fvbeam/so3.hpp"

#include <array>
#include <vector>

namespace fvbeam {

/// Linear hyperelastic section: N = C_N Gamma, M = C_M K.
struct Material {
    Mat3 CN = Mat3::Identity();  ///< diag(EA, GA2, GA3)
    Mat3 CM = Mat3::Identity();  ///< diag(GJ, EI2, EI3)

    static Material from_products(double EA, double GA2, double GA3, double GJ, double EI2, double EI3);
};

enum class TorsionModel { Polar, SaintVenant };

/// Section properties used to derive the six stiffness products from E and G.
struct Section {
    double area = 0.0;
    double shear_area2 = 0.0;
    double shear_area3 = 0.0;
    double torsion = 0.0;   ///< J
    double inertia2 = 0.0;
    double inertia3 = 0.0;

    static Section circle(double radius);
    /// Polar: J = I2 + I3, the convention of the classic beam benchmarks.
    /// SaintVenant: series solution for a solid rectangle.
    static Section rectangle(double width, double height, TorsionModel torsion = TorsionModel::Polar);

    Material material(double E, double G) const;
};

void validate(const Material& mat);

enum class End { West = 0, East = 1 };

inline std::size_t face_of(End end, const BeamMesh& mesh) { return end == End::West ? 0 : mesh.cells; }
inline std::size_t cell_of(End end, const BeamMesh& mesh) { return end == End::West ? 0 : mesh.cells - 1; }
/// +1 at the east boundary, -1 at the west: face derivative = sign (b - C) / dx.
inline double sign_of(End end) { return end == End::West ? kWestSign : kEastSign; }

/// All evolving fields. Cell fields are indexed 0..M-1, face fields 0..M.
struct BeamState {
    std::vector<Vec3> w_c;
    std::vector<Vec3> psi_c;              ///< accumulated rotation vector (output bookkeeping)
    std::vector<RotationMatrix> lambda_c; ///< relative rotation

    std::vector<RotationMatrix> lambda_f;
    std::vector<Vec3> K_f;
    std::vector<Vec3> Gamma_f;
    std::vector<Vec3> n_f;
    std::vector<Vec3> m_f;
    std::vector<Vec3> w_f;
    std::vector<Vec3> psi_f;              ///< sum of applied face rotation increments
    std::vector<Vec3> rprime_f;

    RotationMatrix total_rotation_face(const InitialGeometry& geom, std::size_t f) const
    {
        return lambda_f[f] * geom.lambda0_f[f];
    }
    RotationMatrix total_rotation_cell(const InitialGeometry& geom, std::size_t c) const
    {
        return lambda_c[c] * geom.lambda0_c[c];
    }
};

BeamState initial_state(const BeamMesh& mesh, const InitialGeometry& geom);

/// Newton correction: cell increments plus the two boundary-face increments.
struct Correction {
    std::vector<Vec3> dw;
    std::vector<Vec3> dpsi;
    std::array<Vec3, 2> dw_boundary{Vec3::Zero(), Vec3::Zero()};
    std::array<Vec3, 2> dpsi_boundary{Vec3::Zero(), Vec3::Zero()};

    static Correction zero(std::size_t cells);
};

/// Face values and face derivatives of a correction.
struct FaceIncrements {
    std::vector<Vec3> dw;
    std::vector<Vec3> dpsi;
    std::vector<Vec3> dw_prime;
    std::vector<Vec3> dpsi_prime;
};

FaceIncrements interpolate_to_faces(const Correction& corr, const BeamMesh& mesh);

/// Applies one Newton correction: displacement and rotation-vector updates,
/// incremental rotational strain, left-multiplied exponential rotation
/// updates, then strains and spatial resultants at every face.
/// Throws DomainError if a face rotation increment reaches pi.
void update_state(BeamState& state, const Correction& corr, const InitialGeometry& geom,
                  const BeamMesh& mesh, const Material& mat);

/// Recomputes r', Gamma, n and m at every face from w, Lambda and K.
void refresh_face_resultants(BeamState& state, const InitialGeometry& geom, const BeamMesh& mesh,
                             const Material& mat);

/// Stored energy: sum over cells of L_C times the mean face energy density.
double strain_energy(const BeamState& state, const BeamMesh& mesh, const Material& mat);

/// Rotational strain from vee(Lambda_t^T Lambda_t') with Lambda_t' central
/// differenced from the two faces of each cell. Cross-check for K_f.
std::vector<Vec3> rotational_strain_by_definition(const BeamState& state, const InitialGeometry& geom,
                                                  const BeamMesh& mesh);

/// Mean of the two face values of K for each cell.
std::vector<Vec3> cell_rotational_strain(const BeamState& state, const BeamMesh& mesh);

} // namespace fvbeam
