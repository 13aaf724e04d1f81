#pragma once

#include "fvbeam/state.hpp"

#include <vector>

namespace fvbeam {

/// Linearised stress resultants at one point, about the current iterate:
///
///   n       = exp_w  + ww  dw' + wpsi  dpsi
///   m       = exp_m  + mpsi dpsi + mpsi2 dpsi'
///   r' x n  = exp_mw + mw  dw' + mwpsi dpsi
struct PointCoefficients {
    Vec3 exp_w = Vec3::Zero();
    Vec3 exp_m = Vec3::Zero();
    Vec3 exp_mw = Vec3::Zero();
    Mat3 ww = Mat3::Zero();
    Mat3 wpsi = Mat3::Zero();
    Mat3 mpsi = Mat3::Zero();
    Mat3 mpsi2 = Mat3::Zero();
    Mat3 mw = Mat3::Zero();
    Mat3 mwpsi = Mat3::Zero();
};

using CoefficientSet = std::vector<PointCoefficients>;

/// Evaluates every coefficient from the total rotation, strains and deformed
/// tangent at one point.
PointCoefficients coefficients_at(const RotationMatrix& total, const Vec3& Gamma, const Vec3& K,
                                  const Vec3& rprime, const Material& mat);

/// Cell-centred coefficients: Lambda_t = Lambda_c Lambda0_c with Gamma, K and
/// r' taken as the mean of the two adjacent face values.
CoefficientSet compute_coefficients(const BeamState& state, const InitialGeometry& geom,
                                    const BeamMesh& mesh, const Material& mat);

/// Face coefficients evaluated from the stored face fields. These are the
/// exact linearisation of the face resultants produced by update_state.
CoefficientSet compute_face_coefficients(const BeamState& state, const InitialGeometry& geom,
                                         const BeamMesh& mesh, const Material& mat);

/// Linear interpolation of cell coefficients to internal faces with the mesh
/// weights; boundary faces take the adjacent cell value.
CoefficientSet interpolate_coefficients(const CoefficientSet& cells, const BeamMesh& mesh);

} // namespace fvbeam
