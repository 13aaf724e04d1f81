#pragma once

#include "fvbeam/coefficients.hpp"
#include "fvbeam/state.hpp"

#include <stdexcept>
#include <string>

namespace fvbeam {

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BoundaryKind { Clamped, Hinged, Free, Prescribed };

std::string to_string(BoundaryKind kind);
BoundaryKind boundary_kind_from_string(const std::string& name);

/// One beam end. Targets and loads are reference values that the load
/// factor scales; loads are external and fixed in space.
///
///   clamped    : displacement and rotation fixed (targets allowed, default zero)
///   hinged     : displacement fixed, moment prescribed (default zero)
///   free       : force and moment prescribed
///   prescribed : displacement and rotation driven to their targets
struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::Free;
    Vec3 displacement = Vec3::Zero();
    Vec3 rotation = Vec3::Zero();
    Vec3 force = Vec3::Zero();
    Vec3 moment = Vec3::Zero();

    bool translation_fixed() const { return kind != BoundaryKind::Free; }
    bool rotation_fixed() const { return kind == BoundaryKind::Clamped || kind == BoundaryKind::Prescribed; }
};

/// Boundary-face increments as affine functions of the adjacent cell
/// correction (dw_C, dpsi_C):
///
///   dw_b   = w0   + w_w dw_C + w_psi dpsi_C
///   dpsi_b = psi0 + psi_psi dpsi_C
struct BoundaryClosure {
    Vec3 w0 = Vec3::Zero();
    Mat3 w_w = Mat3::Zero();
    Mat3 w_psi = Mat3::Zero();
    Vec3 psi0 = Vec3::Zero();
    Mat3 psi_psi = Mat3::Zero();
};

/// Builds the closure for one end at load factor `lambda`.
///
/// Fixed components take the remaining share of the ramp target (target
/// minus what the face has already accumulated). Loaded components invert
/// the linearised face resultants so that the face moment and force equal
/// the applied values; the force at the west face is the negative of the
/// internal flux. Throws SingularMatrixError when the face stiffness
/// cannot be inverted.
BoundaryClosure close_boundary(const BoundarySpec& spec, double lambda, End end, const BeamState& state,
                               const PointCoefficients& face, const BeamMesh& mesh);

struct BoundaryIncrement {
    Vec3 dw;
    Vec3 dpsi;
};

/// Evaluates the closure for the solved cell correction.
BoundaryIncrement recover_boundary_kinematics(const BoundaryClosure& closure, const Vec3& dw_cell,
                                              const Vec3& dpsi_cell);

} // namespace fvbeam
