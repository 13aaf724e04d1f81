#include "fvbeam/boundary.hpp"

#include <cmath>

namespace fvbeam {

std::string to_string(BoundaryKind kind)
{
    switch (kind) {
    case BoundaryKind::Clamped: return "clamped";
    case BoundaryKind::Hinged: return "hinged";
    case BoundaryKind::Free: return "free";
    case BoundaryKind::Prescribed: return "prescribed";
    }
    return "free";
}

BoundaryKind boundary_kind_from_string(const std::string& name)
{
    if (name == "clamped") return BoundaryKind::Clamped;
    if (name == "hinged") return BoundaryKind::Hinged;
    if (name == "free") return BoundaryKind::Free;
    if (name == "prescribed") return BoundaryKind::Prescribed;
    throw std::invalid_argument("unknown boundary kind '" + name + "'");
}

namespace {

Mat3 checked_inverse(const Mat3& A, const char* what)
{
    Eigen::FullPivLU<Mat3> lu(A);
    if (!lu.isInvertible() || lu.rcond() < 1e-14) {
        throw SingularMatrixError(std::string("boundary recovery matrix is singular (") + what +
                                  "); refine the mesh or reduce the load step");
    }
    return lu.inverse();
}

} // namespace

BoundaryClosure close_boundary(const BoundarySpec& spec, double lambda, End end, const BeamState& state,
                               const PointCoefficients& face, const BeamMesh& mesh)
{
    const std::size_t f = face_of(end, mesh);
    const double sgn = sign_of(end);
    const double dx = mesh.boundary_distance();

    BoundaryClosure cl;

    if (spec.rotation_fixed()) {
        cl.psi0 = lambda * spec.rotation - state.psi_f[f];
    } else {
        // m_bar = m* + C_mpsi dpsi_b + C_mpsi2 sgn (dpsi_b - dpsi_C) / dx
        const Vec3 m_bar = sgn * lambda * spec.moment;
        const Mat3 stiff = face.mpsi2 * (sgn / dx);
        const Mat3 inv = checked_inverse(face.mpsi + stiff, "moment");
        cl.psi0 = inv * (m_bar - face.exp_m);
        cl.psi_psi = inv * stiff;
    }

    if (spec.translation_fixed()) {
        cl.w0 = lambda * spec.displacement - state.w_f[f];
    } else {
        // n_bar = n* + C_ww sgn (dw_b - dw_C) / dx + C_wpsi dpsi_b
        const Vec3 n_bar = sgn * lambda * spec.force;
        const Mat3 compliance = checked_inverse(face.ww, "force") * (sgn * dx);
        cl.w0 = compliance * (n_bar - face.exp_w - face.wpsi * cl.psi0);
        cl.w_w = Mat3::Identity();
        cl.w_psi = -compliance * face.wpsi * cl.psi_psi;
    }
    return cl;
}

BoundaryIncrement recover_boundary_kinematics(const BoundaryClosure& closure, const Vec3& dw_cell,
                                              const Vec3& dpsi_cell)
{
    return {closure.w0 + closure.w_w * dw_cell + closure.w_psi * dpsi_cell,
            closure.psi0 + closure.psi_psi * dpsi_cell};
}

} // namespace fvbeam
