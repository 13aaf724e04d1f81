#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace fvbeam {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rotation matrices are plain Mat3 values that are expected to lie on SO(3).
using RotationMatrix = Mat3;

/// Raised when a rotation increment is too large for the tangent operator.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Below this rotation magnitude the trigonometric coefficients are evaluated
/// by truncated Taylor series.
inline constexpr double kSmallAngle = 1e-4;

/// Skew-symmetric matrix S with S * h == v.cross(h).
Mat3 hat(const Vec3& v);

/// Axial vector of the skew part (S - S^T) / 2.
Vec3 vee(const Mat3& S);

/// Rodrigues exponential map: I + (sin p / p) P + ((1 - cos p) / p^2) P^2.
RotationMatrix exp_so3(const Vec3& psi);

/// Tangent operator of the rotation-vector parametrisation,
///   T = (sin p / p) I + (1 - sin p / p) / p^2 (psi psi^T) + ((1 - cos p) / p^2) hat(psi),
/// satisfying exp(-hat(psi)) d exp(hat(psi)) = hat(T^T dpsi).
/// Throws DomainError when |psi| >= pi.
Mat3 tangent(const Vec3& psi);

/// Frobenius norm of R^T R - I.
double orthogonality_defect(const Mat3& R);

/// True when R is orthogonal with determinant +1 to within tol.
bool is_rotation(const Mat3& R, double tol = 1e-12);

namespace detail {

/// Coefficients (sin p / p, (1 - cos p) / p^2, (1 - sin p / p) / p^2).
struct RodriguesCoefficients {
    double sinc;
    double cosc;
    double sinc_defect;
};

RodriguesCoefficients coefficients_series(double angle);
RodriguesCoefficients coefficients_closed_form(double angle);

RotationMatrix exp_so3_with(const Vec3& psi, const RodriguesCoefficients& c);
Mat3 tangent_with(const Vec3& psi, const RodriguesCoefficients& c);

} // namespace detail

} // namespace fvbeam
