#include "fvbeam/so3.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fvbeam {

Mat3 hat(const Vec3& v)
{
    Mat3 S;
    S << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
         -v.y(), v.x(), 0.0;
    return S;
}

Vec3 vee(const Mat3& S)
{
    const Mat3 skew = 0.5 * (S - S.transpose());
    return {skew(2, 1), skew(0, 2), skew(1, 0)};
}

namespace detail {

RodriguesCoefficients coefficients_series(double angle)
{
    const double p2 = angle * angle;
    const double p4 = p2 * p2;
    return {1.0 - p2 / 6.0 + p4 / 120.0,
            0.5 - p2 / 24.0 + p4 / 720.0,
            1.0 / 6.0 - p2 / 120.0 + p4 / 5040.0};
}

RodriguesCoefficients coefficients_closed_form(double angle)
{
    const double p2 = angle * angle;
    const double sinc = std::sin(angle) / angle;
    // Half-angle form of (1 - cos p) / p^2 avoids cancellation for small p.
    const double half = std::sin(0.5 * angle) / (0.5 * angle);
    return {sinc, 0.5 * half * half, (1.0 - sinc) / p2};
}

RotationMatrix exp_so3_with(const Vec3& psi, const RodriguesCoefficients& c)
{
    const Mat3 P = hat(psi);
    return Mat3::Identity() + c.sinc * P + c.cosc * (P * P);
}

Mat3 tangent_with(const Vec3& psi, const RodriguesCoefficients& c)
{
    return c.sinc * Mat3::Identity() + c.sinc_defect * (psi * psi.transpose()) + c.cosc * hat(psi);
}

} // namespace detail

namespace {

detail::RodriguesCoefficients coefficients(double angle)
{
    return angle < kSmallAngle ? detail::coefficients_series(angle)
                               : detail::coefficients_closed_form(angle);
}

} // namespace

RotationMatrix exp_so3(const Vec3& psi)
{
    return detail::exp_so3_with(psi, coefficients(psi.stableNorm()));
}

Mat3 tangent(const Vec3& psi)
{
    const double angle = psi.stableNorm();
    if (!(angle < std::numbers::pi)) {
        throw DomainError("rotation increment of magnitude " + std::to_string(angle) +
                          " rad is outside the tangent operator domain (< pi); reduce the load step");
    }
    return detail::tangent_with(psi, coefficients(angle));
}

double orthogonality_defect(const Mat3& R)
{
    return (R.transpose() * R - Mat3::Identity()).norm();
}

bool is_rotation(const Mat3& R, double tol)
{
    return orthogonality_defect(R) <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

} // namespace fvbeam
