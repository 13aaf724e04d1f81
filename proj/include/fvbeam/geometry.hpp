#pragma once

#include "fvbeam/so3.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fvbeam {

/// Invalid geometric or physical input (negative lengths, bad spans, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform 1-D control-volume layout over the arc length [0, L].
///
/// Cell i is bounded by face i (west) and face i + 1 (east). Faces 0 and
/// `cells` are the two boundary faces.
struct BeamMesh {
    std::size_t cells = 0;
    double length = 0.0;
    double cell_length = 0.0;           ///< L_C
    std::vector<double> centres;        ///< s at each cell centre
    std::vector<double> faces;          ///< s at each face
    std::vector<double> west_distance;  ///< L_w, centre-to-centre (cell length at the boundary)
    std::vector<double> east_distance;  ///< L_e
    std::vector<double> west_weight;    ///< gamma_w = L_w / (2 L_C)
    std::vector<double> east_weight;    ///< gamma_e

    std::size_t face_count() const { return cells + 1; }
    /// Distance from a boundary face to the adjacent cell centre.
    double boundary_distance() const { return 0.5 * cell_length; }
};

/// Orientation sign of a face as seen from the cell that owns it.
inline constexpr double kEastSign = 1.0;
inline constexpr double kWestSign = -1.0;

BeamMesh build_uniform_mesh(double length, std::size_t cells);

/// Stress-free reference configuration evaluated at faces and cell centres.
struct InitialGeometry {
    std::vector<Vec3> r0_f;
    std::vector<RotationMatrix> lambda0_f;
    std::vector<Vec3> r0prime_f;
    std::vector<Vec3> r0_c;
    std::vector<RotationMatrix> lambda0_c;
    std::vector<Vec3> r0prime_c;
    /// Unit normal of the plane "up" direction used to locate an arc crown.
    Vec3 up = Vec3::UnitY();
};

InitialGeometry make_straight(double length, const BeamMesh& mesh);

/// Circular arc in the plane spanned by (u, v) around `centre`.
///
/// Points are centre + R (cos t u + sin t v) with t = start_angle +/- s / R
/// (minus when `clockwise`). The cross-section frame has g1 along the
/// tangent, g3 along u x v, and g2 = g3 x g1.
struct ArcSpec {
    double radius = 1.0;
    double span = 0.0;          ///< rad, in (0, 2 pi)
    double start_angle = 0.0;   ///< rad
    bool clockwise = false;
    Vec3 centre = Vec3::Zero();
    Vec3 u = Vec3::UnitX();
    Vec3 v = Vec3::UnitY();

    double length() const { return radius * span; }
};

InitialGeometry make_arc(const ArcSpec& arc, const BeamMesh& mesh);

/// Arc length of the highest point (largest component along v) of the arc.
double arc_crown_position(const ArcSpec& arc);

} // namespace fvbeam
