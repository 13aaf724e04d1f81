#include "fvbeam/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fvbeam {

BeamMesh build_uniform_mesh(double length, std::size_t cells)
{
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ValidationError("beam length must be positive and finite");
    }
    if (cells < 2) {
        throw ValidationError("mesh needs at least 2 cells, got " + std::to_string(cells));
    }

    BeamMesh mesh;
    mesh.cells = cells;
    mesh.length = length;
    mesh.cell_length = length / static_cast<double>(cells);
    mesh.faces.resize(cells + 1);
    for (std::size_t f = 0; f <= cells; ++f) {
        mesh.faces[f] = length * static_cast<double>(f) / static_cast<double>(cells);
    }
    mesh.centres.resize(cells);
    mesh.west_distance.assign(cells, mesh.cell_length);
    mesh.east_distance.assign(cells, mesh.cell_length);
    mesh.west_weight.resize(cells);
    mesh.east_weight.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        mesh.centres[c] = 0.5 * (mesh.faces[c] + mesh.faces[c + 1]);
        mesh.west_weight[c] = 0.5 * mesh.west_distance[c] / mesh.cell_length;
        mesh.east_weight[c] = 0.5 * mesh.east_distance[c] / mesh.cell_length;
    }
    return mesh;
}

InitialGeometry make_straight(double length, const BeamMesh& mesh)
{
    if (std::abs(mesh.length - length) > 1e-12 * length) {
        throw ValidationError("mesh does not span the beam length");
    }
    InitialGeometry g;
    for (double s : mesh.faces) {
        g.r0_f.emplace_back(s, 0.0, 0.0);
        g.lambda0_f.push_back(Mat3::Identity());
        g.r0prime_f.push_back(Vec3::UnitX());
    }
    for (double s : mesh.centres) {
        g.r0_c.emplace_back(s, 0.0, 0.0);
        g.lambda0_c.push_back(Mat3::Identity());
        g.r0prime_c.push_back(Vec3::UnitX());
    }
    g.up = Vec3::UnitY();
    return g;
}

namespace {

struct ArcPoint {
    Vec3 position;
    Vec3 tangent;
    RotationMatrix frame;
};

ArcPoint arc_point(const ArcSpec& arc, const Vec3& u, const Vec3& v, double s)
{
    const double dir = arc.clockwise ? -1.0 : 1.0;
    const double t = arc.start_angle + dir * s / arc.radius;
    const double c = std::cos(t);
    const double sn = std::sin(t);

    ArcPoint p;
    p.position = arc.centre + arc.radius * (c * u + sn * v);
    p.tangent = dir * (-sn * u + c * v);
    const Vec3 g3 = u.cross(v);
    const Vec3 g2 = g3.cross(p.tangent);
    p.frame.col(0) = p.tangent;
    p.frame.col(1) = g2;
    p.frame.col(2) = g3;
    return p;
}

} // namespace

InitialGeometry make_arc(const ArcSpec& arc, const BeamMesh& mesh)
{
    if (!(arc.radius > 0.0)) {
        throw ValidationError("arc radius must be positive");
    }
    if (!(arc.span > 0.0) || !(arc.span < 2.0 * std::numbers::pi)) {
        throw ValidationError("arc span must lie in (0, 2 pi) rad");
    }
    if (std::abs(mesh.length - arc.length()) > 1e-9 * arc.length()) {
        throw ValidationError("mesh does not span the arc length");
    }
    // Orthonormalise the plane axes so that the frames are exactly orthogonal.
    const Vec3 u = arc.u.normalized();
    const Vec3 v = (arc.v - arc.v.dot(u) * u).normalized();

    InitialGeometry g;
    for (double s : mesh.faces) {
        const ArcPoint p = arc_point(arc, u, v, s);
        g.r0_f.push_back(p.position);
        g.r0prime_f.push_back(p.tangent);
        g.lambda0_f.push_back(p.frame);
    }
    for (double s : mesh.centres) {
        const ArcPoint p = arc_point(arc, u, v, s);
        g.r0_c.push_back(p.position);
        g.r0prime_c.push_back(p.tangent);
        g.lambda0_c.push_back(p.frame);
    }
    g.up = v;
    return g;
}

double arc_crown_position(const ArcSpec& arc)
{
    // Height along v is R sin(t); its maximum is at t = pi/2 (mod 2 pi).
    const double dir = arc.clockwise ? -1.0 : 1.0;
    const double two_pi = 2.0 * std::numbers::pi;
    double best_s = 0.0;
    double best_h = std::sin(arc.start_angle);
    const double end_h = std::sin(arc.start_angle + dir * arc.span);
    if (end_h > best_h) {
        best_h = end_h;
        best_s = arc.length();
    }
    // Swept angle needed to reach t = pi/2 from the start.
    double sweep = dir * (std::numbers::pi / 2.0 - arc.start_angle);
    sweep = std::fmod(sweep, two_pi);
    if (sweep < 0.0) {
        sweep += two_pi;
    }
    if (sweep <= arc.span) {
        best_s = sweep * arc.radius;
    }
    return best_s;
}

} // namespace fvbeam
