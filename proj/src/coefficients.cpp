#include "fvbeam/coefficients.hpp"

namespace fvbeam {

PointCoefficients coefficients_at(const RotationMatrix& total, const Vec3& Gamma, const Vec3& K,
                                  const Vec3& rprime, const Material& mat)
{
    PointCoefficients c;
    const Mat3 r_hat = hat(rprime);

    c.exp_w = total * (mat.CN * Gamma);
    const Mat3 n_hat = hat(c.exp_w);
    c.ww = total * mat.CN * total.transpose();
    c.wpsi = c.ww * r_hat - n_hat;

    c.exp_m = total * (mat.CM * K);
    c.mpsi = -hat(c.exp_m);
    c.mpsi2 = total * mat.CM * total.transpose();

    c.exp_mw = r_hat * c.exp_w;
    c.mw = r_hat * c.ww - n_hat;
    c.mwpsi = r_hat * c.ww * r_hat - r_hat * n_hat;
    return c;
}

CoefficientSet compute_coefficients(const BeamState& state, const InitialGeometry& geom,
                                    const BeamMesh& mesh, const Material& mat)
{
    CoefficientSet out(mesh.cells);
    for (std::size_t c = 0; c < mesh.cells; ++c) {
        const Vec3 Gamma = 0.5 * (state.Gamma_f[c] + state.Gamma_f[c + 1]);
        const Vec3 K = 0.5 * (state.K_f[c] + state.K_f[c + 1]);
        const Vec3 rprime = 0.5 * (state.rprime_f[c] + state.rprime_f[c + 1]);
        out[c] = coefficients_at(state.total_rotation_cell(geom, c), Gamma, K, rprime, mat);
    }
    return out;
}

CoefficientSet compute_face_coefficients(const BeamState& state, const InitialGeometry& geom,
                                         const BeamMesh& mesh, const Material& mat)
{
    CoefficientSet out(mesh.face_count());
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        out[f] = coefficients_at(state.total_rotation_face(geom, f), state.Gamma_f[f], state.K_f[f],
                                 state.rprime_f[f], mat);
    }
    return out;
}

namespace {

PointCoefficients blend(const PointCoefficients& a, const PointCoefficients& b, double g)
{
    // g (a) + (1 - g) (b)
    auto mix = [g](const auto& x, const auto& y) { return (g * x + (1.0 - g) * y).eval(); };
    PointCoefficients c;
    c.exp_w = mix(a.exp_w, b.exp_w);
    c.exp_m = mix(a.exp_m, b.exp_m);
    c.exp_mw = mix(a.exp_mw, b.exp_mw);
    c.ww = mix(a.ww, b.ww);
    c.wpsi = mix(a.wpsi, b.wpsi);
    c.mpsi = mix(a.mpsi, b.mpsi);
    c.mpsi2 = mix(a.mpsi2, b.mpsi2);
    c.mw = mix(a.mw, b.mw);
    c.mwpsi = mix(a.mwpsi, b.mwpsi);
    return c;
}

} // namespace

CoefficientSet interpolate_coefficients(const CoefficientSet& cells, const BeamMesh& mesh)
{
    const std::size_t M = mesh.cells;
    CoefficientSet out(M + 1);
    out[0] = cells[0];
    out[M] = cells[M - 1];
    for (std::size_t f = 1; f < M; ++f) {
        out[f] = blend(cells[f], cells[f - 1], mesh.east_weight[f - 1]);
    }
    return out;
}

} // namespace fvbeam
