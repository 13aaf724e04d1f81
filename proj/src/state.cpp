#include "fvbeam/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fvbeam {

Material Material::from_products(double EA, double GA2, double GA3, double GJ, double EI2, double EI3)
{
    Material m;
    m.CN = Vec3(EA, GA2, GA3).asDiagonal();
    m.CM = Vec3(GJ, EI2, EI3).asDiagonal();
    validate(m);
    return m;
}

Section Section::circle(double radius)
{
    if (!(radius > 0.0)) {
        throw ValidationError("section radius must be positive");
    }
    const double pi = std::numbers::pi;
    const double r2 = radius * radius;
    Section s;
    s.area = pi * r2;
    s.shear_area2 = s.area;
    s.shear_area3 = s.area;
    s.inertia2 = 0.25 * pi * r2 * r2;
    s.inertia3 = s.inertia2;
    s.torsion = 2.0 * s.inertia2;
    return s;
}

Section Section::rectangle(double width, double height, TorsionModel torsion)
{
    if (!(width > 0.0) || !(height > 0.0)) {
        throw ValidationError("section dimensions must be positive");
    }
    Section s;
    s.area = width * height;
    s.shear_area2 = s.area;
    s.shear_area3 = s.area;
    // Axis 2 is the width direction, axis 3 the height direction.
    s.inertia2 = width * std::pow(height, 3) / 12.0;
    s.inertia3 = height * std::pow(width, 3) / 12.0;
    if (torsion == TorsionModel::Polar) {
        s.torsion = s.inertia2 + s.inertia3;
    } else {
        const double a = std::max(width, height);
        const double b = std::min(width, height);
        const double pi = std::numbers::pi;
        double sum = 0.0;
        for (int n = 1; n < 200; n += 2) {
            sum += std::tanh(n * pi * a / (2.0 * b)) / std::pow(n, 5);
        }
        s.torsion = a * std::pow(b, 3) / 3.0 * (1.0 - 192.0 / std::pow(pi, 5) * (b / a) * sum);
    }
    return s;
}

Material Section::material(double E, double G) const
{
    return Material::from_products(E * area, G * shear_area2, G * shear_area3, G * torsion, E * inertia2,
                                   E * inertia3);
}

void validate(const Material& mat)
{
    for (const Mat3* C : {&mat.CN, &mat.CM}) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double v = (*C)(i, j);
                if (!std::isfinite(v) || (i == j && !(v > 0.0)) || (i != j && v != 0.0)) {
                    throw ValidationError("constitutive matrices must be diagonal with positive entries");
                }
            }
        }
    }
}

BeamState initial_state(const BeamMesh& mesh, const InitialGeometry& geom)
{
    const std::size_t M = mesh.cells;
    const std::size_t F = mesh.face_count();
    BeamState s;
    s.w_c.assign(M, Vec3::Zero());
    s.psi_c.assign(M, Vec3::Zero());
    s.lambda_c.assign(M, Mat3::Identity());
    s.lambda_f.assign(F, Mat3::Identity());
    s.K_f.assign(F, Vec3::Zero());
    s.Gamma_f.assign(F, Vec3::Zero());
    s.n_f.assign(F, Vec3::Zero());
    s.m_f.assign(F, Vec3::Zero());
    s.w_f.assign(F, Vec3::Zero());
    s.psi_f.assign(F, Vec3::Zero());
    s.rprime_f = geom.r0prime_f;
    return s;
}

Correction Correction::zero(std::size_t cells)
{
    Correction c;
    c.dw.assign(cells, Vec3::Zero());
    c.dpsi.assign(cells, Vec3::Zero());
    return c;
}

FaceIncrements interpolate_to_faces(const Correction& corr, const BeamMesh& mesh)
{
    const std::size_t M = mesh.cells;
    const double L = mesh.cell_length;
    const double dx = mesh.boundary_distance();

    FaceIncrements fi;
    fi.dw.resize(M + 1);
    fi.dpsi.resize(M + 1);
    fi.dw_prime.resize(M + 1);
    fi.dpsi_prime.resize(M + 1);

    for (std::size_t f = 1; f < M; ++f) {
        const std::size_t C = f - 1;
        const std::size_t E = f;
        const double g = mesh.east_weight[C];
        fi.dw[f] = g * corr.dw[E] + (1.0 - g) * corr.dw[C];
        fi.dpsi[f] = g * corr.dpsi[E] + (1.0 - g) * corr.dpsi[C];
        fi.dw_prime[f] = (corr.dw[E] - corr.dw[C]) / L;
        fi.dpsi_prime[f] = (corr.dpsi[E] - corr.dpsi[C]) / L;
    }
    for (End end : {End::West, End::East}) {
        const std::size_t f = face_of(end, mesh);
        const std::size_t C = cell_of(end, mesh);
        const std::size_t k = static_cast<std::size_t>(end);
        const double sgn = sign_of(end);
        fi.dw[f] = corr.dw_boundary[k];
        fi.dpsi[f] = corr.dpsi_boundary[k];
        fi.dw_prime[f] = sgn * (corr.dw_boundary[k] - corr.dw[C]) / dx;
        fi.dpsi_prime[f] = sgn * (corr.dpsi_boundary[k] - corr.dpsi[C]) / dx;
    }
    return fi;
}

void update_state(BeamState& state, const Correction& corr, const InitialGeometry& geom,
                  const BeamMesh& mesh, const Material& mat)
{
    const std::size_t M = mesh.cells;

    // Face increments first: the tangent operator may reject the step, in
    // which case the state must be left untouched.
    const FaceIncrements fi = interpolate_to_faces(corr, mesh);
    std::vector<Mat3> dT(M + 1);
    for (std::size_t f = 0; f <= M; ++f) {
        dT[f] = tangent(fi.dpsi[f]);
    }

    for (std::size_t c = 0; c < M; ++c) {
        state.w_c[c] += corr.dw[c];
        state.psi_c[c] += state.lambda_c[c].transpose() * corr.dpsi[c];
    }

    for (std::size_t f = 0; f <= M; ++f) {
        const Mat3 total_prev = state.total_rotation_face(geom, f);
        state.K_f[f] += total_prev.transpose() * (dT[f].transpose() * fi.dpsi_prime[f]);
        state.psi_f[f] += fi.dpsi[f];
        state.lambda_f[f] = exp_so3(fi.dpsi[f]) * state.lambda_f[f];
        state.w_f[f] += fi.dw[f];
    }

    for (std::size_t c = 0; c < M; ++c) {
        state.lambda_c[c] = exp_so3(corr.dpsi[c]) * state.lambda_c[c];
    }

    refresh_face_resultants(state, geom, mesh, mat);
}

void refresh_face_resultants(BeamState& state, const InitialGeometry& geom, const BeamMesh& mesh,
                             const Material& mat)
{
    const std::size_t M = mesh.cells;
    const double L = mesh.cell_length;
    const double dx = mesh.boundary_distance();

    for (std::size_t f = 0; f <= M; ++f) {
        Vec3 w_prime;
        if (f == 0) {
            w_prime = (state.w_c[0] - state.w_f[0]) / dx;
        } else if (f == M) {
            w_prime = (state.w_f[M] - state.w_c[M - 1]) / dx;
        } else {
            w_prime = (state.w_c[f] - state.w_c[f - 1]) / L;
        }
        state.rprime_f[f] = geom.r0prime_f[f] + w_prime;

        const Mat3 lambda0T = geom.lambda0_f[f].transpose();
        state.Gamma_f[f] =
            lambda0T * (state.lambda_f[f].transpose() * state.rprime_f[f]) - lambda0T * geom.r0prime_f[f];

        const Mat3 total = state.total_rotation_face(geom, f);
        state.n_f[f] = total * (mat.CN * state.Gamma_f[f]);
        state.m_f[f] = total * (mat.CM * state.K_f[f]);
    }
}

double strain_energy(const BeamState& state, const BeamMesh& mesh, const Material& mat)
{
    auto density = [&](std::size_t f) {
        const Vec3& G = state.Gamma_f[f];
        const Vec3& K = state.K_f[f];
        return 0.5 * G.dot(mat.CN * G) + 0.5 * K.dot(mat.CM * K);
    };
    double energy = 0.0;
    for (std::size_t c = 0; c < mesh.cells; ++c) {
        energy += mesh.cell_length * 0.5 * (density(c) + density(c + 1));
    }
    return energy;
}

std::vector<Vec3> rotational_strain_by_definition(const BeamState& state, const InitialGeometry& geom,
                                                  const BeamMesh& mesh)
{
    std::vector<Vec3> K(mesh.cells);
    for (std::size_t c = 0; c < mesh.cells; ++c) {
        const Mat3 west = state.total_rotation_face(geom, c);
        const Mat3 east = state.total_rotation_face(geom, c + 1);
        const Mat3 derivative = (east - west) / mesh.cell_length;
        K[c] = vee(state.total_rotation_cell(geom, c).transpose() * derivative);
    }
    return K;
}

std::vector<Vec3> cell_rotational_strain(const BeamState& state, const BeamMesh& mesh)
{
    std::vector<Vec3> K(mesh.cells);
    for (std::size_t c = 0; c < mesh.cells; ++c) {
        K[c] = 0.5 * (state.K_f[c] + state.K_f[c + 1]);
    }
    return K;
}

} // namespace fvbeam
