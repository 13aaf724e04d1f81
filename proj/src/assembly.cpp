#include "fvbeam/assembly.hpp"

namespace fvbeam {

CellLoads CellLoads::zero(std::size_t cells)
{
    CellLoads l;
    l.force.assign(cells, Vec3::Zero());
    l.torque.assign(cells, Vec3::Zero());
    return l;
}

namespace {

Mat36 pick_w(const Mat3& m)
{
    Mat36 out = Mat36::Zero();
    out.leftCols<3>() = m;
    return out;
}

Mat36 pick_psi(const Mat3& m)
{
    Mat36 out = Mat36::Zero();
    out.rightCols<3>() = m;
    return out;
}

AffineFaceMap combine(const Vec3& c0, const Mat3& A, const AffineFaceMap& a, const Mat3& B, const AffineFaceMap& b)
{
    AffineFaceMap out;
    out.c = c0 + A * a.c + B * b.c;
    out.left = A * a.left + B * b.left;
    out.right = A * a.right + B * b.right;
    return out;
}

} // namespace

std::vector<FaceModel> build_face_models(const BeamMesh& mesh, const std::array<BoundaryClosure, 2>& closures)
{
    const std::size_t M = mesh.cells;
    const double L = mesh.cell_length;
    const double dx = mesh.boundary_distance();
    const Mat3 I = Mat3::Identity();

    std::vector<FaceModel> models(M + 1);
    for (std::size_t f = 1; f < M; ++f) {
        const double g = mesh.east_weight[f - 1];
        FaceModel& fm = models[f];
        fm.dw.left = pick_w((1.0 - g) * I);
        fm.dw.right = pick_w(g * I);
        fm.dpsi.left = pick_psi((1.0 - g) * I);
        fm.dpsi.right = pick_psi(g * I);
        fm.dw_prime.left = pick_w(-I / L);
        fm.dw_prime.right = pick_w(I / L);
        fm.dpsi_prime.left = pick_psi(-I / L);
        fm.dpsi_prime.right = pick_psi(I / L);
    }

    for (End end : {End::West, End::East}) {
        const BoundaryClosure& cl = closures[static_cast<std::size_t>(end)];
        const double sgn = sign_of(end);

        Mat36 bw;
        bw << cl.w_w, cl.w_psi;
        const Mat36 bpsi = pick_psi(cl.psi_psi);

        FaceModel& fm = models[face_of(end, mesh)];
        AffineFaceMap* maps[] = {&fm.dw, &fm.dpsi, &fm.dw_prime, &fm.dpsi_prime};
        const Mat36 blocks[] = {bw, bpsi, sgn * (bw - pick_w(I)) / dx, sgn * (bpsi - pick_psi(I)) / dx};
        const Vec3 consts[] = {cl.w0, cl.psi0, sgn * cl.w0 / dx, sgn * cl.psi0 / dx};
        for (int k = 0; k < 4; ++k) {
            maps[k]->c = consts[k];
            // The west boundary face has its cell on the right.
            (end == End::West ? maps[k]->right : maps[k]->left) = blocks[k];
        }
    }
    return models;
}

std::vector<FaceResultants> linearise_resultants(const std::vector<FaceModel>& models,
                                                 const CoefficientSet& face_coeffs)
{
    std::vector<FaceResultants> out(models.size());
    for (std::size_t f = 0; f < models.size(); ++f) {
        const FaceModel& fm = models[f];
        const PointCoefficients& k = face_coeffs[f];
        out[f].n = combine(k.exp_w, k.ww, fm.dw_prime, k.wpsi, fm.dpsi);
        out[f].m = combine(k.exp_m, k.mpsi, fm.dpsi, k.mpsi2, fm.dpsi_prime);
        out[f].q = combine(k.exp_mw, k.mw, fm.dw_prime, k.mwpsi, fm.dpsi);
    }
    return out;
}

namespace {

// Adds s * (map of face between columns `lo` and `lo + 6`) into the stencil.
void scatter(RowStencil& row, const AffineFaceMap& map, double s, int lo)
{
    row.A.middleCols<6>(lo) += s * map.left;
    row.A.middleCols<6>(lo + 6) += s * map.right;
    row.rhs -= s * map.c;
}

} // namespace

RowStencil assemble_force_row(const std::vector<FaceResultants>& faces, const BeamMesh& mesh, const Vec3& f_C,
                              std::size_t cell)
{
    RowStencil row;
    scatter(row, faces[cell + 1].n, 1.0, 6);
    scatter(row, faces[cell].n, -1.0, 0);
    row.rhs -= f_C * mesh.cell_length;
    return row;
}

RowStencil assemble_moment_row(const std::vector<FaceResultants>& faces, const BeamMesh& mesh, const Vec3& t_C,
                               std::size_t cell)
{
    const double half = 0.5 * mesh.cell_length;
    RowStencil row;
    scatter(row, faces[cell + 1].m, 1.0, 6);
    scatter(row, faces[cell].m, -1.0, 0);
    scatter(row, faces[cell + 1].q, half, 6);
    scatter(row, faces[cell].q, half, 0);
    row.rhs -= t_C * mesh.cell_length;
    return row;
}

Eigen::VectorXd BlockTridiagonalSystem::apply(const Eigen::VectorXd& x) const
{
    const Eigen::Index M = static_cast<Eigen::Index>(rows.size());
    Eigen::VectorXd y = Eigen::VectorXd::Zero(6 * M);
    for (Eigen::Index i = 0; i < M; ++i) {
        const BlockRow& r = rows[static_cast<std::size_t>(i)];
        y.segment<6>(6 * i) = r.AC * x.segment<6>(6 * i);
        if (i > 0) y.segment<6>(6 * i) += r.AW * x.segment<6>(6 * (i - 1));
        if (i + 1 < M) y.segment<6>(6 * i) += r.AE * x.segment<6>(6 * (i + 1));
    }
    return y;
}

Eigen::MatrixXd BlockTridiagonalSystem::dense() const
{
    const Eigen::Index M = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(6 * M, 6 * M);
    for (Eigen::Index i = 0; i < M; ++i) {
        const BlockRow& r = rows[static_cast<std::size_t>(i)];
        A.block<6, 6>(6 * i, 6 * i) = r.AC;
        if (i > 0) A.block<6, 6>(6 * i, 6 * (i - 1)) = r.AW;
        if (i + 1 < M) A.block<6, 6>(6 * i, 6 * (i + 1)) = r.AE;
    }
    return A;
}

Eigen::VectorXd BlockTridiagonalSystem::rhs() const
{
    Eigen::VectorXd b(6 * static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        b.segment<6>(6 * static_cast<Eigen::Index>(i)) = rows[i].R;
    }
    return b;
}

AssembledSystem assemble_system(const BeamState& state, const InitialGeometry& geom, const BeamMesh& mesh,
                                const Material& mat, const CellLoads& loads,
                                const std::array<BoundarySpec, 2>& bcs, double lambda)
{
    const std::size_t M = mesh.cells;
    const CoefficientSet coeffs = compute_face_coefficients(state, geom, mesh, mat);

    AssembledSystem out;
    for (End end : {End::West, End::East}) {
        const auto k = static_cast<std::size_t>(end);
        out.closures[k] = close_boundary(bcs[k], lambda, end, state, coeffs[face_of(end, mesh)], mesh);
    }

    const auto faces = linearise_resultants(build_face_models(mesh, out.closures), coeffs);

    out.system.rows.resize(M);
    for (std::size_t c = 0; c < M; ++c) {
        const RowStencil force = assemble_force_row(faces, mesh, lambda * loads.force[c], c);
        const RowStencil moment = assemble_moment_row(faces, mesh, lambda * loads.torque[c], c);
        BlockRow& row = out.system.rows[c];
        row.AW << force.A.leftCols<6>(), moment.A.leftCols<6>();
        row.AC << force.A.middleCols<6>(6), moment.A.middleCols<6>(6);
        row.AE << force.A.rightCols<6>(), moment.A.rightCols<6>();
        row.R << force.rhs, moment.rhs;
    }
    out.system.rows.front().AW.setZero();
    out.system.rows.back().AE.setZero();
    return out;
}

std::vector<Vec6> discrete_residual(const BeamState& state, const BeamMesh& mesh, const CellLoads& loads,
                                    double lambda)
{
    const double L = mesh.cell_length;
    std::vector<Vec6> res(mesh.cells);
    for (std::size_t c = 0; c < mesh.cells; ++c) {
        const std::size_t w = c;
        const std::size_t e = c + 1;
        const Vec3 qw = state.rprime_f[w].cross(state.n_f[w]);
        const Vec3 qe = state.rprime_f[e].cross(state.n_f[e]);
        res[c] << state.n_f[e] - state.n_f[w] + lambda * loads.force[c] * L,
            state.m_f[e] - state.m_f[w] + 0.5 * L * (qe + qw) + lambda * loads.torque[c] * L;
    }
    return res;
}

Correction expand_solution(const std::vector<Vec6>& x, const std::array<BoundaryClosure, 2>& closures)
{
    const std::size_t M = x.size();
    Correction corr = Correction::zero(M);
    for (std::size_t c = 0; c < M; ++c) {
        corr.dw[c] = x[c].head<3>();
        corr.dpsi[c] = x[c].tail<3>();
    }
    for (End end : {End::West, End::East}) {
        const auto k = static_cast<std::size_t>(end);
        const std::size_t c = end == End::West ? 0 : M - 1;
        const BoundaryIncrement b = recover_boundary_kinematics(closures[k], corr.dw[c], corr.dpsi[c]);
        corr.dw_boundary[k] = b.dw;
        corr.dpsi_boundary[k] = b.dpsi;
    }
    return corr;
}

} // namespace fvbeam
