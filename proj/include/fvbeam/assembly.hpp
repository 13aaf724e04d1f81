#pragma once

#include "fvbeam/boundary.hpp"
#include "fvbeam/coefficients.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace fvbeam {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat36 = Eigen::Matrix<double, 3, 6>;
using Stencil = Eigen::Matrix<double, 3, 18>;

/// Distributed loads per unit length at each cell, fixed in space. The
/// assembly scales them by the load factor.
struct CellLoads {
    std::vector<Vec3> force;
    std::vector<Vec3> torque;

    static CellLoads zero(std::size_t cells);
};

/// A face quantity as an affine function of the corrections of the two
/// cells sharing the face (left = west neighbour, right = east neighbour).
/// Boundary faces only depend on their single adjacent cell.
struct AffineFaceMap {
    Vec3 c = Vec3::Zero();
    Mat36 left = Mat36::Zero();
    Mat36 right = Mat36::Zero();
};

/// Face increments and face derivatives of the increments.
struct FaceModel {
    AffineFaceMap dw;
    AffineFaceMap dpsi;
    AffineFaceMap dw_prime;
    AffineFaceMap dpsi_prime;
};

std::vector<FaceModel> build_face_models(const BeamMesh& mesh, const std::array<BoundaryClosure, 2>& closures);

/// Linearised n, m and r' x n at every face.
struct FaceResultants {
    AffineFaceMap n;
    AffineFaceMap m;
    AffineFaceMap q;
};

std::vector<FaceResultants> linearise_resultants(const std::vector<FaceModel>& models,
                                                 const CoefficientSet& face_coeffs);

/// Three balance rows for one cell over the columns [W | C | E], each block
/// ordered (dw, dpsi). `rhs` is minus the value of the balance at zero
/// correction.
struct RowStencil {
    Stencil A = Stencil::Zero();
    Vec3 rhs = Vec3::Zero();
};

/// n_e - n_w + f_C L_C = 0
RowStencil assemble_force_row(const std::vector<FaceResultants>& faces, const BeamMesh& mesh, const Vec3& f_C,
                              std::size_t cell);

/// m_e - m_w + L_C/2 (r'_e x n_e + r'_w x n_w) + t_C L_C = 0
RowStencil assemble_moment_row(const std::vector<FaceResultants>& faces, const BeamMesh& mesh, const Vec3& t_C,
                               std::size_t cell);

struct BlockRow {
    Mat6 AW = Mat6::Zero();
    Mat6 AC = Mat6::Zero();
    Mat6 AE = Mat6::Zero();
    Vec6 R = Vec6::Zero();
};

struct BlockTridiagonalSystem {
    std::vector<BlockRow> rows;

    std::size_t size() const { return rows.size(); }
    /// y = A x for a stacked vector of length 6M.
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd dense() const;
    Eigen::VectorXd rhs() const;
};

struct AssembledSystem {
    BlockTridiagonalSystem system;
    std::array<BoundaryClosure, 2> closures;
};

/// Linearises the discrete balance about `state` at load factor `lambda`.
AssembledSystem assemble_system(const BeamState& state, const InitialGeometry& geom, const BeamMesh& mesh,
                                const Material& mat, const CellLoads& loads,
                                const std::array<BoundarySpec, 2>& bcs, double lambda);

/// Nonlinear discrete balance of every cell evaluated from the stored face
/// resultants, stacked as (force, moment).
std::vector<Vec6> discrete_residual(const BeamState& state, const BeamMesh& mesh, const CellLoads& loads,
                                    double lambda);

/// Turns a stacked solution vector into a correction, recovering the
/// boundary-face increments from the closures.
Correction expand_solution(const std::vector<Vec6>& x, const std::array<BoundaryClosure, 2>& closures);

} // namespace fvbeam
