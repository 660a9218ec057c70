#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fcb/basis.hpp"
#include "fcb/model.hpp"
#include "fcb/parallel.hpp"

namespace fcb {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Planar force-method matrices. Member forces are three components per
// member (N, V, M) acting on the member at its "a" end, in local axes:
//   N = c Fx + s Fy,  V = s Fx - c Fy,  M = Mz
// where (c, s) is the a->b direction and (Fx, Fy, Mz) the global force the
// joint exerts on the member. With this V the bending moment at distance t
// from the a end is M + t V. Rows 3i..3i+2 belong to member index i.

/// Cantilever flexibility of one member in (N, V, M):
///   [[L/EA, 0, 0], [0, L^3/3EI, L^2/2EI], [0, L^2/2EI, L/EI]]
Eigen::Matrix3d member_flexibility(const Section& section, double length);

/// Block-diagonal unassembled flexibility, one 3x3 block per member.
struct UnassembledFlexibility {
    std::vector<Eigen::Matrix3d> blocks;

    Matrix dense() const;
    /// Fm * x without forming the dense matrix.
    Matrix apply(const Matrix& x) const;
};

UnassembledFlexibility unassembled_flexibility(const StructuralModel& model);

/// Self-equilibrating stress systems, three columns per cycle. Each cycle is
/// cut at the "a" end of its generator member and loaded by unit axial,
/// shear and moment bi-actions (generator local axes) carried around the loop.
Matrix build_b1(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis& basis);

struct NodalLoad {
    int node = 0;  // model node id
    double fx = 0.0;
    double fy = 0.0;
    double moment = 0.0;
};

struct LoadCase {
    std::vector<NodalLoad> loads;
};

/// One column of B0 per non-zero load component, in load-case order.
struct LoadComponent {
    int node = 0;
    int direction = 0;  // 0: fx, 1: fy, 2: moment
};

struct ParticularSolution {
    Matrix b0;  // 3M x n
    Vector p;   // n load magnitudes
    std::vector<LoadComponent> components;
};

/// Particular solution on the primary structure: the SRT rooted at the ground.
/// Each unit load travels to the ground along its tree path.
ParticularSolution build_b0(const StructuralModel& model, const WeightedGraph& graph, const LoadCase& loads);

/// G = B1^t Fm B1, symmetrised and checked positive definite.
/// The parallel path only multiplies members shared by both cycle blocks.
Matrix assemble_g(const Matrix& b1, const UnassembledFlexibility& fm, Execution execution = Execution::parallel);

struct ForceSolution {
    Vector q;   // redundants
    Vector r;   // member forces
    Vector v0;  // displacements along the applied load components
    double compatibility_residual = 0.0;  // |B1^t Fm r| / |B1^t Fm B0 p|
};

ForceSolution solve_force_method(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis& basis,
                                 const LoadCase& loads);

/// Largest nodal force imbalance at free joints for a member-force vector
/// and the applied loads, relative to the largest member force component.
double equilibrium_residual(const StructuralModel& model, const Vector& r, const LoadCase& applied = {});

}  // namespace fcb
