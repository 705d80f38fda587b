// P1 finite elements: dof maps with periodic / Dirichlet / mean-zero
// constraints, sparse assembly of divergence-form elasticity (and scalar
// Laplace) operators, direct and CG solvers.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "perfhom/coefficient.hpp"
#include "perfhom/field.hpp"
#include "perfhom/mesh.hpp"
#include "perfhom/quadrature.hpp"

namespace perfhom {

class FemError : public std::runtime_error {
  public:
    explicit FemError(const std::string& msg) : std::runtime_error(msg) {}
};

// Full dof <-> reduced dof bookkeeping. Dirichlet dofs are eliminated,
// periodic slaves are merged into masters; the mean-zero constraint adds one
// Lagrange multiplier per component in the direct solver and is handled by
// kernel projection in CG.
class DofMap {
  public:
    enum Kind : std::uint8_t { kFree, kSlave, kFixed };

    int comps = 1;
    int n_full = 0;
    int n_reduced = 0;
    std::vector<Kind> kind;
    std::vector<int> target;         // free -> reduced index, slave -> master full dof
    std::vector<double> fixed_value; // full-dof indexed, valid where kind == kFixed

    int reduced_index(int full_dof) const {
        int d = full_dof;
        if (kind[d] == kSlave) d = target[d];
        return kind[d] == kFixed ? -1 : target[d];
    }
    double dirichlet_value(int full_dof) const {
        int d = full_dof;
        if (kind[d] == kSlave) d = target[d];
        return kind[d] == kFixed ? fixed_value[d] : 0.0;
    }
};

// Describes one variational problem on a TriMesh. `tensor` is the coefficient
// at a physical quadrature point (already composed with x/eps when needed);
// scalar problems (comps == 1) assemble the plain Laplacian.
struct EllipticProblem {
    const TriMesh* mesh = nullptr;
    int comps = 2;
    bool skip_holes = true;  // integrate over the perforated part only
    std::function<Tensor4(const Vec2&)> tensor;

    bool periodic = false;
    bool dirichlet = false;  // fix dofs on dirichlet_outer edges
    std::function<void(const Vec2&, double*)> dirichlet_value;
    bool mean_zero = false;

    std::function<void(const Vec2&, double*)> volumetric;       // F (comps values)
    // f with load -int f^a_i d_i phi^a; layout f[a*2+i]
    std::function<void(const Vec2&, double*)> divergence_data;
    const TriRule* stiffness_rule = &TriRule::degree1();
    const TriRule* load_rule = &TriRule::degree2();
};

struct LinearSystem {
    const TriMesh* mesh = nullptr;
    int comps = 1;
    bool skip_holes = false;
    DofMap dofs;
    Eigen::SparseMatrix<double> K;  // reduced, no Lagrange tail
    Eigen::VectorXd rhs;            // reduced
    bool mean_zero = false;
    // integral of each reduced basis function, per component (Lagrange rows)
    std::vector<Eigen::VectorXd> mean_rows;
};

DofMap build_dofmap(const EllipticProblem& prob);
LinearSystem assemble(const EllipticProblem& prob);
// extra loads against an existing system (same constraints/quadrature)
Eigen::VectorXd assemble_load(const EllipticProblem& prob, const LinearSystem& sys,
                              const std::function<void(const Vec2&, double*)>& volumetric,
                              const std::function<void(const Vec2&, double*)>& divergence_data);

enum class SolveMethod { direct, cg_jacobi };

struct SolveReport {
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Factors the (possibly mean-zero augmented) reduced system once; solve()
// accepts reduced right-hand sides. Direct uses SparseLU on the augmented
// saddle system / SimplicialLDLT on SPD systems; cg_jacobi uses a
// Jacobi-preconditioned CG with kernel projection for mean-zero problems.
class Factorization {
  public:
    Factorization(const LinearSystem& sys, SolveMethod method);
    ~Factorization();
    Eigen::VectorXd solve(const Eigen::VectorXd& reduced_rhs, SolveReport* report = nullptr) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Expand a reduced solution to full nodal values (slaves copied from masters,
// Dirichlet values filled in).
FieldOnMesh recover_field(const LinearSystem& sys, const Eigen::VectorXd& reduced);

// assemble + factor + solve + recover
FieldOnMesh solve_problem(const EllipticProblem& prob, SolveMethod method,
                          SolveReport* report = nullptr);

}  // namespace perfhom
