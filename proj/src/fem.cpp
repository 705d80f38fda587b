#include "perfhom/fem.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

namespace perfhom {

namespace {

// loads are evaluated with their own rule; entries land in the reduced rhs
void accumulate_load(const EllipticProblem& prob, const DofMap& dofs, Eigen::VectorXd& rhs,
                     const std::function<void(const Vec2&, double*)>& volumetric,
                     const std::function<void(const Vec2&, double*)>& divergence_data) {
    if (!volumetric && !divergence_data) return;
    const TriMesh& mesh = *prob.mesh;
    const int comps = prob.comps;
    std::vector<double> F(comps), fdiv(comps * 2);
    for (int t = 0; t < mesh.num_tris(); ++t) {
        if (prob.skip_holes && mesh.in_hole(t)) continue;
        const auto& v = mesh.tris[t];
        const auto g = mesh.shape_gradients(t);
        for (const auto& qp : tri_quadrature(mesh, t, *prob.load_rule)) {
            const auto l = mesh.barycentric(t, qp.p);
            if (volumetric) {
                volumetric(qp.p, F.data());
                for (int a = 0; a < 3; ++a)
                    for (int c = 0; c < comps; ++c) {
                        const int rd = dofs.reduced_index(v[a] * comps + c);
                        if (rd >= 0) rhs[rd] += qp.w * l[a] * F[c];
                    }
            }
            if (divergence_data) {
                divergence_data(qp.p, fdiv.data());
                for (int a = 0; a < 3; ++a)
                    for (int c = 0; c < comps; ++c) {
                        const int rd = dofs.reduced_index(v[a] * comps + c);
                        if (rd < 0) continue;
                        rhs[rd] -= qp.w * (fdiv[c * 2 + 0] * g[a].x + fdiv[c * 2 + 1] * g[a].y);
                    }
            }
        }
    }
}

}  // namespace

DofMap build_dofmap(const EllipticProblem& prob) {
    const TriMesh& mesh = *prob.mesh;
    const int comps = prob.comps;
    DofMap dofs;
    dofs.comps = comps;
    dofs.n_full = mesh.num_nodes() * comps;
    dofs.kind.assign(dofs.n_full, DofMap::kFree);
    dofs.target.assign(dofs.n_full, -1);
    dofs.fixed_value.assign(dofs.n_full, 0.0);

    if (prob.periodic) {
        for (const auto& pp : mesh.periodic_pairs)
            for (int c = 0; c < comps; ++c) {
                dofs.kind[pp[0] * comps + c] = DofMap::kSlave;
                dofs.target[pp[0] * comps + c] = pp[1] * comps + c;
            }
    }
    if (prob.dirichlet) {
        std::vector<double> gval(comps);
        for (const auto& be : mesh.boundary_edges) {
            if (be.tag != EdgeTag::dirichlet_outer) continue;
            for (int node : {be.a, be.b}) {
                if (prob.dirichlet_value)
                    prob.dirichlet_value(mesh.nodes[node], gval.data());
                else
                    std::fill(gval.begin(), gval.end(), 0.0);
                for (int c = 0; c < comps; ++c) {
                    const int fd = node * comps + c;
                    if (dofs.kind[fd] == DofMap::kSlave)
                        throw FemError("dof is both periodic slave and Dirichlet");
                    dofs.kind[fd] = DofMap::kFixed;
                    dofs.fixed_value[fd] = gval[c];
                }
            }
        }
    }
    int next = 0;
    for (int d = 0; d < dofs.n_full; ++d)
        if (dofs.kind[d] == DofMap::kFree) dofs.target[d] = next++;
    dofs.n_reduced = next;
    for (int d = 0; d < dofs.n_full; ++d)
        if (dofs.kind[d] == DofMap::kSlave && dofs.kind[dofs.target[d]] == DofMap::kSlave)
            throw FemError("chained periodic pairs are not supported");
    return dofs;
}

LinearSystem assemble(const EllipticProblem& prob) {
    if (!prob.mesh) throw FemError("no mesh");
    const TriMesh& mesh = *prob.mesh;
    const int comps = prob.comps;
    if (comps == 2 && !prob.tensor) throw FemError("elasticity problem needs a coefficient");

    LinearSystem sys;
    sys.mesh = prob.mesh;
    sys.comps = comps;
    sys.skip_holes = prob.skip_holes;
    sys.mean_zero = prob.mean_zero;
    sys.dofs = build_dofmap(prob);
    sys.rhs = Eigen::VectorXd::Zero(sys.dofs.n_reduced);

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve((size_t)mesh.num_tris() * 9 * comps * comps);
    const int nloc = 3 * comps;
    std::vector<double> Ke(nloc * nloc);

    for (int t = 0; t < mesh.num_tris(); ++t) {
        if (prob.skip_holes && mesh.in_hole(t)) continue;
        const auto& v = mesh.tris[t];
        const auto g = mesh.shape_gradients(t);
        std::fill(Ke.begin(), Ke.end(), 0.0);
        for (const auto& qp : tri_quadrature(mesh, t, *prob.stiffness_rule)) {
            if (comps == 1) {
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) Ke[a * 3 + b] += qp.w * g[a].dot(g[b]);
            } else {
                const Tensor4 A = prob.tensor(qp.p);
                if (A.symmetry_defect() > 1e-10 * (std::abs(A(0, 0, 0, 0)) + 1.0))
                    throw FemError("coefficient violates the elasticity symmetries");
                for (int a = 0; a < 3; ++a) {
                    const double gi[2] = {g[a].x, g[a].y};
                    for (int b = 0; b < 3; ++b) {
                        const double gj[2] = {g[b].x, g[b].y};
                        for (int al = 0; al < 2; ++al)
                            for (int be = 0; be < 2; ++be) {
                                double s = 0.0;
                                for (int i = 0; i < 2; ++i)
                                    for (int j = 0; j < 2; ++j) s += A(i, al, j, be) * gj[j] * gi[i];
                                Ke[(a * 2 + al) * nloc + (b * 2 + be)] += qp.w * s;
                            }
                    }
                }
            }
        }
        for (int a = 0; a < 3; ++a)
            for (int ca = 0; ca < comps; ++ca) {
                const int fa = v[a] * comps + ca;
                const int ra = sys.dofs.reduced_index(fa);
                if (ra < 0) continue;
                for (int b = 0; b < 3; ++b)
                    for (int cb = 0; cb < comps; ++cb) {
                        const int fb = v[b] * comps + cb;
                        const double kab = Ke[(a * comps + ca) * nloc + (b * comps + cb)];
                        const int rb = sys.dofs.reduced_index(fb);
                        if (rb >= 0)
                            trips.emplace_back(ra, rb, kab);
                        else
                            sys.rhs[ra] -= kab * sys.dofs.dirichlet_value(fb);
                    }
            }
    }
    sys.K.resize(sys.dofs.n_reduced, sys.dofs.n_reduced);
    sys.K.setFromTriplets(trips.begin(), trips.end());

    if (prob.mean_zero) {
        sys.mean_rows.assign(comps, Eigen::VectorXd::Zero(sys.dofs.n_reduced));
        for (int t = 0; t < mesh.num_tris(); ++t) {
            if (prob.skip_holes && mesh.in_hole(t)) continue;
            const double third = mesh.tri_area(t) / 3.0;
            for (int a = 0; a < 3; ++a)
                for (int c = 0; c < comps; ++c) {
                    const int rd = sys.dofs.reduced_index(mesh.tris[t][a] * comps + c);
                    if (rd >= 0) sys.mean_rows[c][rd] += third;
                }
        }
    }
    accumulate_load(prob, sys.dofs, sys.rhs, prob.volumetric, prob.divergence_data);
    return sys;
}

Eigen::VectorXd assemble_load(const EllipticProblem& prob, const LinearSystem& sys,
                              const std::function<void(const Vec2&, double*)>& volumetric,
                              const std::function<void(const Vec2&, double*)>& divergence_data) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sys.dofs.n_reduced);
    accumulate_load(prob, sys.dofs, rhs, volumetric, divergence_data);
    return rhs;
}

// ---------------------------------------------------------------------------

struct Factorization::Impl {
    const LinearSystem* sys = nullptr;
    SolveMethod method = SolveMethod::direct;
    // direct
    std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt;
    std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu;
    Eigen::SparseMatrix<double> augmented;
    // cg
    Eigen::VectorXd inv_diag;

    int n_lag() const { return sys->mean_zero ? (int)sys->mean_rows.size() : 0; }

    void project_kernel(Eigen::VectorXd& x) const {
        // kernel of the periodic operator: constants per component
        const int comps = sys->comps;
        const auto& dofs = sys->dofs;
        std::vector<double> mean(comps, 0.0);
        std::vector<int> count(comps, 0);
        for (int d = 0; d < dofs.n_full; ++d) {
            if (dofs.kind[d] != DofMap::kFree) continue;
            mean[d % comps] += x[dofs.target[d]];
            count[d % comps] += 1;
        }
        for (int c = 0; c < comps; ++c) mean[c] /= std::max(1, count[c]);
        for (int d = 0; d < dofs.n_full; ++d)
            if (dofs.kind[d] == DofMap::kFree) x[dofs.target[d]] -= mean[d % comps];
    }
};

Factorization::Factorization(const LinearSystem& sys, SolveMethod method)
    : impl_(new Impl) {
    impl_->sys = &sys;
    impl_->method = method;
    if (method == SolveMethod::direct) {
        if (sys.mean_zero) {
            const int n = sys.dofs.n_reduced, k = (int)sys.mean_rows.size();
            std::vector<Eigen::Triplet<double>> trips;
            trips.reserve(sys.K.nonZeros() + 2 * (size_t)n * k);
            for (int col = 0; col < sys.K.outerSize(); ++col)
                for (Eigen::SparseMatrix<double>::InnerIterator it(sys.K, col); it; ++it)
                    trips.emplace_back((int)it.row(), (int)it.col(), it.value());
            for (int c = 0; c < k; ++c)
                for (int i = 0; i < n; ++i) {
                    const double w = sys.mean_rows[c][i];
                    if (w != 0.0) {
                        trips.emplace_back(n + c, i, w);
                        trips.emplace_back(i, n + c, w);
                    }
                }
            impl_->augmented.resize(n + k, n + k);
            impl_->augmented.setFromTriplets(trips.begin(), trips.end());
            impl_->lu = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
            impl_->lu->compute(impl_->augmented);
            if (impl_->lu->info() != Eigen::Success)
                throw FemError("sparse LU factorization failed");
        } else {
            impl_->ldlt = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
            impl_->ldlt->compute(sys.K);
            if (impl_->ldlt->info() != Eigen::Success)
                throw FemError("sparse LDLT factorization failed (singular system?)");
        }
    } else {
        impl_->inv_diag = Eigen::VectorXd::Ones(sys.dofs.n_reduced);
        for (int i = 0; i < sys.K.outerSize(); ++i)
            for (Eigen::SparseMatrix<double>::InnerIterator it(sys.K, i); it; ++it)
                if (it.row() == it.col() && it.value() > 0.0) impl_->inv_diag[it.row()] = 1.0 / it.value();
    }
}

Factorization::~Factorization() = default;

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& rhs, SolveReport* report) const {
    const LinearSystem& sys = *impl_->sys;
    const double bnorm = rhs.norm();
    SolveReport rep;
    Eigen::VectorXd x;

    if (impl_->method == SolveMethod::direct) {
        if (sys.mean_zero) {
            const int n = sys.dofs.n_reduced, k = impl_->n_lag();
            Eigen::VectorXd baug = Eigen::VectorXd::Zero(n + k);
            baug.head(n) = rhs;
            const Eigen::VectorXd xaug = impl_->lu->solve(baug);
            rep.residual = bnorm > 0 ? (impl_->augmented * xaug - baug).norm() / bnorm : 0.0;
            x = xaug.head(n);
        } else {
            x = impl_->ldlt->solve(rhs);
            rep.residual = bnorm > 0 ? (sys.K * x - rhs).norm() / bnorm : 0.0;
        }
        rep.iterations = 0;
        rep.converged = rep.residual <= 1e-10 || bnorm == 0.0;
    } else {
        // Jacobi-preconditioned CG; for mean-zero (singular consistent)
        // systems the kernel of constants is projected out every iteration
        const auto& K = sys.K;
        const int n = sys.dofs.n_reduced;
        x = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd r = rhs;
        if (sys.mean_zero) impl_->project_kernel(r);
        Eigen::VectorXd z = impl_->inv_diag.cwiseProduct(r);
        Eigen::VectorXd p = z;
        double rz = r.dot(z);
        const double tol2 = 1e-24 * std::max(1e-300, bnorm * bnorm);
        const int maxit = 20 * n + 200;
        int it = 0;
        for (; it < maxit; ++it) {
            if (r.squaredNorm() <= tol2) break;
            Eigen::VectorXd Kp = K * p;
            const double alpha = rz / p.dot(Kp);
            x += alpha * p;
            r -= alpha * Kp;
            if (sys.mean_zero) impl_->project_kernel(r);
            z = impl_->inv_diag.cwiseProduct(r);
            const double rz_new = r.dot(z);
            p = z + (rz_new / rz) * p;
            rz = rz_new;
        }
        if (sys.mean_zero) {
            // normalize to integral mean zero per component
            for (size_t c = 0; c < sys.mean_rows.size(); ++c) {
                const double total = sys.mean_rows[c].sum();
                if (total > 0) {
                    const double shift = sys.mean_rows[c].dot(x) / total;
                    for (int d = 0; d < sys.dofs.n_full; ++d)
                        if (sys.dofs.kind[d] == DofMap::kFree && d % sys.comps == (int)c)
                            x[sys.dofs.target[d]] -= shift;
                }
            }
        }
        Eigen::VectorXd res = K * x - rhs;
        if (sys.mean_zero) impl_->project_kernel(res);
        rep.residual = bnorm > 0 ? res.norm() / bnorm : 0.0;
        rep.iterations = it;
        rep.converged = rep.residual <= 1e-10 || bnorm == 0.0;
    }
    if (!rep.converged)
        throw FemError("linear solve failed: relative residual " + std::to_string(rep.residual));
    if (report) *report = rep;
    return x;
}

FieldOnMesh recover_field(const LinearSystem& sys, const Eigen::VectorXd& reduced) {
    FieldOnMesh f(sys.mesh, sys.comps);
    const auto& dofs = sys.dofs;
    for (int d = 0; d < dofs.n_full; ++d) {
        const int rd = dofs.reduced_index(d);
        f.values[d] = rd >= 0 ? reduced[rd] : dofs.dirichlet_value(d);
    }
    return f;
}

FieldOnMesh solve_problem(const EllipticProblem& prob, SolveMethod method, SolveReport* report) {
    const LinearSystem sys = assemble(prob);
    const Factorization fact(sys, method);
    const Eigen::VectorXd x = fact.solve(sys.rhs, report);
    return recover_field(sys, x);
}

}  // namespace perfhom
