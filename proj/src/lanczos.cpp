#include "xxz/lanczos.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Eigenpairs of the symmetric tridiagonal (alpha, beta) of size m.
// Returns eigenvalues ascending and, when wanted, the full eigenvector matrix.
void solve_tridiagonal(const std::vector<double>& alpha, const std::vector<double>& beta,
                       int m, Eigen::VectorXd& evals, Eigen::MatrixXd& evecs) {
    Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
    for (int i = 0; i < m; ++i) diag[i] = alpha[i];
    for (int i = 0; i + 1 < m; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    evals = es.eigenvalues();
    evecs = es.eigenvectors();
}

}  // namespace

std::vector<double> gauge_fix(std::vector<double> v) {
    double nrm = norm(v);
    if (nrm == 0.0) throw DomainError("gauge_fix: zero vector");
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > amax) {  // strict: ties keep the lowest index
            amax = a;
            imax = i;
        }
    }
    const double scale = (v[imax] < 0.0 ? -1.0 : 1.0) / nrm;
    for (double& x : v) x *= scale;
    return v;
}

LanczosResult lanczos_raw(const MatVec& matvec, std::size_t dim, const SolverConfig& cfg) {
    if (cfg.tol <= 0.0) throw DomainError("lanczos: tol must be positive");
    if (dim == 0) throw DomainError("lanczos: empty space");

    if (dim == 1) {
        std::vector<double> e{1.0}, he(1);
        matvec(e, he);
        return {he[0], {1.0}, std::numeric_limits<double>::infinity(), true, 0};
    }

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<std::vector<double>> V;  // Krylov basis, kept for reorthogonalization
    std::vector<double> alpha, beta;
    std::vector<double> w(dim);

    V.emplace_back(dim);
    for (double& x : V[0]) x = gauss(rng);
    {
        const double n0 = norm(V[0]);
        for (double& x : V[0]) x /= n0;
    }

    const int m_cap = static_cast<int>(std::min<std::size_t>(cfg.max_iter, dim));
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;

    int converged_at = -1;
    bool breakdown = false;
    int m = 0;

    for (int j = 0; j < m_cap; ++j) {
        matvec(V[j], w);
        const double a = dot(V[j], w);
        alpha.push_back(a);
        m = j + 1;

        for (std::size_t i = 0; i < dim; ++i) w[i] -= a * V[j][i];
        if (j > 0)
            for (std::size_t i = 0; i < dim; ++i) w[i] -= beta[j - 1] * V[j - 1][i];
        // two reorthogonalization passes against the whole basis
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k <= j; ++k) {
                const double c = dot(V[k], w);
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * V[k][i];
            }
        }

        const double b = norm(w);
        if (b < 1e-14 * std::max(1.0, std::abs(a))) {
            breakdown = true;  // invariant subspace exhausted
            break;
        }

        // Convergence check: cheap enough every step early, every 5 later.
        const bool check = (m <= 40) || (m % 5 == 0) || (j == m_cap - 1);
        if (check) {
            solve_tridiagonal(alpha, beta, m, evals, evecs);
            const double resid0 = b * std::abs(evecs(m - 1, 0));
            const double scale = std::max(1.0, std::abs(evals[0]));
            if (converged_at < 0 && resid0 <= cfg.tol * scale) converged_at = m;
            if (converged_at > 0) {
                // run on until the first excited Ritz value is trustworthy,
                // so the gap (and degeneracy detection) is meaningful
                const double resid1 = (m >= 2) ? b * std::abs(evecs(m - 1, 1))
                                               : std::numeric_limits<double>::infinity();
                if ((m >= 2 && m >= converged_at + 15 && resid1 <= std::sqrt(cfg.tol) * scale) ||
                    m >= converged_at + 40 || m == static_cast<int>(dim))
                    break;
            }
        }

        beta.push_back(b);
        V.emplace_back(dim);
        for (std::size_t i = 0; i < dim; ++i) V[j + 1][i] = w[i] / b;
    }

    solve_tridiagonal(alpha, beta, m, evals, evecs);

    LanczosResult res;
    res.iterations = m;
    res.energy = evals[0];
    res.gap = (m >= 2) ? evals[1] - evals[0] : std::numeric_limits<double>::infinity();
    res.converged = breakdown || converged_at > 0 || m == static_cast<int>(dim);

    std::vector<double> y(dim, 0.0);
    for (int k = 0; k < m; ++k) {
        const double s = evecs(k, 0);
        for (std::size_t i = 0; i < dim; ++i) y[i] += s * V[k][i];
    }
    res.vector = gauge_fix(std::move(y));

    if (!res.converged)
        throw ConvergenceError("lanczos: no convergence after " + std::to_string(m) +
                               " iterations (tol=" + std::to_string(cfg.tol) + ")",
                               std::move(res));
    return res;
}

GroundState lanczos_ground(const HamiltonianOp& H, const SolverConfig& cfg) {
    auto matvec = [&H](std::span<const double> v, std::span<double> out) { H.apply(v, out); };
    LanczosResult r = lanczos_raw(matvec, H.dim(), cfg);

    GroundState g;
    g.lambda = H.lambda();
    g.L = H.basis().L;
    g.n_up = H.basis().n_up;
    g.bc = H.bc();
    g.energy = r.energy;
    g.vector = std::move(r.vector);
    g.gap = r.gap;
    g.converged = r.converged;
    g.basis = H.basis_ptr();

    if (cfg.require_unique && is_degenerate(g))
        throw DegeneracyError("lanczos_ground: ground state degenerate within gap " +
                              std::to_string(g.gap) + " at lambda=" + std::to_string(g.lambda) +
                              " (fidelity between degenerate states is gauge-ambiguous)");
    return g;
}

std::shared_ptr<const GroundState> SolveCache::ground(double lambda, int L, int n_up, Boundary bc,
                                                      const SolverConfig& cfg) {
    const Key key{lambda, L, n_up, static_cast<int>(bc), cfg.seed};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto basis = std::make_shared<const SpinBasis>(build_basis(L, n_up));
    HamiltonianOp H(basis, lambda, bc);
    auto g = std::make_shared<const GroundState>(lanczos_ground(H, cfg));
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.try_emplace(key, std::move(g)).first->second;
}

}  // namespace xxz
