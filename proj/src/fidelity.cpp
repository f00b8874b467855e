#include "xxz/fidelity.hpp"

#include <cmath>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

void require_usable(const GroundState& g, const char* who) {
    if (!g.converged)
        throw DegeneracyError(std::string(who) + ": unconverged ground state");
    if (is_degenerate(g))
        throw DegeneracyError(std::string(who) + ": degenerate ground state at lambda=" +
                              std::to_string(g.lambda));
}

double inner(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::shared_ptr<const GroundState> solve(double lambda, int L, int n_up, Boundary bc,
                                         const SolverConfig& cfg, SolveCache* cache,
                                         SolveCache& local) {
    SolverConfig c = cfg;
    c.require_unique = false;  // degeneracy reported by require_usable with context
    return (cache ? *cache : local).ground(lambda, L, n_up, bc, c);
}

}  // namespace

double overlap(const GroundState& a, const GroundState& b) {
    if (a.L != b.L || a.n_up != b.n_up || a.bc != b.bc || a.vector.size() != b.vector.size())
        throw ShapeError("overlap: ground states live in different sectors");
    require_usable(a, "overlap");
    require_usable(b, "overlap");
    const double f = std::abs(inner(a.vector, b.vector));
    return std::min(f, 1.0);  // clip roundoff above 1
}

FidelityResult chi_log_fidelity(double lambda, double dl, int L, int n_up, Boundary bc,
                                const SolverConfig& cfg, SolveCache* cache) {
    if (dl <= 0.0) throw DomainError("chi_log_fidelity: delta_lambda must be positive");
    SolveCache local;
    const auto gm = solve(lambda - dl / 2, L, n_up, bc, cfg, cache, local);
    const auto gp = solve(lambda + dl / 2, L, n_up, bc, cfg, cache, local);
    const double F = overlap(*gm, *gp);
    if (F == 0.0)
        throw DivergenceError("chi_log_fidelity: orthogonal ground states at lambda=" +
                              std::to_string(lambda));
    FidelityResult r;
    r.lambda = lambda;
    r.delta_lambda = dl;
    r.F = F;
    r.chi_logF = std::max(0.0, -2.0 * std::log(F) / (L * dl * dl));
    return r;
}

FidelityResult chi_trace_form(double lambda, double dl, int L, int n_up, Boundary bc,
                              const SolverConfig& cfg, SolveCache* cache) {
    if (dl <= 0.0) throw DomainError("chi_trace_form: delta_lambda must be positive");
    SolveCache local;
    const auto g0 = solve(lambda, L, n_up, bc, cfg, cache, local);
    const auto gp = solve(lambda + dl, L, n_up, bc, cfg, cache, local);
    const auto gm = solve(lambda - dl, L, n_up, bc, cfg, cache, local);
    require_usable(*g0, "chi_trace_form");
    require_usable(*gp, "chi_trace_form");
    require_usable(*gm, "chi_trace_form");

    // align endpoint signs with the center state before differencing
    const double sp = inner(g0->vector, gp->vector) < 0.0 ? -1.0 : 1.0;
    const double sm = inner(g0->vector, gm->vector) < 0.0 ? -1.0 : 1.0;

    const std::size_t n = g0->vector.size();
    std::vector<double> d(n);
    const double inv = 1.0 / (2.0 * dl);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = (sp * gp->vector[i] - sm * gm->vector[i]) * inv;

    const double dd = inner(d, d);
    const double pd = inner(g0->vector, d);  // ~0 by normalization, removed anyway

    FidelityResult r;
    r.lambda = lambda;
    r.delta_lambda = dl;
    r.F = overlap(*gm, *gp);
    r.chi_trace = std::max(0.0, (dd - pd * pd) / L);
    return r;
}

}  // namespace xxz
