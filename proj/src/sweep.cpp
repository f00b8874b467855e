#include "xxz/sweep.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "xxz/energy.hpp"
#include "xxz/errors.hpp"
#include "xxz/fidelity.hpp"
#include "xxz/luttinger.hpp"

namespace xxz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int worker_count() {
    if (const char* env = std::getenv("FIDELITY_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

enum class Sector { half, polarized };

// Which sector holds the global ground state at this lambda, together with
// its energy.  The polarized (n_up = L) sector is one-dimensional with exact
// energy (bond count) * lambda / 4.
Sector winning_sector(double lam, int L, Boundary bc, const SolverConfig& cfg, SolveCache& cache,
                      double* energy) {
    const double e_pol = bond_count(L, bc) * lam / 4.0;
    SolverConfig c = cfg;
    c.require_unique = false;
    const auto g = cache.ground(lam, L, L / 2, bc, c);
    if (e_pol < g->energy) {
        if (energy) *energy = e_pol;
        return Sector::polarized;
    }
    if (energy) *energy = g->energy;
    return Sector::half;
}

void fill_analytic(SweepRecord& rec) {
    rec.K = kNaN;
    rec.chi_analytic = kNaN;
    if (rec.lambda > -1.0 && rec.lambda <= 1.0) rec.K = params_of_lambda(rec.lambda).K;
    if (rec.lambda > -1.0 && rec.lambda < 1.0) rec.chi_analytic = chi_analytic_xxz(rec.lambda);
}

SweepRecord evaluate_point(double lam, int L, const SweepConfig& cfg, SolveCache& cache) {
    SweepRecord rec;
    rec.lambda = lam;
    rec.L = L;
    rec.e0_per_site = rec.de = rec.d2e = rec.F = rec.chi_logF = rec.chi_trace = kNaN;
    fill_analytic(rec);

    const int n_up = L / 2;
    const double dl = cfg.delta_lambda;
    SolverConfig quiet = cfg.solver;
    quiet.require_unique = false;

    try {
        if (cfg.sector_scan) {
            // compare the Sz=0 sector minimum against the polarized sector at
            // the grid point and at all four stencil points
            double e0;
            const Sector s0 = winning_sector(lam, L, cfg.bc, cfg.solver, cache, &e0);
            rec.e0_per_site = e0 / L;

            Sector sp_half, sm_half, sp, sm;
            double dep, dem;
            sp = winning_sector(lam + dl, L, cfg.bc, cfg.solver, cache, nullptr);
            sm = winning_sector(lam - dl, L, cfg.bc, cfg.solver, cache, nullptr);
            sp_half = winning_sector(lam + dl / 2, L, cfg.bc, cfg.solver, cache, nullptr);
            sm_half = winning_sector(lam - dl / 2, L, cfg.bc, cfg.solver, cache, nullptr);

            const double de_pol = bond_count(L, cfg.bc) / (4.0 * L);
            rec.de = (s0 == Sector::polarized)
                         ? de_pol
                         : energy_derivative_hf(*cache.ground(lam, L, n_up, cfg.bc, quiet));
            dep = (sp == Sector::polarized)
                      ? de_pol
                      : energy_derivative_hf(*cache.ground(lam + dl, L, n_up, cfg.bc, quiet));
            dem = (sm == Sector::polarized)
                      ? de_pol
                      : energy_derivative_hf(*cache.ground(lam - dl, L, n_up, cfg.bc, quiet));
            rec.d2e = (dep - dem) / (2.0 * dl);

            const bool same =
                s0 == sp && s0 == sm && s0 == sp_half && s0 == sm_half;
            if (!same) {
                rec.status = "sector_crossing";
                return rec;
            }
            if (s0 == Sector::polarized) {
                // identical one-dimensional ground state on the whole stencil
                rec.F = 1.0;
                rec.chi_logF = 0.0;
                rec.chi_trace = 0.0;
                return rec;
            }
        } else {
            const auto g0 = cache.ground(lam, L, n_up, cfg.bc, quiet);
            rec.e0_per_site = g0->energy / L;
            rec.de = energy_derivative_hf(*g0);
            rec.d2e = energy_second_derivative(lam, dl, L, n_up, cfg.bc, quiet, &cache);
        }

        const FidelityResult lf = chi_log_fidelity(lam, dl, L, n_up, cfg.bc, cfg.solver, &cache);
        const FidelityResult tr = chi_trace_form(lam, dl, L, n_up, cfg.bc, cfg.solver, &cache);
        rec.F = lf.F;
        rec.chi_logF = lf.chi_logF;
        rec.chi_trace = tr.chi_trace;
    } catch (const DegeneracyError&) {
        rec.F = rec.chi_logF = rec.chi_trace = kNaN;
        rec.status = "degenerate";
    } catch (const DivergenceError&) {
        rec.F = rec.chi_logF = rec.chi_trace = kNaN;
        rec.status = "divergent";
    } catch (const ConvergenceError&) {
        rec.status = "failed";
    }
    return rec;
}

}  // namespace

std::vector<double> SweepConfig::lambda_grid() const {
    std::vector<double> grid;
    grid.reserve(steps);
    if (steps == 1) {
        grid.push_back(lambda_min);
        return grid;
    }
    const double h = (lambda_max - lambda_min) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid.push_back(lambda_min + i * h);
    return grid;
}

void SweepConfig::validate() const {
    if (L_list.empty()) throw DomainError("sweep: L_list must not be empty");
    for (int L : L_list) {
        if (L % 2 != 0) throw DomainError("sweep: L must be even, got " + std::to_string(L));
        if (L < 4 || L > kMaxSites)
            throw DomainError("sweep: L must be in [4, 24], got " + std::to_string(L));
    }
    if (steps < 1) throw DomainError("sweep: steps must be >= 1");
    if (steps == 1 && lambda_min != lambda_max)
        throw DomainError("sweep: steps=1 needs lambda_min == lambda_max");
    if (steps > 1 && !(lambda_max > lambda_min))
        throw DomainError("sweep: lambda_max must exceed lambda_min");
    if (!(delta_lambda > 0.0)) throw DomainError("sweep: delta_lambda must be positive");
    const double lo = sector_scan ? -3.0 : -1.0;
    const double hi = 1.0;
    if (!(lambda_min > lo) || !(lambda_max < hi))
        throw DomainError(sector_scan
                              ? "sweep: sector-scan grid must lie inside (-3, 1)"
                              : "sweep: lambda grid must lie inside (-1, 1); use the sector "
                                "scan to cross the ferromagnetic transition");
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = cfg.lambda_grid();

    struct Task {
        double lam;
        int L;
    };
    std::vector<Task> tasks;
    for (double lam : grid)
        for (int L : cfg.L_list) tasks.push_back({lam, L});

    std::vector<SweepRecord> out(tasks.size());
    SolveCache cache;

    const int nthreads = std::min<int>(worker_count(), static_cast<int>(tasks.size()));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            out[i] = evaluate_point(tasks[i].lam, tasks[i].L, cfg, cache);
        return out;
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            out[i] = evaluate_point(tasks[i].lam, tasks[i].L, cfg, cache);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return out;
}

ScalingFit extrapolate(double lambda, const std::vector<std::pair<int, double>>& chi_by_L) {
    std::map<int, double> by_L(chi_by_L.begin(), chi_by_L.end());
    if (by_L.size() < 3)
        throw InsufficientDataError("extrapolate: need >= 3 distinct system sizes, got " +
                                    std::to_string(by_L.size()));

    const int n = static_cast<int>(by_L.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n);
    ScalingFit fit;
    fit.lambda = lambda;
    int i = 0;
    for (const auto& [L, chi] : by_L) {
        fit.L_used.push_back(L);
        A(i, 0) = 1.0;
        A(i, 1) = 1.0 / L;
        A(i, 2) = 1.0 / (static_cast<double>(L) * L);
        y(i) = chi;
        ++i;
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    fit.chi_inf = c(0);
    fit.c1 = c(1);
    fit.c2 = c(2);
    fit.residual = std::sqrt((A * c - y).squaredNorm() / n);
    return fit;
}

PeakResult locate_peak(const std::vector<SweepRecord>& records) {
    std::vector<std::pair<double, double>> pts;  // (lambda, chi_logF), finite only
    for (const auto& r : records)
        if (std::isfinite(r.chi_logF)) pts.emplace_back(r.lambda, r.chi_logF);
    if (pts.size() < 3)
        throw InsufficientDataError("locate_peak: need >= 3 finite grid points");

    std::size_t imax = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].second > pts[imax].second) imax = i;

    PeakResult res;
    if (imax == 0 || imax + 1 == pts.size()) {
        res.lambda = pts[imax].first;
        res.at_boundary = true;
        return res;
    }

    // parabola through the peak triple; fall back to the grid point when flat
    const auto [x1, y1] = pts[imax - 1];
    const auto [x2, y2] = pts[imax];
    const auto [x3, y3] = pts[imax + 1];
    const double num = x1 * x1 * (y2 - y3) + x2 * x2 * (y3 - y1) + x3 * x3 * (y1 - y2);
    const double den = x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2);
    res.lambda = (den != 0.0) ? num / (2.0 * den) : x2;
    return res;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

static const char* kCsvHeader =
    "lambda,L,e0_per_site,dE_dlambda,d2E_dlambda2,fidelity,chi_ed_logf,chi_ed_trace,K,"
    "chi_analytic,status";

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kCsvHeader << "\n";
    for (const auto& r : records) {
        os << format_double(r.lambda) << ',' << r.L << ',' << format_double(r.e0_per_site) << ','
           << format_double(r.de) << ',' << format_double(r.d2e) << ',' << format_double(r.F)
           << ',' << format_double(r.chi_logF) << ',' << format_double(r.chi_trace) << ','
           << format_double(r.K) << ',' << format_double(r.chi_analytic) << ',' << r.status
           << "\n";
    }
}

std::vector<SweepRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("read_csv: empty input");
    if (line != kCsvHeader)
        throw DomainError("read_csv: unexpected header '" + line + "'");

    std::vector<SweepRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 11)
            throw DomainError("read_csv: malformed row '" + line + "'");
        auto num = [](const std::string& s) {
            return s == "nan" ? kNaN : std::stod(s);
        };
        SweepRecord r;
        r.lambda = num(cells[0]);
        r.L = std::stoi(cells[1]);
        r.e0_per_site = num(cells[2]);
        r.de = num(cells[3]);
        r.d2e = num(cells[4]);
        r.F = num(cells[5]);
        r.chi_logF = num(cells[6]);
        r.chi_trace = num(cells[7]);
        r.K = num(cells[8]);
        r.chi_analytic = num(cells[9]);
        r.status = cells[10];
        out.push_back(std::move(r));
    }
    return out;
}

void write_json(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        os << "  {\"lambda\": " << format_double(r.lambda) << ", \"L\": " << r.L
           << ", \"e0_per_site\": " << format_double(r.e0_per_site)
           << ", \"dE_dlambda\": " << format_double(r.de)
           << ", \"d2E_dlambda2\": " << format_double(r.d2e)
           << ", \"fidelity\": " << format_double(r.F)
           << ", \"chi_ed_logf\": " << format_double(r.chi_logF)
           << ", \"chi_ed_trace\": " << format_double(r.chi_trace)
           << ", \"K\": " << format_double(r.K)
           << ", \"chi_analytic\": " << format_double(r.chi_analytic) << ", \"status\": \""
           << r.status << "\"}" << (i + 1 < records.size() ? "," : "") << "\n";
    }
    os << "]\n";
}

SweepConfig config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("config: invalid JSON: ") + e.what());
    }
    SweepConfig cfg;
    if (j.contains("L_list")) cfg.L_list = j.at("L_list").get<std::vector<int>>();
    if (j.contains("bc")) cfg.bc = boundary_from_string(j.at("bc").get<std::string>());
    if (j.contains("lambda_min")) cfg.lambda_min = j.at("lambda_min").get<double>();
    if (j.contains("lambda_max")) cfg.lambda_max = j.at("lambda_max").get<double>();
    if (j.contains("steps")) cfg.steps = j.at("steps").get<int>();
    if (j.contains("delta_lambda")) cfg.delta_lambda = j.at("delta_lambda").get<double>();
    if (j.contains("tol")) cfg.solver.tol = j.at("tol").get<double>();
    if (j.contains("max_iter")) cfg.solver.max_iter = j.at("max_iter").get<int>();
    if (j.contains("seed")) cfg.solver.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("sector_scan")) cfg.sector_scan = j.at("sector_scan").get<bool>();
    if (j.contains("mode_count_convention")) {
        const auto& m = j.at("mode_count_convention");
        if (m.is_string()) {
            if (m.get<std::string>() != "L")
                throw DomainError("config: mode_count_convention must be an integer or \"L\"");
            cfg.mode_count = -1;
        } else {
            cfg.mode_count = m.get<int>();
        }
    }
    return cfg;
}

std::string config_to_json_text(const SweepConfig& cfg) {
    nlohmann::json j;
    j["L_list"] = cfg.L_list;
    j["bc"] = to_string(cfg.bc);
    j["lambda_min"] = cfg.lambda_min;
    j["lambda_max"] = cfg.lambda_max;
    j["steps"] = cfg.steps;
    j["delta_lambda"] = cfg.delta_lambda;
    j["tol"] = cfg.solver.tol;
    j["max_iter"] = cfg.solver.max_iter;
    j["seed"] = cfg.solver.seed;
    j["sector_scan"] = cfg.sector_scan;
    if (cfg.mode_count < 0)
        j["mode_count_convention"] = "L";
    else
        j["mode_count_convention"] = cfg.mode_count;
    return j.dump(2);
}

}  // namespace xxz
