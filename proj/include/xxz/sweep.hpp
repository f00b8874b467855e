#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xxz/lanczos.hpp"

namespace xxz {

struct SweepConfig {
    std::vector<int> L_list;  // even sizes in [4, 24]
    Boundary bc = Boundary::periodic;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int steps = 1;  // number of grid points
    double delta_lambda = 1e-3;
    SolverConfig solver;
    // Mode count for analytic finite-size fidelity; -1 means "use L".
    int mode_count = -1;
    // Widens the allowed grid past lambda = -1 and takes the ground state as
    // the minimum over the Sz=0 and fully polarized sectors (1QPT scan).
    bool sector_scan = false;

    std::vector<double> lambda_grid() const;
    void validate() const;
};

struct SweepRecord {
    double lambda = 0.0;
    int L = 0;
    double e0_per_site = 0.0;
    double de = 0.0;
    double d2e = 0.0;
    double F = 0.0;
    double chi_logF = 0.0;
    double chi_trace = 0.0;
    double K = 0.0;
    double chi_analytic = 0.0;
    std::string status = "ok";  // ok | degenerate | divergent | sector_crossing
};

// One record per (lambda, L), grid-major then L order, deterministic for a
// fixed config.  Worker count comes from FIDELITY_THREADS (0/unset = auto).
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

struct ScalingFit {
    double lambda = 0.0;
    std::vector<int> L_used;
    double chi_inf = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double residual = 0.0;  // rms misfit
};

// Least-squares fit chi_L = chi_inf + c1/L + c2/L^2 over >= 3 sizes.
ScalingFit extrapolate(double lambda, const std::vector<std::pair<int, double>>& chi_by_L);

struct PeakResult {
    double lambda = 0.0;
    bool at_boundary = false;  // maximum sits on the grid edge
};

// Lambda of the maximal finite chi_logF among records (one fixed L), refined
// by parabolic interpolation through the peak triple.
PeakResult locate_peak(const std::vector<SweepRecord>& records);

// CSV schema (canonical, shared with the CLI):
// lambda,L,e0_per_site,dE_dlambda,d2E_dlambda2,fidelity,chi_ed_logf,chi_ed_trace,K,chi_analytic,status
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(std::istream& is);

void write_json(std::ostream& os, const std::vector<SweepRecord>& records);

// JSON mirror of SweepConfig (field names verbatim).
SweepConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SweepConfig& cfg);

// "%.17g" rendering used for every float cell so reruns are byte-identical.
std::string format_double(double x);

}  // namespace xxz
