#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "xxz/bosonsim.hpp"
#include "xxz/errors.hpp"
#include "xxz/luttinger.hpp"
#include "xxz/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw xxz::DomainError("cannot open output file '" + path + "'");
    return os;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw xxz::DomainError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int cmd_sweep(CLI::App* cmd) {
    auto opts = std::make_shared<std::map<std::string, std::string>>();

    auto L_opt = std::make_shared<std::vector<int>>();
    auto bc = std::make_shared<std::string>("periodic");
    auto lmin = std::make_shared<double>(0.0);
    auto lmax = std::make_shared<double>(0.0);
    auto steps = std::make_shared<int>(1);
    auto dlambda = std::make_shared<double>(1e-3);
    auto tol = std::make_shared<double>(1e-12);
    auto max_iter = std::make_shared<int>(500);
    auto seed = std::make_shared<std::uint64_t>(12345);
    auto sector_scan = std::make_shared<bool>(false);
    auto config_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");

    auto* oL = cmd->add_option("--L", *L_opt, "system sizes (even, 4-24); repeatable");
    auto* obc = cmd->add_option("--bc", *bc, "boundary condition: periodic|open");
    auto* olmin = cmd->add_option("--lambda-min", *lmin, "grid start");
    auto* olmax = cmd->add_option("--lambda-max", *lmax, "grid end");
    auto* osteps = cmd->add_option("--steps", *steps, "number of grid points");
    auto* odl = cmd->add_option("--dlambda", *dlambda, "finite-difference step");
    auto* otol = cmd->add_option("--tol", *tol, "Lanczos residual tolerance");
    auto* omi = cmd->add_option("--max-iter", *max_iter, "Lanczos iteration cap");
    auto* oseed = cmd->add_option("--seed", *seed, "Lanczos start-vector seed");
    auto* oscan = cmd->add_flag("--sector-scan", *sector_scan,
                                "compare Sz=0 vs polarized sector minima (grid may cross -1)");
    cmd->add_option("--config", *config_path, "JSON config; explicit flags win on conflict");
    cmd->add_option("--out", *out_path, "output file")->required();
    cmd->add_option("--format", *format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    cmd->callback([=]() {
        xxz::SweepConfig cfg;
        if (!config_path->empty()) cfg = xxz::config_from_json_text(slurp(*config_path));

        auto take = [&](const CLI::Option* o, auto& dst, const auto& src, const char* name) {
            if (o->count() == 0) return;
            if (!config_path->empty())
                std::cerr << "note: flag --" << name << " overrides config value\n";
            dst = src;
        };
        take(oL, cfg.L_list, *L_opt, "L");
        if (obc->count() > 0) cfg.bc = xxz::boundary_from_string(*bc);
        take(olmin, cfg.lambda_min, *lmin, "lambda-min");
        take(olmax, cfg.lambda_max, *lmax, "lambda-max");
        take(osteps, cfg.steps, *steps, "steps");
        take(odl, cfg.delta_lambda, *dlambda, "dlambda");
        take(otol, cfg.solver.tol, *tol, "tol");
        take(omi, cfg.solver.max_iter, *max_iter, "max-iter");
        take(oseed, cfg.solver.seed, *seed, "seed");
        take(oscan, cfg.sector_scan, *sector_scan, "sector-scan");

        cfg.validate();

        const auto t0 = std::chrono::steady_clock::now();
        const auto records = xxz::run_sweep(cfg);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        bool any_ok = false;
        for (const auto& r : records) any_ok |= (r.status == "ok");
        if (!any_ok)
            throw xxz::DivergenceError("sweep: solver failed at every grid point");

        auto os = open_output(*out_path);
        if (*format == "json")
            xxz::write_json(os, records);
        else
            xxz::write_csv(os, records);
        std::cout << records.size() << " records (" << cfg.steps << " lambda x "
                  << cfg.L_list.size() << " L), " << secs << " s -> " << *out_path << "\n";
    });
    return 0;
}

int cmd_analytic(CLI::App* cmd) {
    auto lambda = std::make_shared<double>();
    auto lmin = std::make_shared<double>();
    auto lmax = std::make_shared<double>();
    auto steps = std::make_shared<int>(1);
    auto kprime_of = std::make_shared<double>();
    auto modes = std::make_shared<int>(1);
    auto out_path = std::make_shared<std::string>();

    auto* olam = cmd->add_option("--lambda", *lambda, "single evaluation point");
    auto* olmin = cmd->add_option("--lambda-min", *lmin, "grid start");
    cmd->add_option("--lambda-max", *lmax, "grid end");
    cmd->add_option("--steps", *steps, "number of grid points");
    auto* okp = cmd->add_option("--kprime-of", *kprime_of,
                                "second anisotropy for the finite-size fidelity column");
    cmd->add_option("--modes", *modes, "mode count M of the fidelity product");
    cmd->add_option("--out", *out_path, "output file (default stdout)");

    cmd->callback([=]() {
        std::vector<double> grid;
        if (olam->count() > 0) {
            grid.push_back(*lambda);
        } else {
            if (olmin->count() == 0)
                throw xxz::DomainError("analytic: give --lambda or --lambda-min/--lambda-max");
            if (*steps < 1) throw xxz::DomainError("analytic: steps must be >= 1");
            for (int i = 0; i < *steps; ++i)
                grid.push_back(*steps == 1 ? *lmin
                                           : *lmin + i * (*lmax - *lmin) / (*steps - 1));
        }

        const bool with_fidelity = okp->count() > 0;
        double Kprime = 0.0;
        if (with_fidelity) Kprime = xxz::params_of_lambda(*kprime_of).K;

        std::ostringstream body;
        body << "lambda,K,u,theta,chi_analytic";
        if (with_fidelity) body << ",fidelity_finite";
        body << ",status\n";
        for (double lam : grid) {
            std::string status = "ok";
            double K = NAN, u = NAN, theta = NAN, chi = NAN, fid = NAN;
            if (lam > -1.0 && lam <= 1.0) {
                const auto p = xxz::params_of_lambda(lam);
                K = p.K;
                u = p.u;
                theta = p.theta;
                if (lam < 1.0)
                    chi = xxz::chi_analytic_xxz(lam);
                else
                    status = "divergent";
                if (with_fidelity) fid = xxz::fidelity_finite(K, Kprime, *modes);
            } else {
                status = "divergent";
            }
            body << xxz::format_double(lam) << ',' << xxz::format_double(K) << ','
                 << xxz::format_double(u) << ',' << xxz::format_double(theta) << ','
                 << xxz::format_double(chi);
            if (with_fidelity) body << ',' << xxz::format_double(fid);
            body << ',' << status << "\n";
        }

        if (out_path->empty()) {
            std::cout << body.str();
        } else {
            auto os = open_output(*out_path);
            os << body.str();
        }
    });
    return 0;
}

int cmd_boson_check(CLI::App* cmd) {
    auto tmin = std::make_shared<double>(-1.5);
    auto tmax = std::make_shared<double>(1.5);
    auto steps = std::make_shared<int>(13);
    auto n_max = std::make_shared<int>(200);
    auto tol = std::make_shared<double>(1e-9);

    cmd->add_option("--theta-min", *tmin, "Bogoliubov angle grid start");
    cmd->add_option("--theta-max", *tmax, "Bogoliubov angle grid end");
    cmd->add_option("--steps", *steps, "grid points per axis");
    cmd->add_option("--nmax", *n_max, "Fock-space truncation");
    cmd->add_option("--tol", *tol, "maximum allowed |Fock sum - closed form|");

    cmd->callback([=]() {
        if (*steps < 1) throw xxz::DomainError("boson-check: steps must be >= 1");
        std::vector<double> thetas;
        for (int i = 0; i < *steps; ++i)
            thetas.push_back(*steps == 1 ? *tmin
                                         : *tmin + i * (*tmax - *tmin) / (*steps - 1));

        double max_err = 0.0, max_err_z = 0.0;
        for (double ta : thetas) {
            const auto a = xxz::build_pair_state(ta, *n_max);
            for (double tb : thetas) {
                const auto b = xxz::build_pair_state(tb, *n_max);
                const double fock = xxz::pair_overlap(a, b);
                const double closed = 1.0 / std::cosh(ta - tb);
                max_err = std::max(max_err, std::abs(fock - closed));

                // unnormalized geometric sum against the closed-form Z
                const double q = std::tanh(ta) * std::tanh(tb);
                double zsum = 0.0, term = 1.0;
                for (int n = 0; n <= *n_max; ++n, term *= q) zsum += term;
                max_err_z = std::max(max_err_z, std::abs(zsum - xxz::z_unnormalized(ta, tb)));
            }
        }
        std::cout << "max |Fock overlap - 1/cosh(dtheta)| = " << max_err << "\n"
                  << "max |unnormalized sum - Z closed form| = " << max_err_z << "\n";
        if (std::max(max_err, max_err_z) > *tol)
            throw xxz::DivergenceError("boson-check: truncation error above tolerance");
        std::cout << "boson oracle agrees within " << *tol << "\n";
    });
    return 0;
}

int cmd_scaling(CLI::App* cmd) {
    auto in_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--in", *in_path, "sweep CSV with >= 3 sizes per lambda")->required();
    cmd->add_option("--out", *out_path, "fit output file (default stdout)");

    cmd->callback([=]() {
        std::ifstream is(*in_path);
        if (!is) throw xxz::DomainError("cannot read '" + *in_path + "'");
        const auto records = xxz::read_csv(is);

        std::map<double, std::vector<std::pair<int, double>>> by_lambda;
        for (const auto& r : records)
            if (std::isfinite(r.chi_logF)) by_lambda[r.lambda].emplace_back(r.L, r.chi_logF);

        std::ostringstream body;
        body << "lambda,chi_inf,c1,c2,residual,L_used\n";
        int fits = 0;
        for (const auto& [lam, chi_by_L] : by_lambda) {
            if (chi_by_L.size() < 3) continue;
            const auto fit = xxz::extrapolate(lam, chi_by_L);
            body << xxz::format_double(fit.lambda) << ',' << xxz::format_double(fit.chi_inf)
                 << ',' << xxz::format_double(fit.c1) << ',' << xxz::format_double(fit.c2) << ','
                 << xxz::format_double(fit.residual) << ',';
            for (std::size_t i = 0; i < fit.L_used.size(); ++i)
                body << (i ? ";" : "") << fit.L_used[i];
            body << "\n";
            ++fits;
        }
        if (fits == 0)
            throw xxz::InsufficientDataError(
                "scaling: need >=3 sizes at some lambda in the input");

        if (out_path->empty()) {
            std::cout << body.str();
        } else {
            auto os = open_output(*out_path);
            os << body.str();
        }
    });
    return 0;
}

int cmd_peak(CLI::App* cmd) {
    auto in_path = std::make_shared<std::string>();
    auto L_filter = std::make_shared<int>(0);
    cmd->add_option("--in", *in_path, "sweep CSV at one system size")->required();
    auto* oL = cmd->add_option("--L", *L_filter, "restrict to one system size");

    cmd->callback([=]() {
        std::ifstream is(*in_path);
        if (!is) throw xxz::DomainError("cannot read '" + *in_path + "'");
        auto records = xxz::read_csv(is);
        if (oL->count() > 0)
            std::erase_if(records, [&](const auto& r) { return r.L != *L_filter; });
        else {
            for (const auto& r : records)
                if (r.L != records.front().L)
                    throw xxz::DomainError("peak: multiple sizes in input; pass --L");
        }
        const auto peak = xxz::locate_peak(records);
        if (peak.at_boundary)
            std::cerr << "warning: susceptibility maximum sits on the grid boundary\n";
        std::cout << "peak lambda = " << xxz::format_double(peak.lambda) << "\n";
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground-state fidelity and fidelity susceptibility of the spin-1/2 XXZ chain"};
    app.require_subcommand(1);

    cmd_sweep(app.add_subcommand("sweep", "exact-diagonalization lambda/L sweep -> CSV/JSON"));
    cmd_analytic(app.add_subcommand("analytic", "Luttinger closed forms on a lambda grid"));
    cmd_boson_check(
        app.add_subcommand("boson-check", "truncated squeezed-vacuum oracle vs closed forms"));
    cmd_scaling(app.add_subcommand("scaling", "finite-size extrapolation of a sweep CSV"));
    cmd_peak(app.add_subcommand("peak", "locate the susceptibility maximum of a sweep CSV"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const xxz::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const xxz::InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const xxz::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
