#include "expint/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace expint {

namespace {

std::string timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool is_valid_method(const std::string& m) {
    return m == "midpoint" || m == "dg" || m == "exp_euler" ||
           m == "exp_midpoint" || m == "disex6" || m == "energy_exp";
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

void IntegrateConfig::validate() const {
    if (model != "nls" && model != "kdv")
        throw std::invalid_argument("model must be nls or kdv");
    if (resolution < 3 || resolution % 2 == 0)
        throw std::invalid_argument("resolution must be odd and >= 3");
    if (!is_valid_method(method))
        throw std::invalid_argument("unknown method: " + method);
    if (solver != "fixed_point" && solver != "newton")
        throw std::invalid_argument("solver must be fixed_point or newton");
    if (solver == "newton" && method != "midpoint" && method != "dg")
        throw std::invalid_argument("newton applies to midpoint and dg only");
    if (h <= 0.0 || steps < 1 || tolerance <= 0.0 || max_iterations < 1 ||
        nu <= 0.0)
        throw std::invalid_argument("numeric config fields must be positive");
}

void SweepConfig::validate() const {
    if (model != "nls" && model != "kdv")
        throw std::invalid_argument("model must be nls or kdv");
    for (int n : resolutions)
        if (n < 3 || n % 2 == 0)
            throw std::invalid_argument("resolutions must be odd and >= 3");
    for (const std::string& m : methods) {
        std::string name = m.substr(0, m.find(':'));
        if (!is_valid_method(name))
            throw std::invalid_argument("unknown method: " + name);
        if (m.find(':') != std::string::npos) {
            std::string solver = m.substr(m.find(':') + 1);
            if (solver != "newton" && solver != "fixed_point")
                throw std::invalid_argument("unknown solver suffix: " + m);
            if (solver == "newton" && name != "midpoint" && name != "dg")
                throw std::invalid_argument(
                    "newton applies to midpoint and dg only");
        }
    }
    if (h_lo <= 0.0 || h_hi < h_lo || horizon_steps < 1 || tolerance <= 0.0 ||
        max_iterations < 1 || nu <= 0.0)
        throw std::invalid_argument("numeric config fields must be positive");
}

std::unique_ptr<PoissonSystem> make_system(const std::string& model, int n,
                                           double nu, bool linear) {
    SpectralGrid grid(n);
    if (model == "nls")
        return std::make_unique<NlsSystem>(grid, !linear);
    if (model == "kdv")
        return std::make_unique<KdvSystem>(grid, nu, !linear);
    throw std::invalid_argument("unknown model: " + model);
}

State make_initial_condition(const std::string& model,
                             const SpectralGrid& grid) {
    return standard_initial_condition(
        model == "nls" ? ModelKind::Nls : ModelKind::Kdv, grid);
}

Stepper make_stepper(const std::string& method, const std::string& solver,
                     const SolverConfig& config) {
    SolverKind kind =
        solver == "newton" ? SolverKind::Newton : SolverKind::FixedPoint;
    if (method == "exp_euler")
        return [](const PoissonSystem& sys, const State& st, double h) {
            return exp_euler_step(sys, st, h);
        };
    if (method == "midpoint")
        return [config, kind](const PoissonSystem& sys, const State& st,
                              double h) {
            return midpoint_step(sys, st, h, config, kind);
        };
    if (method == "dg")
        return [config, kind](const PoissonSystem& sys, const State& st,
                              double h) {
            return discrete_gradient_step(sys, st, h, config, kind);
        };
    if (method == "exp_midpoint")
        return [config](const PoissonSystem& sys, const State& st, double h) {
            return exp_midpoint_step(sys, st, h, config);
        };
    if (method == "disex6")
        return [config](const PoissonSystem& sys, const State& st, double h) {
            return disex_step(DisrkScheme::disex6(), sys, st, h, config);
        };
    if (method == "energy_exp")
        return [config](const PoissonSystem& sys, const State& st, double h) {
            return energy_exp_step(sys, st, h, config);
        };
    throw std::invalid_argument("unknown method: " + method);
}

int run_integrate(const IntegrateConfig& config) {
    config.validate();
    auto system = make_system(config.model, config.resolution, config.nu,
                              config.linear);
    SpectralGrid grid(config.resolution);
    State state = make_initial_condition(config.model, grid);

    SolverConfig solver{config.tolerance, config.max_iterations, 1e6};
    Stepper stepper = make_stepper(config.method, config.solver, solver);
    SolverConfig ref_solver{1e-13, 200, 1e6};

    std::ofstream out = open_output(config.output);
    out << "# expint integrate model=" << config.model
        << " method=" << config.method << " solver=" << config.solver
        << " N=" << config.resolution << " h=" << fmt(config.h)
        << " seed=" << config.seed << "\n";
    out << "# generated: " << timestamp() << "\n";
    out << "step,t,energy_error";
    if (config.with_reference) out << ",traj_error";
    out << ",iterations,residual\n";

    const double h0 = system->hamiltonian(state.q);
    const double h_ref_step = config.h / 100.0;
    State ref_state = state;
    double ref_norm = std::max(state.q.norm(), 1e-300);

    for (long step = 1; step <= config.steps; ++step) {
        StepOutcome outcome = stepper(*system, state, config.h);
        if (!outcome.converged) {
            out << "# step " << step << " failed: solver did not converge\n";
            out.flush();
            std::cerr << "integrate: solver failed at step " << step << "\n";
            return kExitDivergence;
        }
        state = outcome.state;

        out << step << "," << fmt(state.t) << ","
            << fmt(std::abs(system->hamiltonian(state.q) - h0));
        if (config.with_reference) {
            for (int i = 0; i < 100; ++i) {
                StepOutcome ref =
                    exp_midpoint_step(*system, ref_state, h_ref_step,
                                      ref_solver);
                if (!ref.converged) {
                    out << "\n# reference run failed at step " << step << "\n";
                    return kExitDivergence;
                }
                ref_state = ref.state;
            }
            out << "," << fmt((state.q - ref_state.q).norm() / ref_norm);
        }
        out << "," << outcome.iterations << "," << fmt(outcome.residual)
            << "\n";
        out.flush();  // keep partial results on later divergence
    }
    return kExitOk;
}

int run_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<double> grid = decade_grid(config.h_lo, config.h_hi);

    struct Task {
        std::string method;
        std::string solver;
        int resolution = 0;
        SweepResult result;
    };
    std::vector<Task> tasks;
    for (const std::string& m : config.methods) {
        auto colon = m.find(':');
        std::string name = m.substr(0, colon);
        std::string solver = colon == std::string::npos
                                 ? std::string("fixed_point")
                                 : m.substr(colon + 1);
        for (int n : config.resolutions)
            tasks.push_back({name, solver, n, {}});
    }

    SolverConfig solver_config{config.tolerance, config.max_iterations, 1e6};
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            Task& task = tasks[i];
            auto system = make_system(config.model, task.resolution,
                                      config.nu, config.linear);
            SpectralGrid g(task.resolution);
            State initial = make_initial_condition(config.model, g);
            Stepper stepper =
                make_stepper(task.method, task.solver, solver_config);
            task.result =
                sweep_max_timestep(task.method, stepper, *system, initial,
                                   grid, config.horizon_steps);
            task.result.resolution = task.resolution;
        }
    };
    int n_threads = config.threads > 0
                        ? config.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, (int)tasks.size()));
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ofstream out = open_output(config.output);
    out << "# expint sweep model=" << config.model
        << " horizon_steps=" << config.horizon_steps
        << " tol=" << fmt(config.tolerance) << " seed=" << config.seed
        << "\n";
    out << "# generated: " << timestamp() << "\n";
    out << "method,solver,N,h,converged,max_iterations_observed\n";
    for (const Task& task : tasks)
        for (const SweepPoint& p : task.result.points)
            out << task.method << "," << task.solver << ","
                << task.resolution << "," << fmt(p.h) << ","
                << (p.converged ? 1 : 0) << "," << p.max_iterations_observed
                << "\n";
    out << "# summary\n";
    out << "method,solver,N,h_max\n";
    for (const Task& task : tasks)
        out << task.method << "," << task.solver << "," << task.resolution
            << "," << fmt(task.result.h_max) << "\n";
    return kExitOk;
}

namespace {

struct CheckLine {
    std::string name;
    double value = 0.0;
    bool pass = false;
};

int report(const std::vector<CheckLine>& checks) {
    bool all = true;
    for (const auto& c : checks) {
        std::printf("%-52s %11.3e  %s\n", c.name.c_str(), c.value,
                    c.pass ? "pass" : "FAIL");
        all = all && c.pass;
    }
    return all ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int run_verify(const std::string& suite) {
    std::vector<CheckLine> checks;
    SolverConfig tight{1e-13, 200, 1e6};

    if (suite == "structure") {
        Matrix j(2, 2), d(2, 2);
        j << 0, 1, -1, 0;
        d = Matrix::Identity(2, 2);
        DenseTestSystem oscillator(j, d, 0.0);
        StructureReport r1 = check_structure(oscillator, 20);
        checks.push_back({"oscillator identities", r1.worst(),
                          r1.ok(1e-12)});

        NlsSystem nls{SpectralGrid(11)};
        StructureReport r2 = check_structure(nls, 10);
        checks.push_back({"nls identities (N=11)", r2.worst(), r2.ok(1e-10)});

        KdvSystem kdv{SpectralGrid(11)};
        StructureReport r3 = check_structure(kdv, 10);
        checks.push_back({"kdv identities (N=11)", r3.worst(), r3.ok(1e-10)});
        return report(checks);
    }

    if (suite == "poisson") {
        SpectralGrid grid(11);
        NlsSystem nls{grid};
        State z0 = standard_initial_condition(ModelKind::Nls, grid);
        const double h = 0.01, fd_eps = 1e-6;
        auto j_action = [&](const Vector& v) { return nls.apply_J(v); };
        auto wrap = [&](const Stepper& stepper) {
            return [&nls, stepper, h](const Vector& q) -> Vector {
                StepOutcome out = stepper(nls, State(q, 0.0), h);
                if (!out.converged)
                    throw StepFailure("poisson_check probe failed");
                return out.state.q;
            };
        };
        double dev_exp_mid = poisson_check(
            wrap(make_stepper("exp_midpoint", "fixed_point", tight)),
            j_action, z0.q, fd_eps);
        checks.push_back({"exp_midpoint Poisson deviation", dev_exp_mid,
                          dev_exp_mid <= 1e-6});
        double dev_mid = poisson_check(
            wrap(make_stepper("midpoint", "fixed_point", tight)), j_action,
            z0.q, fd_eps);
        checks.push_back(
            {"midpoint Poisson deviation", dev_mid, dev_mid <= 1e-6});
        double dev_euler = poisson_check(
            wrap(make_stepper("exp_euler", "fixed_point", tight)), j_action,
            z0.q, fd_eps);
        checks.push_back({"exp_euler deviation (negative control, > 1e-4)",
                          dev_euler, dev_euler > 1e-4});
        return report(checks);
    }

    if (suite == "composition") {
        DisrkScheme scheme = DisrkScheme::disex6();
        checks.push_back({"disex6 weight sum - 1",
                          std::abs(scheme.weight_sum() - 1.0),
                          std::abs(scheme.weight_sum() - 1.0) <= 1e-8});
        SpectralGrid grid(11);
        NlsSystem nls{grid};
        State z0 = standard_initial_condition(ModelKind::Nls, grid);
        StepOutcome comp = disex_step(scheme, nls, z0, 0.01, tight);
        StepOutcome tableau = disex_tableau_step(scheme, nls, z0, 0.01, tight);
        double diff = comp.converged && tableau.converged
                          ? (comp.state.q - tableau.state.q)
                                .lpNorm<Eigen::Infinity>()
                          : std::numeric_limits<double>::infinity();
        checks.push_back(
            {"disex6 composition vs tableau", diff, diff <= 1e-10});
        return report(checks);
    }

    if (suite == "order") {
        SpectralGrid grid(21);
        NlsSystem nls{grid};
        State z0 = standard_initial_condition(ModelKind::Nls, grid);
        std::vector<double> hs = {4e-3, 2e-3, 1e-3, 5e-4};
        double s1 = estimate_order(
            make_stepper("exp_euler", "fixed_point", tight), nls, z0, 0.2,
            hs, tight);
        checks.push_back(
            {"exp_euler order (1 +/- 0.1)", s1, std::abs(s1 - 1.0) <= 0.1});
        double s2 = estimate_order(
            make_stepper("exp_midpoint", "fixed_point", tight), nls, z0, 0.2,
            hs, tight);
        checks.push_back(
            {"exp_midpoint order (2 +/- 0.1)", s2, std::abs(s2 - 2.0) <= 0.1});
        return report(checks);
    }

    std::cerr << "unknown verify suite: " << suite << "\n";
    return kExitUsage;
}

int emit_plot_script(const std::vector<std::string>& csv_paths,
                     const std::string& output_path) {
    struct CsvInfo {
        std::string path;
        bool is_sweep = false;
        bool has_traj = false;
    };
    std::vector<CsvInfo> infos;
    for (const std::string& path : csv_paths) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("missing CSV: " + path);
        std::string line;
        std::string header;
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] != '#') {
                header = line;
                break;
            }
        }
        if (header.empty())
            throw std::runtime_error("empty CSV: " + path);
        CsvInfo info;
        info.path = path;
        if (header.rfind("method,solver,N,h", 0) == 0) {
            info.is_sweep = true;
        } else if (header.rfind("step,t,energy_error", 0) == 0) {
            info.has_traj =
                header.find("traj_error") != std::string::npos;
        } else {
            throw std::runtime_error("unrecognized CSV schema: " + path);
        }
        infos.push_back(info);
    }

    std::ofstream out = open_output(output_path);
    out << "#!/usr/bin/env python3\n"
        << "# auto-generated plot script; renders the CSVs it was built"
           " from\n"
        << "import csv\n"
        << "import math\n"
        << "from collections import defaultdict\n"
        << "import matplotlib\n"
        << "matplotlib.use('Agg')\n"
        << "import matplotlib.pyplot as plt\n\n"
        << "def read_rows(path):\n"
        << "    rows, header = [], None\n"
        << "    with open(path) as f:\n"
        << "        for line in f:\n"
        << "            line = line.strip()\n"
        << "            if not line or line.startswith('#'):\n"
        << "                header = None if line == '# summary' else header\n"
        << "                continue\n"
        << "            if header is None:\n"
        << "                header = line.split(',')\n"
        << "                continue\n"
        << "            rows.append(dict(zip(header, line.split(','))))\n"
        << "    return rows\n\n";

    int fig = 0;
    for (const CsvInfo& info : infos) {
        ++fig;
        out << "rows = read_rows(" << '"' << info.path << '"' << ")\n";
        if (info.is_sweep) {
            out << "series = defaultdict(list)\n"
                << "for r in rows:\n"
                << "    if 'h_max' in r and float(r['h_max']) > 0:\n"
                << "        series[(r['method'], r['solver'])].append("
                   "(int(r['N']), float(r['h_max'])))\n"
                << "plt.figure()\n"
                << "for key, pts in sorted(series.items()):\n"
                << "    pts.sort()\n"
                << "    plt.loglog([p[0] for p in pts], [p[1] for p in pts],"
                   " marker='o', label='%s/%s' % key)\n"
                << "plt.xlabel('N'); plt.ylabel('max converging h')\n"
                << "plt.legend(); plt.grid(True, which='both')\n"
                << "plt.savefig('sweep_" << fig << ".png', dpi=150)\n\n";
        } else {
            out << "t = [float(r['t']) for r in rows]\n"
                << "e = [float(r['energy_error']) for r in rows]\n"
                << "plt.figure()\n"
                << "plt.semilogy(t, [max(v, 1e-18) for v in e],"
                   " label='energy error')\n";
            if (info.has_traj)
                out << "tr = [float(r['traj_error']) for r in rows]\n"
                    << "plt.semilogy(t, [max(v, 1e-18) for v in tr],"
                       " label='trajectory error')\n";
            out << "plt.xlabel('t'); plt.ylabel('error')\n"
                << "plt.legend(); plt.grid(True, which='both')\n"
                << "plt.savefig('trajectory_" << fig << ".png', dpi=150)\n\n";
        }
    }
    return kExitOk;
}

}  // namespace expint
