// qar_cli.cpp — Command-line interface: steady, sweep, transient, figure, verify

#include <iostream>

#include <CLI11.hpp>

#include "qar/verify.hpp"

namespace {

// Exit codes: 0 success, 1 validation error, 2 solver error, 3 verification failure.
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;

struct CommonOpts {
    double e1 = 0.8;
    double e2 = 5.0;
    double g = 0.005;
    double beta2 = 0.5;
    double beta3 = 0.05;
    double gamma0 = 0.01;
    double alpha = 0.0;
    std::string model = "coherent";
    std::string init = "thermal";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--E1", o.e1, "Cold-qubit energy (units kB T1)");
    cmd->add_option("--E2", o.e2, "Work-qubit energy; E3 = E2 - E1");
    cmd->add_option("--g", o.g, "Internal coupling strength");
    cmd->add_option("--beta2", o.beta2, "Inverse temperature of reservoir 2 (beta1 = 1)");
    cmd->add_option("--beta3", o.beta3, "Inverse temperature of reservoir 3");
    cmd->add_option("--gamma0", o.gamma0, "Bare dissipation rate (all reservoirs)");
    cmd->add_option("--alpha", o.alpha, "Common-reservoir parameter in [0,1]");
    cmd->add_option("--model", o.model, "Dissipation model: coherent | incoherent_correlated")
        ->check(CLI::IsMember({"coherent", "incoherent_correlated", "ic"}));
    cmd->add_option("--init", o.init, "Initial state: thermal | darkorthogonal")
        ->check(CLI::IsMember({"thermal", "darkorthogonal"}));
}

qar::MachineParams machine_of(const CommonOpts& o) {
    qar::MachineParams m;
    m.E1 = o.e1;
    m.E2 = o.e2;
    m.g = o.g;
    return m;
}

qar::BathParams baths_of(const CommonOpts& o) {
    qar::BathParams b;
    b.beta = {1.0, o.beta2, o.beta3};
    b.gamma0 = {o.gamma0, o.gamma0, o.gamma0};
    b.alpha = o.alpha;
    b.model = qar::model_from_name(o.model);
    return b;
}

qar::InitialState init_of(const CommonOpts& o) {
    qar::InitialState init;
    init.kind = o.init == "darkorthogonal" ? qar::InitialStateKind::DarkOrthogonal
                                           : qar::InitialStateKind::ThermalProduct;
    return init;
}

void print_json_report(const qar::SteadySolution& sol, const qar::ThermoReport& rep) {
    auto f = qar::format_value;
    std::cout << "{\n"
              << "  \"q_dot\": [" << f(rep.q_dot[0]) << ", " << f(rep.q_dot[1]) << ", "
              << f(rep.q_dot[2]) << "],\n"
              << "  \"cop\": " << (rep.cop_defined ? f(rep.cop) : "null") << ",\n"
              << "  \"sigma_dot\": " << f(rep.sigma_dot) << ",\n"
              << "  \"beta_eff\": [" << f(rep.beta_eff[0]) << ", " << f(rep.beta_eff[1]) << ", "
              << f(rep.beta_eff[2]) << "],\n"
              << "  \"cooling\": " << (rep.cooling ? "true" : "false") << ",\n"
              << "  \"hint_correction\": " << f(rep.hint_correction) << ",\n"
              << "  \"first_law_residual\": " << f(rep.first_law_residual) << ",\n"
              << "  \"kernel_dimension\": " << sol.kernel_dimension << ",\n"
              << "  \"dark_population\": " << f(sol.dark_population) << ",\n"
              << "  \"residual\": " << f(sol.residual) << ",\n"
              << "  \"steady_state\": [";
    for (int i = 0; i < 10; ++i)
        std::cout << (i ? ", " : "") << f(sol.state.p(i));
    std::cout << "]\n}\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-qubit autonomous absorption refrigerator with common reservoirs"};
    app.require_subcommand(1);

    CommonOpts steady_opts;
    auto* steady = app.add_subcommand("steady", "Solve a single steady-state point, report JSON");
    add_common(steady, steady_opts);

    CommonOpts sweep_opts;
    std::vector<std::string> axis_specs;
    std::string sweep_out = "sweep.csv";
    auto* sweep = app.add_subcommand("sweep", "Sweep one or two parameters, write CSV");
    add_common(sweep, sweep_opts);
    sweep->add_option("--axis", axis_specs, "Axis spec name:lo:hi:points (name in E1,alpha,beta2,beta3,g)")
        ->required()
        ->expected(1, 2);
    sweep->add_option("--out", sweep_out, "Output CSV path");

    CommonOpts tr_opts;
    double t_max = 1000.0;
    double rel_tol = 1e-9;
    std::string tr_out = "transient.csv";
    auto* transient = app.add_subcommand("transient", "Integrate the reduced dynamics, write CSV");
    add_common(transient, tr_opts);
    transient->add_option("--t-max", t_max, "Integration horizon (units 1/(kB T1))");
    transient->add_option("--rel-tol", rel_tol, "Relative tolerance of the adaptive integrator");
    transient->add_option("--out", tr_out, "Output CSV path");

    std::string fig_name;
    std::string fig_out = "figures";
    auto* figure = app.add_subcommand("figure", "Emit a figure-reproduction dataset");
    figure->add_option("--name", fig_name, "Preset name")
        ->required()
        ->check(CLI::IsMember(qar::figure_preset_names()));
    figure->add_option("--out", fig_out, "Output directory");

    std::string level = "fast";
    auto* verify = app.add_subcommand("verify", "Run the invariant and oracle suites");
    verify->add_option("--level", level, "fast | full")->check(CLI::IsMember({"fast", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (steady->parsed()) {
            auto [sol, rep] = qar::solve_point(machine_of(steady_opts), baths_of(steady_opts),
                                               init_of(steady_opts));
            print_json_report(sol, rep);
            return 0;
        }

        if (sweep->parsed()) {
            std::vector<qar::SweepAxis> axes;
            for (const auto& spec : axis_specs) {
                qar::SweepAxis ax;
                double lo = 0, hi = 0;
                int pts = 0;
                char name[32];
                if (std::sscanf(spec.c_str(), "%31[^:]:%lf:%lf:%d", name, &lo, &hi, &pts) != 4 || pts < 1)
                    throw std::invalid_argument("bad axis spec: " + spec);
                ax.name = name;
                ax.values = qar::linspace(lo, hi, pts);
                axes.push_back(std::move(ax));
            }
            auto rows = qar::run_sweep(machine_of(sweep_opts), baths_of(sweep_opts), axes,
                                       init_of(sweep_opts));
            qar::write_csv(sweep_out, rows);
            std::cout << rows.size() << " rows -> " << sweep_out << "\n";
            return 0;
        }

        if (transient->parsed()) {
            qar::MachineParams m = machine_of(tr_opts);
            qar::BathParams b = baths_of(tr_opts);
            qar::WMatrix W = qar::reduce_to_w(qar::liouvillian(m, b));
            qar::ReducedState p0 = qar::initial_state(init_of(tr_opts), m, b);
            auto traj = qar::integrate(W.w, p0.p, t_max, rel_tol);
            std::ofstream out(tr_out);
            if (!out) throw std::runtime_error("cannot open " + tr_out);
            out << "t,p000,p001,p010,p011,p100,p101,p110,p111,c_r,c_i,dark_population\n";
            for (const auto& s : traj) {
                out << qar::format_value(s.t);
                for (int i = 0; i < 10; ++i) out << "," << qar::format_value(s.p(i));
                double pd = 0.5 * (s.p(qar::kIdx010) + s.p(qar::kIdx101)) - s.p(8);
                out << "," << qar::format_value(pd) << "\n";
            }
            std::cout << traj.size() << " samples -> " << tr_out << "\n";
            return 0;
        }

        if (figure->parsed()) {
            qar::figure_preset(fig_name, fig_out);
            std::cout << fig_name << " -> " << fig_out << "\n";
            return 0;
        }

        if (verify->parsed()) {
            qar::VerifyReport rep = qar::verify(level == "full");
            for (const auto& c : rep.checks)
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
                          << (c.message.empty() ? "" : " (" + c.message + ")") << "\n";
            std::cout << (rep.all_pass() ? "verify: all checks passed" : "verify: FAILURES present")
                      << "\n";
            return rep.all_pass() ? 0 : kExitVerification;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
