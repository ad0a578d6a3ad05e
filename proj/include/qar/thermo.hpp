// thermo.hpp — Steady-state heat currents, COP, entropy production, effective temperatures

#pragma once

#include <Eigen/Dense>

#include "qar/dynamics.hpp"

namespace qar {

struct ThermoReport {
    std::array<double, 3> q_dot{};       // heat currents, positive into the machine
    double cop{0.0};                     // q_dot1 / q_dot3
    bool cop_defined{true};
    double sigma_dot{0.0};               // entropy production rate
    std::array<double, 3> beta_eff{};    // Gibbs-ratio inverse temperatures of the marginals
    bool cooling{false};                 // q_dot1 >= 0
    double hint_correction{0.0};         // max_i |Tr[H_int L_i(pi)]| / max_i |q_dot_i|
    double first_law_residual{0.0};      // |sum_i q_dot_i|
};

// Q_i = Tr[(H1+H2+H3) L_i(pi)] from the per-bath dissipators. Works uniformly
// for both model variants. The neglected interaction-term contribution
// Tr[H_int L_i(pi)] is reported as a relative diagnostic, normalized by the
// largest current so it stays finite where an individual current crosses zero.
inline std::array<double, 3> heat_currents(const Mat8& pi, const Liouvillian& L,
                                           std::array<double, 3>* hint_terms = nullptr) {
    std::array<double, 3> q{};
    for (int i = 0; i < 3; ++i) {
        Mat8 drho = apply_superop(L.per_bath[i], pi);
        q[i] = (L.h_free * drho).trace().real();
        if (hint_terms) (*hint_terms)[i] = (L.h_int * drho).trace().real();
    }
    return q;
}

inline double entropy_production(const std::array<double, 3>& q, const BathParams& b) {
    return -(b.beta[0] * q[0] + b.beta[1] * q[1] + b.beta[2] * q[2]);
}

// Gibbs-ratio inverse temperature of qubit i's steady marginal,
// beta_eff = ln(p0/p1)/E_i. The steady marginals are diagonal here.
inline double effective_beta(const Mat8& pi, const MachineParams& m, int qubit) {
    const std::array<double, 3> E{m.E1, m.E2, m.E3()};
    int bit = 4 >> qubit;
    double p0 = 0.0, p1 = 0.0;
    for (int d = 0; d < 8; ++d)
        ((d & bit) ? p1 : p0) += pi(d, d).real();
    if (!(p0 > 0.0) || !(p1 > 0.0))
        throw std::domain_error("effective_beta: vanishing marginal population");
    return std::log(p0 / p1) / E[qubit];
}

inline ThermoReport thermo_report(const SteadySolution& sol, const Liouvillian& L) {
    ThermoReport r;
    Mat8 pi = embed(sol.state);
    std::array<double, 3> hint{};
    r.q_dot = heat_currents(pi, L, &hint);
    double qmax = 0.0;
    for (double q : r.q_dot) qmax = std::max(qmax, std::abs(q));
    r.first_law_residual = std::abs(r.q_dot[0] + r.q_dot[1] + r.q_dot[2]);
    if (r.q_dot[2] != 0.0) {
        r.cop = r.q_dot[0] / r.q_dot[2];
    } else {
        r.cop_defined = false;
    }
    r.sigma_dot = entropy_production(r.q_dot, L.baths);
    for (int i = 0; i < 3; ++i) r.beta_eff[i] = effective_beta(pi, L.machine, i);
    r.cooling = r.q_dot[0] >= 0.0;
    double hmax = 0.0;
    for (double h : hint) hmax = std::max(hmax, std::abs(h));
    r.hint_correction = qmax > 0.0 ? hmax / qmax : 0.0;
    return r;
}

// One full solve of a parameter point through the reduced pipeline.
inline std::pair<SteadySolution, ThermoReport> solve_point(const MachineParams& m, const BathParams& b,
                                                           const InitialState& init = {}) {
    Liouvillian L = liouvillian(m, b);
    WMatrix W = reduce_to_w(L);
    ReducedState p0 = initial_state(init, m, b);
    SteadySolution sol = steady_state(W, p0);
    return {sol, thermo_report(sol, L)};
}

struct CopAtMaxPower {
    double e1_star{0.0};
    double q1_star{0.0};
    double eta_star{0.0};
};

struct E1GridSpec {
    double lo{0.05};
    double hi{0.0};   // 0 means: just inside the cooling window
    int points{60};
    bool fixed_e3{false}; // sweep E1 at fixed E3 = machine.E3() instead of fixed E2
};

// Grid scan plus golden-section refinement of Q1(E1). The scan guards the
// unimodality assumption; refinement brackets the best grid point.
inline CopAtMaxPower cop_at_max_power(const MachineParams& machine, const BathParams& baths,
                                      const E1GridSpec& grid = {}) {
    double etaC = carnot_cop(baths);
    double e3_fixed = machine.E3();
    double hi = grid.hi;
    if (hi <= 0.0) {
        double emax = grid.fixed_e3 ? etaC * e3_fixed : cooling_window_max_e1(baths, machine.E2);
        hi = emax - 1e-3 * emax;
    }
    if (!(hi > grid.lo) || grid.points < 4)
        throw std::invalid_argument("cop_at_max_power: empty or degenerate grid");

    auto q1_of = [&](double e1) {
        MachineParams m = machine;
        m.E1 = e1;
        if (grid.fixed_e3) m.E2 = e1 + e3_fixed;
        auto [sol, rep] = solve_point(m, baths);
        return rep.q_dot[0];
    };

    int best = 0;
    std::vector<double> xs(grid.points), qs(grid.points);
    for (int i = 0; i < grid.points; ++i) {
        xs[i] = grid.lo + (hi - grid.lo) * i / (grid.points - 1);
        qs[i] = q1_of(xs[i]);
        if (qs[i] > qs[best]) best = i;
    }
    if (qs[best] <= 0.0)
        throw std::runtime_error("cop_at_max_power: no positive cooling power on the grid");

    double a = xs[std::max(best - 1, 0)];
    double b = xs[std::min(best + 1, grid.points - 1)];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = q1_of(x1), f2 = q1_of(x2);
    while (b - a > 1e-7) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = q1_of(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = q1_of(x1);
        }
    }
    CopAtMaxPower out;
    out.e1_star = 0.5 * (a + b);
    out.q1_star = q1_of(out.e1_star);
    MachineParams mstar = machine;
    mstar.E1 = out.e1_star;
    if (grid.fixed_e3) mstar.E2 = out.e1_star + e3_fixed;
    auto [sol, rep] = solve_point(mstar, baths);
    out.eta_star = rep.cop;
    return out;
}

} // namespace qar
