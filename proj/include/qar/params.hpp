// params.hpp — Parameter containers, thermal rates, and analytic performance bounds

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qar {

// Units: hbar = kB = 1, energies in kB*T1 (so beta1 = 1 by convention),
// rates in the same units. Heat currents are reported divided by gamma0
// where a figure preset calls for it.

enum class DissipationModel { Coherent, IncoherentCorrelated };

// Machine Hamiltonian parameters. Stores (E1, E2); the resonance constraint
// E2 = E1 + E3 is enforced by deriving E3, never storing it.
struct MachineParams {
    double E1{0.8};
    double E2{5.0};
    double g{0.005};

    double E3() const { return E2 - E1; }

    void validate() const {
        if (!(E1 > 0.0) || !(E2 > 0.0) || !(E3() > 0.0))
            throw std::invalid_argument("MachineParams: energies must satisfy 0 < E1 < E2");
        if (!(g >= 0.0))
            throw std::invalid_argument("MachineParams: g must be non-negative");
    }

    // Weak-coupling validity guard; callers may warn above this.
    bool weak_coupling_ok() const {
        double emin = std::min(E1, std::min(E2, E3()));
        return g < emin / 10.0;
    }
};

struct BathParams {
    std::array<double, 3> beta{1.0, 0.5, 0.05};
    std::array<double, 3> gamma0{0.01, 0.01, 0.01};
    double alpha{0.0};
    DissipationModel model{DissipationModel::Coherent};

    void validate() const {
        if (!(beta[0] >= beta[1] && beta[1] >= beta[2] && beta[2] > 0.0))
            throw std::invalid_argument("BathParams: need beta1 >= beta2 >= beta3 > 0");
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::invalid_argument("BathParams: alpha must lie in [0,1]");
        for (double gi : gamma0)
            if (!(gi > 0.0))
                throw std::invalid_argument("BathParams: gamma0 entries must be positive");
    }
};

struct RateSet {
    std::array<double, 3> gamma_up{};
    std::array<double, 3> gamma_down{};
};

// Bose occupation of a transition of energy E against a bath at inverse
// temperature beta.
inline double thermal_occupation(double beta, double E) {
    double x = beta * E;
    if (!(x > 0.0))
        throw std::domain_error("thermal_occupation: beta*E must be positive");
    return 1.0 / std::expm1(x);
}

// Local detailed balance: gamma_down = gamma0*(n_th + 1), gamma_up = gamma0*n_th,
// so gamma_down/gamma_up = exp(beta*E).
inline RateSet rates(const MachineParams& m, const BathParams& b) {
    m.validate();
    b.validate();
    const std::array<double, 3> E{m.E1, m.E2, m.E3()};
    RateSet r;
    for (int i = 0; i < 3; ++i) {
        double nth = thermal_occupation(b.beta[i], E[i]);
        r.gamma_up[i] = b.gamma0[i] * nth;
        r.gamma_down[i] = b.gamma0[i] * (nth + 1.0);
    }
    return r;
}

// Reversible COP bound (beta2 - beta3)/(beta1 - beta2).
inline double carnot_cop(const BathParams& b) {
    if (!(b.beta[0] > b.beta[1]))
        throw std::domain_error("carnot_cop: bound undefined (beta1 == beta2)");
    return (b.beta[1] - b.beta[2]) / (b.beta[0] - b.beta[1]);
}

// Largest E1 with non-negative cooling power, at fixed E2 with E3 = E2 - E1:
// solves E1 = etaC*(E2 - E1).
inline double cooling_window_max_e1(const BathParams& b, double E2) {
    double etaC = carnot_cop(b);
    return etaC * E2 / (1.0 + etaC);
}

inline const char* model_name(DissipationModel m) {
    return m == DissipationModel::Coherent ? "coherent" : "incoherent_correlated";
}

inline DissipationModel model_from_name(const std::string& s) {
    if (s == "coherent") return DissipationModel::Coherent;
    if (s == "incoherent_correlated" || s == "ic") return DissipationModel::IncoherentCorrelated;
    throw std::invalid_argument("unknown dissipation model: " + s);
}

} // namespace qar
