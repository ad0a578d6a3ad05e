// reduced.hpp — 10-coordinate reduced state and the projected W matrix

#pragma once

#include <Eigen/Dense>

#include "qar/operators.hpp"

namespace qar {

using Vec10 = Eigen::Matrix<double, 10, 1>;
using Mat10 = Eigen::Matrix<double, 10, 10>;

// Coordinates: (p000..p111, c_R, c_I) with c = <010|rho|101>.
// Dark population p_D = (p010 + p101)/2 - c_R.
struct ReducedState {
    Vec10 p = Vec10::Zero();

    double trace() const { return p.head<8>().sum(); }
    double c_r() const { return p(8); }
    double c_i() const { return p(9); }
    double dark_population() const { return 0.5 * (p(kIdx010) + p(kIdx101)) - p(8); }

    void validate(double tol = 1e-9) const {
        if (std::abs(trace() - 1.0) > tol)
            throw std::invalid_argument("ReducedState: populations must sum to 1");
        for (int i = 0; i < 8; ++i)
            if (p(i) < -1e-12)
                throw std::invalid_argument("ReducedState: negative population");
        double c2 = p(8) * p(8) + p(9) * p(9);
        if (c2 > p(kIdx010) * p(kIdx101) + 1e-12)
            throw std::invalid_argument("ReducedState: degenerate block not positive semidefinite");
    }
};

inline Mat8 embed(const Vec10& p) {
    Mat8 rho = Mat8::Zero();
    for (int i = 0; i < 8; ++i) rho(i, i) = p(i);
    Complex c(p(8), p(9));
    rho(kIdx010, kIdx101) = c;
    rho(kIdx101, kIdx010) = std::conj(c);
    return rho;
}

inline Mat8 embed(const ReducedState& s) { return embed(s.p); }

// Projection onto the 10 retained coordinates. Optionally reports the largest
// discarded off-diagonal magnitude.
inline Vec10 project(const Mat8& rho, double* excluded_max = nullptr) {
    Vec10 p;
    for (int i = 0; i < 8; ++i) p(i) = rho(i, i).real();
    p(8) = rho(kIdx010, kIdx101).real();
    p(9) = rho(kIdx010, kIdx101).imag();
    if (excluded_max) {
        double mx = 0.0;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                if (i == j) continue;
                if ((i == kIdx010 && j == kIdx101) || (i == kIdx101 && j == kIdx010)) continue;
                mx = std::max(mx, std::abs(rho(i, j)));
            }
        *excluded_max = mx;
    }
    return p;
}

struct WMatrix {
    Mat10 w;
    MachineParams machine;
    BathParams baths;
};

// W is obtained by projecting the full generator onto the retained
// coordinates. The reduction is closed: for states supported on these
// coordinates the generator produces no other matrix elements. A nonzero
// leak indicates a bug or an invalid model variant.
inline WMatrix reduce_to_w(const Liouvillian& L, double leak_tol = 1e-12) {
    WMatrix out;
    out.machine = L.machine;
    out.baths = L.baths;
    double scale = std::max(1.0, L.total.cwiseAbs().maxCoeff());
    for (int k = 0; k < 10; ++k) {
        Vec10 e = Vec10::Zero();
        e(k) = 1.0;
        Mat8 drho = apply_superop(L.total, embed(e));
        double leak = 0.0;
        out.w.col(k) = project(drho, &leak);
        if (leak > leak_tol * scale)
            throw std::runtime_error("reduce_to_w: closure violated (excluded coherences generated)");
    }
    return out;
}

} // namespace qar
