// dynamics.hpp — Steady-state solvers, transient integration, full-Liouvillian oracle

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qar/reduced.hpp"

namespace qar {

enum class InitialStateKind { ThermalProduct, DarkOrthogonal, Custom };

struct InitialState {
    InitialStateKind kind{InitialStateKind::ThermalProduct};
    ReducedState custom; // used when kind == Custom
};

// Product of single-qubit Gibbs states, populations only.
inline ReducedState thermal_product_state(const MachineParams& m, const BathParams& b) {
    const std::array<double, 3> E{m.E1, m.E2, m.E3()};
    std::array<double, 3> pexc{};
    for (int i = 0; i < 3; ++i) {
        double w = std::exp(-b.beta[i] * E[i]);
        pexc[i] = w / (1.0 + w);
    }
    ReducedState s;
    for (int d = 0; d < 8; ++d) {
        double w = 1.0;
        for (int q = 0; q < 3; ++q) {
            bool up = d & (4 >> q);
            w *= up ? pexc[q] : 1.0 - pexc[q];
        }
        s.p(d) = w;
    }
    return s;
}

inline ReducedState initial_state(const InitialState& init, const MachineParams& m, const BathParams& b) {
    switch (init.kind) {
    case InitialStateKind::ThermalProduct:
        return thermal_product_state(m, b);
    case InitialStateKind::DarkOrthogonal: {
        // Thermal populations with the degenerate 2x2 block replaced by its
        // projection onto |psi_+> = (|010> + |101>)/sqrt(2), so rho|psi_D> = 0.
        ReducedState s = thermal_product_state(m, b);
        double half = 0.5 * (s.p(kIdx010) + s.p(kIdx101));
        s.p(kIdx010) = half;
        s.p(kIdx101) = half;
        s.p(8) = half;
        s.p(9) = 0.0;
        return s;
    }
    case InitialStateKind::Custom:
        init.custom.validate();
        return init.custom;
    }
    throw std::logic_error("initial_state: bad kind");
}

struct SteadySolution {
    ReducedState state;
    double residual{0.0};      // ||W p||
    int kernel_dimension{0};
    double dark_population{0.0};
    bool used_integration_fallback{false};
};

inline bool is_dark_conserving(const BathParams& b) {
    return b.model == DissipationModel::Coherent && b.alpha == 1.0;
}

// Kernel extraction by singular-value decomposition (W is non-normal).
// alpha < 1 and the incoherent model have a unique kernel vector; the
// alpha = 1 coherent model has a two-dimensional kernel resolved by the
// conserved dark population of the initial state.
inline SteadySolution steady_state(const WMatrix& W, const ReducedState& init) {
    Eigen::JacobiSVD<Mat10> svd(W.w, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double thresh = 1e-10 * sv(0);
    int dim = 0;
    for (int i = 0; i < 10; ++i)
        if (sv(i) < thresh) ++dim;

    bool dark = is_dark_conserving(W.baths);
    int expected = dark ? 2 : 1;
    if (dim != expected)
        throw std::runtime_error("steady_state: kernel dimension " + std::to_string(dim) +
                                 ", expected " + std::to_string(expected));

    SteadySolution out;
    out.kernel_dimension = dim;
    if (!dark) {
        Vec10 v = svd.matrixV().col(9);
        double tr = v.head<8>().sum();
        if (std::abs(tr) < 1e-14)
            throw std::runtime_error("steady_state: traceless kernel vector");
        out.state.p = v / tr;
    } else {
        // Constrained solve: W p = 0, trace = 1, p_D = p_D(init).
        Eigen::Matrix<double, 12, 10> A;
        Eigen::Matrix<double, 12, 1> rhs;
        A.topRows<10>() = W.w;
        A.row(10).setZero();
        A.row(10).head<8>().setOnes();
        A.row(11).setZero();
        A(11, kIdx010) = 0.5;
        A(11, kIdx101) = 0.5;
        A(11, 8) = -1.0;
        rhs.setZero();
        rhs(10) = 1.0;
        rhs(11) = init.dark_population();
        out.state.p = A.colPivHouseholderQr().solve(rhs);
    }
    out.residual = (W.w * out.state.p).norm();
    out.dark_population = out.state.dark_population();
    return out;
}

// Brute-force oracle: null space of the 64x64 generator, resolved by the same
// conserved-quantity constraints as the reduced solver.
inline Mat8 steady_state_full(const Liouvillian& L, std::optional<double> dark_population = {}) {
    Eigen::JacobiSVD<Mat64> svd(L.total, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double thresh = 1e-10 * sv(0);
    std::vector<Mat8> basis;
    for (int i = 0; i < 64; ++i) {
        if (sv(i) >= thresh) continue;
        Eigen::Matrix<Complex, 64, 1> v = svd.matrixV().col(i);
        Mat8 m = Eigen::Map<const Mat8>(v.data());
        Mat8 h = 0.5 * (m + m.adjoint());
        Mat8 a = Complex(0, -0.5) * (m - m.adjoint());
        for (const Mat8& cand : {h, a}) {
            if (cand.norm() < 1e-12) continue;
            Mat8 res = cand;
            for (const Mat8& bvec : basis)
                res -= (bvec.cwiseProduct(res.conjugate()).sum() / bvec.squaredNorm()).real() * bvec;
            if (res.norm() > 1e-8) basis.push_back(res);
        }
    }
    if (basis.empty())
        throw std::runtime_error("steady_state_full: empty kernel");

    auto pd_of = [](const Mat8& m) {
        return 0.5 * (m(kIdx010, kIdx010).real() + m(kIdx101, kIdx101).real()) -
               m(kIdx010, kIdx101).real();
    };

    Mat8 pi;
    if (basis.size() == 1) {
        double tr = basis[0].trace().real();
        if (std::abs(tr) < 1e-14)
            throw std::runtime_error("steady_state_full: traceless kernel");
        pi = basis[0] / tr;
    } else {
        if (!dark_population)
            throw std::runtime_error("steady_state_full: degenerate kernel needs a dark-population constraint");
        Eigen::MatrixXd C(2, static_cast<int>(basis.size()));
        for (int j = 0; j < C.cols(); ++j) {
            C(0, j) = basis[j].trace().real();
            C(1, j) = pd_of(basis[j]);
        }
        Eigen::Vector2d target(1.0, *dark_population);
        Eigen::VectorXd coef = C.completeOrthogonalDecomposition().solve(target);
        pi.setZero();
        for (int j = 0; j < C.cols(); ++j) pi += coef(j) * basis[j];
    }

    // Positivity sanity check.
    Eigen::SelfAdjointEigenSolver<Mat8> es(pi);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw std::runtime_error("steady_state_full: kernel state not positive semidefinite");
    return pi;
}

struct TrajectorySample {
    double t;
    Vec10 p;
};

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on pdot = W p.
inline std::vector<TrajectorySample> integrate(const Mat10& W, const Vec10& p0, double t_max,
                                               double rel_tol = 1e-9, double abs_tol = 1e-12) {
    if (!(t_max > 0.0)) throw std::invalid_argument("integrate: t_max must be positive");
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    std::vector<TrajectorySample> out;
    Vec10 p = p0;
    double t = 0.0;
    out.push_back({t, p});
    double wnorm = W.cwiseAbs().maxCoeff();
    double h = std::min(t_max, 0.01 / std::max(wnorm, 1e-30));
    Vec10 k1 = W * p;
    int rejects_in_a_row = 0;
    while (t < t_max) {
        h = std::min(h, t_max - t);
        Vec10 k2 = W * (p + h * a21 * k1);
        Vec10 k3 = W * (p + h * (a31 * k1 + a32 * k2));
        Vec10 k4 = W * (p + h * (a41 * k1 + a42 * k2 + a43 * k3));
        Vec10 k5 = W * (p + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        Vec10 k6 = W * (p + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        Vec10 pn = p + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        Vec10 k7 = W * pn;
        Vec10 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double errnorm = 0.0;
        for (int i = 0; i < 10; ++i) {
            double sc = abs_tol + rel_tol * std::max(std::abs(p(i)), std::abs(pn(i)));
            errnorm = std::max(errnorm, std::abs(err(i)) / sc);
        }
        if (errnorm <= 1.0) {
            t += h;
            p = pn;
            k1 = k7;
            out.push_back({t, p});
            rejects_in_a_row = 0;
        } else if (++rejects_in_a_row > 60) {
            throw std::runtime_error("integrate: step-size underflow (stiff system)");
        }
        double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < 1e-15 * t_max)
            throw std::runtime_error("integrate: step-size underflow (stiff system)");
    }
    return out;
}

} // namespace qar
