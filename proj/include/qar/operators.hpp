// operators.hpp — Machine Hamiltonian, jump operators, Liouvillian, dark state

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qar/params.hpp"

namespace qar {

using Complex = std::complex<double>;
using Mat8 = Eigen::Matrix<Complex, 8, 8>;
using Mat64 = Eigen::Matrix<Complex, 64, 64>;
using Vec8c = Eigen::Matrix<Complex, 8, 1>;

// Basis convention: |q1 q2 q3>, index = 4*q1 + 2*q2 + q3.
// The degenerate pair is |010> -> 2 and |101> -> 5.
inline constexpr int kIdx010 = 2;
inline constexpr int kIdx101 = 5;

// Lowering operator sigma_i^- = |0><1| on qubit i (0-based), identity elsewhere.
inline Mat8 sigma_minus(int qubit) {
    Mat8 out = Mat8::Zero();
    int bit = 4 >> qubit; // qubit 0 is the most significant
    for (int col = 0; col < 8; ++col) {
        if (col & bit) out(col & ~bit, col) = 1.0;
    }
    return out;
}

// Number operator |1><1| on qubit i.
inline Mat8 number_op(int qubit) {
    Mat8 out = Mat8::Zero();
    int bit = 4 >> qubit;
    for (int d = 0; d < 8; ++d)
        if (d & bit) out(d, d) = 1.0;
    return out;
}

// Free part sum_i E_i |1><1|_i.
inline Mat8 free_hamiltonian(const MachineParams& m) {
    return m.E1 * number_op(0) + m.E2 * number_op(1) + m.E3() * number_op(2);
}

// Interaction g(|101><010| + h.c.); commutes with the free part on resonance.
inline Mat8 interaction_hamiltonian(const MachineParams& m) {
    Mat8 out = Mat8::Zero();
    out(kIdx101, kIdx010) = m.g;
    out(kIdx010, kIdx101) = m.g;
    return out;
}

inline Mat8 hamiltonian(const MachineParams& m) {
    m.validate();
    return free_hamiltonian(m) + interaction_hamiltonian(m);
}

// Dark state (|010> - |101>)/sqrt(2), annihilated by every jump operator at
// alpha = 1 in the Coherent model.
inline Vec8c dark_state() {
    Vec8c v = Vec8c::Zero();
    v(kIdx010) = 1.0 / std::sqrt(2.0);
    v(kIdx101) = -1.0 / std::sqrt(2.0);
    return v;
}

struct JumpOperator {
    Mat8 matrix;
    int bath; // 0, 1, 2
};

// Coherent model: one collective operator per bath,
//   s1 = sigma1- + alpha sigma2- sigma3+
//   s2 = sigma2- + alpha sigma1- sigma3-
//   s3 = sigma3- + alpha sigma1+ sigma2-
// IncoherentCorrelated model: the same one- and two-spin pieces, but each in
// its own dissipator (6 operators), removing population-coherence cross terms.
inline std::vector<JumpOperator> jump_operators(double alpha, DissipationModel model) {
    Mat8 s1m = sigma_minus(0), s2m = sigma_minus(1), s3m = sigma_minus(2);
    Mat8 s1p = s1m.adjoint(), s3p = s3m.adjoint();
    Mat8 two1 = s2m * s3p;
    Mat8 two2 = s1m * s3m;
    Mat8 two3 = s1p * s2m;
    if (model == DissipationModel::Coherent) {
        return {{s1m + alpha * two1, 0}, {s2m + alpha * two2, 1}, {s3m + alpha * two3, 2}};
    }
    return {{s1m, 0}, {alpha * two1, 0},
            {s2m, 1}, {alpha * two2, 1},
            {s3m, 2}, {alpha * two3, 2}};
}

// Column-stacking vectorization: vec(A rho B) = (B^T kron A) vec(rho).
inline Mat64 kron8(const Mat8& a, const Mat8& b) {
    Mat64 out;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            out.block<8, 8>(8 * i, 8 * j) = a(i, j) * b;
    return out;
}

// Superoperator for the dissipator D[J] rho = J rho J+ - {J+J, rho}/2.
inline Mat64 dissipator_superop(const Mat8& J) {
    Mat8 jdj = J.adjoint() * J;
    Mat8 id = Mat8::Identity();
    return kron8(J.conjugate(), J)
         - 0.5 * (kron8(id, jdj) + kron8(jdj.transpose(), id));
}

struct Liouvillian {
    Mat64 total;                    // full generator
    std::array<Mat64, 3> per_bath;  // dissipative part of each reservoir
    Mat8 h_free;
    Mat8 h_int;
    MachineParams machine;
    BathParams baths;
};

inline Liouvillian liouvillian(const MachineParams& m, const BathParams& b) {
    m.validate();
    b.validate();
    Liouvillian out;
    out.machine = m;
    out.baths = b;
    out.h_free = free_hamiltonian(m);
    out.h_int = interaction_hamiltonian(m);

    Mat8 h = out.h_free + out.h_int;
    Mat8 id = Mat8::Identity();
    out.total = Complex(0.0, -1.0) * (kron8(id, h) - kron8(h.transpose(), id));

    RateSet r = rates(m, b);
    for (auto& pb : out.per_bath) pb.setZero();
    for (const auto& [J, bath] : jump_operators(b.alpha, b.model)) {
        out.per_bath[bath] += r.gamma_down[bath] * dissipator_superop(J)
                            + r.gamma_up[bath] * dissipator_superop(Mat8(J.adjoint()));
    }
    for (const auto& pb : out.per_bath) out.total += pb;
    return out;
}

// Apply a 64x64 superoperator to an 8x8 matrix via column stacking.
inline Mat8 apply_superop(const Mat64& s, const Mat8& rho) {
    Eigen::Matrix<Complex, 64, 1> v = s * Eigen::Map<const Eigen::Matrix<Complex, 64, 1>>(rho.data());
    return Eigen::Map<const Mat8>(v.data());
}

} // namespace qar
