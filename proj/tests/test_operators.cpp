#include <catch2/catch_amalgamated.hpp>

#include "qar/verify.hpp"

using namespace qar;

namespace {
MachineParams test_machine() {
    MachineParams m;
    m.E1 = 0.8;
    m.E2 = 5.0;
    m.g = 0.005;
    return m;
}
BathParams test_baths(double alpha = 0.8, DissipationModel model = DissipationModel::Coherent) {
    BathParams b;
    b.alpha = alpha;
    b.model = model;
    return b;
}
} // namespace

TEST_CASE("hamiltonian structure") {
    MachineParams m = test_machine();
    Mat8 h = hamiltonian(m);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(h(kIdx101, kIdx010) == Complex(m.g, 0.0));

    MachineParams m0 = m;
    m0.g = 0.0;
    Mat8 hf = hamiltonian(m0);
    double E1 = m.E1, E2 = m.E2, E3 = m.E3();
    const double diag[8] = {0, E3, E2, E2 + E3, E1, E1 + E3, E1 + E2, E1 + E2 + E3};
    for (int i = 0; i < 8; ++i)
        CHECK(hf(i, i).real() == Catch::Approx(diag[i]).margin(1e-14));
    CHECK((hf.cwiseAbs().sum() - hf.diagonal().cwiseAbs().sum()) == 0.0);

    Mat8 comm = free_hamiltonian(m) * interaction_hamiltonian(m)
              - interaction_hamiltonian(m) * free_hamiltonian(m);
    CHECK(comm.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("jump operator algebra") {
    auto ops0 = jump_operators(0.0, DissipationModel::Coherent);
    REQUIRE(ops0.size() == 3);
    CHECK((ops0[0].matrix - sigma_minus(0)).cwiseAbs().maxCoeff() == 0.0);

    double alpha = 0.6;
    auto ops = jump_operators(alpha, DissipationModel::Coherent);
    Vec8c ket010 = Vec8c::Zero(), ket101 = Vec8c::Zero();
    ket010(kIdx010) = 1.0;
    ket101(kIdx101) = 1.0;
    Vec8c r1 = ops[0].matrix * ket010;
    Vec8c r2 = ops[0].matrix * ket101;
    // s1|010> = alpha|001>, s1|101> = |001>
    CHECK(std::abs(r1(1) - Complex(alpha)) <= 1e-15);
    CHECK(r1.norm() == Catch::Approx(alpha));
    CHECK(std::abs(r2(1) - Complex(1.0)) <= 1e-15);
    CHECK(r2.norm() == Catch::Approx(1.0));

    Vec8c psi = dark_state();
    for (const auto& [J, bath] : jump_operators(1.0, DissipationModel::Coherent))
        CHECK((J * psi).norm() <= 1e-15);
}

TEST_CASE("eigenoperator property") {
    MachineParams m = test_machine();
    Mat8 h0 = free_hamiltonian(m);
    const std::array<double, 3> E{m.E1, m.E2, m.E3()};
    for (double alpha : {0.0, 0.3, 1.0}) {
        for (auto model : {DissipationModel::Coherent, DissipationModel::IncoherentCorrelated}) {
            for (const auto& [J, bath] : jump_operators(alpha, model)) {
                Mat8 comm = h0 * J - J * h0 + E[bath] * J;
                CHECK(comm.cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
    }
}

TEST_CASE("dark state vector") {
    Vec8c psi = dark_state();
    CHECK(psi.norm() == Catch::Approx(1.0).epsilon(1e-15));
    MachineParams m = test_machine();
    Complex expect = (psi.adjoint() * interaction_hamiltonian(m) * psi)(0, 0);
    CHECK(expect.real() == Catch::Approx(-m.g).epsilon(1e-14));
    CHECK(std::abs(expect.imag()) <= 1e-16);
}

TEST_CASE("liouvillian invariants") {
    MachineParams m = test_machine();
    for (double alpha : {0.0, 0.8, 1.0}) {
        for (auto model : {DissipationModel::Coherent, DissipationModel::IncoherentCorrelated}) {
            Liouvillian L = liouvillian(m, test_baths(alpha, model));
            CHECK(detail::trace_preservation_residual(L.total) <= 1e-12);

            // Hermiticity preservation on a fixed Hermitian test matrix.
            Mat8 x = Mat8::Zero();
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    x(i, j) = Complex(0.1 * (i + 1) * (j + 1), i - j);
            Mat8 herm = 0.5 * (x + x.adjoint());
            Mat8 out = apply_superop(L.total, herm);
            CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("gibbs product state is stationary at equal temperatures") {
    MachineParams m = test_machine();
    for (double alpha : {0.0, 0.5, 1.0}) {
        for (auto model : {DissipationModel::Coherent, DissipationModel::IncoherentCorrelated}) {
            BathParams b = test_baths(alpha, model);
            b.beta = {0.7, 0.7, 0.7};
            Liouvillian L = liouvillian(m, b);
            Mat8 rho = embed(thermal_product_state(m, b));
            CHECK(apply_superop(L.total, rho).norm() <= 1e-10 * L.total.norm());
        }
    }
}

TEST_CASE("liouvillian spectrum has no positive real part") {
    Liouvillian L = liouvillian(test_machine(), test_baths());
    Eigen::ComplexEigenSolver<Mat64> es(L.total);
    CHECK(es.eigenvalues().real().maxCoeff() <= 1e-10);
}

TEST_CASE("model variants agree at alpha zero") {
    MachineParams m = test_machine();
    Liouvillian lc = liouvillian(m, test_baths(0.0, DissipationModel::Coherent));
    Liouvillian li = liouvillian(m, test_baths(0.0, DissipationModel::IncoherentCorrelated));
    CHECK((lc.total - li.total).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("reduced W structure") {
    MachineParams m = test_machine();
    WMatrix W = reduce_to_w(liouvillian(m, test_baths()));
    double scale = W.w.cwiseAbs().maxCoeff();
    CHECK(W.w.topRows<8>().colwise().sum().cwiseAbs().maxCoeff() <= 1e-12 * scale);

    // alpha = 0: populations decouple from c_R.
    Mat10 w0 = reduce_to_w(liouvillian(m, test_baths(0.0))).w;
    for (int i = 0; i < 8; ++i) CHECK(std::abs(w0(i, 8)) <= 1e-14);
    for (int j = 0; j < 8; ++j) CHECK(std::abs(w0(8, j)) <= 1e-14);

    // alpha = 1: dark population is conserved.
    Mat10 w1 = reduce_to_w(liouvillian(m, test_baths(1.0))).w;
    Vec10 left = Vec10::Zero();
    left(kIdx010) = 0.5;
    left(kIdx101) = 0.5;
    left(8) = -1.0;
    CHECK((left.transpose() * w1).norm() <= 1e-12 * scale);
}

TEST_CASE("reduced W randomized invariants") {
    for (const auto& d : random_draws(100, 42u, true)) {
        WMatrix W = reduce_to_w(liouvillian(d.machine, d.baths));
        double scale = W.w.cwiseAbs().maxCoeff();
        REQUIRE(W.w.topRows<8>().colwise().sum().cwiseAbs().maxCoeff() <= 1e-12 * scale);
    }
}

TEST_CASE("transcription ledger enumerates discrepancies") {
    MachineParams m = test_machine();
    BathParams b = test_baths();
    auto ledger = transcription_ledger(m, b);
    CHECK(!ledger.empty());

    bool cr_row = false, ci_row = false, p101_decay = false;
    for (const auto& e : ledger) {
        if (e.row == 8) cr_row = true;
        if (e.row == 9) ci_row = true;
        if (e.row == kIdx101 && (e.col == kIdx010 || e.col == kIdx101)) p101_decay = true;
    }
    CHECK(cr_row);
    CHECK(ci_row);
    CHECK(p101_decay);

    // At alpha = 0 every discrepancy sits in the degenerate-pair rows (the
    // printed p101/p010 equations have their source terms interchanged) or
    // the coherence rows; the non-degenerate population rows are clean.
    BathParams b0 = b;
    b0.alpha = 0.0;
    auto ledger0 = transcription_ledger(m, b0);
    CHECK(!ledger0.empty());
    for (const auto& e : ledger0) {
        bool degenerate_or_coherence =
            e.row == kIdx010 || e.row == kIdx101 || e.row == 8 || e.row == 9;
        CHECK(degenerate_or_coherence);
    }

    // The derived W conserves trace; the printed transcription does not.
    Mat10 printed = printed_transcription_w(m, b);
    Mat10 derived = reduce_to_w(liouvillian(m, b)).w;
    double scale = derived.cwiseAbs().maxCoeff();
    CHECK(derived.topRows<8>().colwise().sum().cwiseAbs().maxCoeff() <= 1e-12 * scale);
    CHECK(printed.topRows<8>().colwise().sum().cwiseAbs().maxCoeff() > 1e-6 * scale);
}
