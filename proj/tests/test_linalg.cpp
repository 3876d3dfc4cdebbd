#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracle/oracle.hpp"
#include "qorrelate/errors.hpp"
#include "qorrelate/linalg.hpp"
#include "qorrelate/states.hpp"

using namespace qorrelate;

namespace {

const double kSqrtHalf = 1.0 / std::sqrt(2.0);

PureState bell() { return PureState::from_amplitudes({kSqrtHalf, 0.0, 0.0, kSqrtHalf}); }

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = g(gen);
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = Complex(g(gen), g(gen));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

ComplexMatrix random_psd(std::size_t dim, std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    ComplexMatrix a(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) a(i, j) = Complex(g(gen), g(gen));
    ComplexMatrix p = a * a.adjoint();
    p *= 1.0 / p.trace().real();
    return p;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace

TEST(PartialTrace, BellGivesMaximallyMixed) {
    const Qubit keep[] = {1};
    const DensityMatrix rho = partial_trace(bell(), keep);
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(rho.matrix()(0, 1)), 0.0, 1e-15);
}

TEST(PartialTrace, ProductState) {
    const Qubit keep[] = {1};
    const DensityMatrix rho = partial_trace(PureState::from_amplitudes({1.0, 0.0, 0.0, 0.0}), keep);
    EXPECT_DOUBLE_EQ(rho.matrix()(0, 0).real(), 1.0);
    EXPECT_DOUBLE_EQ(rho.matrix()(1, 1).real(), 0.0);
}

TEST(PartialTrace, WStatePair) {
    const Qubit keep[] = {1, 2};
    const DensityMatrix rho = partial_trace(w_state(3), keep);
    const auto& m = rho.matrix();
    EXPECT_NEAR(m(0, 0).real(), 1.0 / 3, 1e-14);
    EXPECT_NEAR(m(1, 1).real(), 1.0 / 3, 1e-14);
    EXPECT_NEAR(m(2, 2).real(), 1.0 / 3, 1e-14);
    EXPECT_NEAR(m(3, 3).real(), 0.0, 1e-14);
    EXPECT_NEAR(m(1, 2).real(), 1.0 / 3, 1e-14);
    EXPECT_NEAR(m(2, 1).real(), 1.0 / 3, 1e-14);
    EXPECT_EQ(rho.qubits(), (QubitList{1, 2}));
}

TEST(PartialTrace, RejectsBadSubsets) {
    const PureState psi = w_state(3);
    EXPECT_THROW(partial_trace(psi, std::span<const Qubit>{}), InvalidSubsetError);
    const Qubit out_of_range[] = {4};
    EXPECT_THROW(partial_trace(psi, out_of_range), InvalidSubsetError);
    const Qubit zero[] = {0};
    EXPECT_THROW(partial_trace(psi, zero), InvalidSubsetError);
    const Qubit repeated[] = {1, 1};
    EXPECT_THROW(partial_trace(psi, repeated), InvalidSubsetError);
}

TEST(PartialTrace, MatchesExplicitEnvironmentSum) {
    for (int n = 3; n <= 6; ++n) {
        const PureState psi = haar_random_pure(n, 100 + n);
        const auto amps = oracle::amplitudes(psi);
        for (const std::vector<int> keep : {std::vector<int>{1}, std::vector<int>{1, n}, std::vector<int>{2, 3},
                                            std::vector<int>{1, 2, n}}) {
            const DensityMatrix mine = partial_trace(psi, keep);
            const oracle::Mat ref = oracle::reduce(amps, n, keep);
            EXPECT_LT((oracle::to_eigen(mine.matrix()) - ref).cwiseAbs().maxCoeff(), 1e-13);
            EXPECT_NEAR(mine.matrix().trace().real(), 1.0, 1e-10);
            EXPECT_EQ(mine.matrix().hermitian_deviation(), 0.0);
        }
    }
}

TEST(PartialTrace, OfDensityMatrixComposes) {
    const PureState psi = haar_random_pure(5, 9);
    const Qubit three[] = {1, 3, 5};
    const Qubit two[] = {3, 5};
    const DensityMatrix direct = partial_trace(psi, two);
    const DensityMatrix nested = partial_trace(partial_trace(psi, three), two);
    EXPECT_LT(max_abs_diff(direct.matrix(), nested.matrix()), 1e-14);
}

TEST(PartialTrace, SchmidtSymmetry) {
    for (int n = 3; n <= 7; ++n) {
        const PureState psi = haar_random_pure(n, 7 * n);
        QubitList a;
        QubitList rest;
        for (int q = 1; q <= n; ++q) (q % 2 ? a : rest).push_back(q);
        EXPECT_NEAR(von_neumann_entropy(partial_trace(psi, a)), von_neumann_entropy(partial_trace(psi, rest)), 1e-8)
            << "n=" << n;
    }
}

TEST(Reorder, SwapsTensorFactors) {
    const PureState psi = PureState::normalized({1.0, Complex(0, 2.0), 3.0, 4.0});
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    const Qubit swapped[] = {2, 1};
    const DensityMatrix flipped = reorder(rho, swapped);
    EXPECT_EQ(flipped.qubits(), (QubitList{2, 1}));
    const std::size_t perm[] = {0, 2, 1, 3};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            EXPECT_EQ(flipped.matrix()(perm[i], perm[j]), rho.matrix()(i, j));
}

TEST(PartialTranspose, DiagonalInvariant) {
    const double diag[] = {0.1, 0.2, 0.3, 0.4};
    const DensityMatrix rho(ComplexMatrix::diagonal(diag), {1, 2});
    const Qubit part[] = {1};
    EXPECT_EQ(partial_transpose(rho, part), rho.matrix());
}

TEST(PartialTranspose, BellSpectrum) {
    const Qubit part[] = {1};
    const auto ev = hermitian_eigvals(partial_transpose(DensityMatrix::from_pure(bell()), part));
    ASSERT_EQ(ev.size(), 4U);
    EXPECT_NEAR(ev[0], -0.5, 1e-12);
    EXPECT_NEAR(ev[1], 0.5, 1e-12);
    EXPECT_NEAR(ev[2], 0.5, 1e-12);
    EXPECT_NEAR(ev[3], 0.5, 1e-12);
    EXPECT_NEAR(trace_norm_hermitian(partial_transpose(DensityMatrix::from_pure(bell()), part)), 2.0, 1e-12);
}

TEST(PartialTranspose, InvolutionBitExact) {
    for (int n = 2; n <= 5; ++n) {
        const DensityMatrix rho = DensityMatrix::from_pure(haar_random_pure(n, 31 + n));
        for (const QubitList part : {QubitList{1}, QubitList{n}, QubitList{1, 2}}) {
            const ComplexMatrix once = partial_transpose(rho, part);
            EXPECT_EQ(partial_transpose(once, rho.qubits(), part), rho.matrix());
            EXPECT_LT(once.hermitian_deviation(), 1e-15);
            EXPECT_NEAR(once.trace().real(), 1.0, 1e-12);
        }
    }
}

TEST(PartialTranspose, RejectsForeignQubits) {
    const DensityMatrix rho = DensityMatrix::from_pure(bell());
    const Qubit part[] = {3};
    EXPECT_THROW(partial_transpose(rho, part), InvalidSubsetError);
}

TEST(Eigen, SpecExamples) {
    const double d[] = {3.0, 1.0};
    EXPECT_EQ(hermitian_eigvals(ComplexMatrix::diagonal(d)), (std::vector<double>{1.0, 3.0}));
    const auto px = hermitian_eigvals(ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));
    EXPECT_NEAR(px[0], -1.0, 1e-14);
    EXPECT_NEAR(px[1], 1.0, 1e-14);
    const Qubit keep[] = {1};
    const auto w = hermitian_eigvals(partial_trace(w_state(3), keep).matrix());
    EXPECT_NEAR(w[0], 1.0 / 3, 1e-14);
    EXPECT_NEAR(w[1], 2.0 / 3, 1e-14);
}

TEST(Eigen, RejectsNonHermitian) {
    EXPECT_THROW(hermitian_eigvals(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0})), NotHermitianError);
    EXPECT_THROW(DensityMatrix(ComplexMatrix(2, {0.5, 0.1, 0.0, 0.5}), {1}), NotHermitianError);
}

TEST(Eigen, MatchesEigenOnRandomHermitian) {
    std::mt19937_64 gen(2024);
    for (std::size_t dim : {2U, 3U, 4U, 8U, 16U, 32U, 64U, 128U}) {
        const ComplexMatrix m = random_hermitian(dim, gen);
        const auto mine = hermitian_eigen(m);
        const auto ref = oracle::eigvals(oracle::to_eigen(m));
        ASSERT_EQ(mine.values.size(), ref.size());
        const double scale = m.frobenius_norm();
        for (std::size_t k = 0; k < dim; ++k) EXPECT_NEAR(mine.values[k], ref[k], 1e-10 * scale) << "dim " << dim;
        EXPECT_TRUE(std::is_sorted(mine.values.begin(), mine.values.end()));
        // invariants: trace and Frobenius norm
        const double sum = std::accumulate(mine.values.begin(), mine.values.end(), 0.0);
        double squares = 0.0;
        for (double v : mine.values) squares += v * v;
        EXPECT_NEAR(sum, m.trace().real(), 1e-10 * scale);
        EXPECT_NEAR(std::sqrt(squares), scale, 1e-10 * scale);
        // reconstruction V diag V^H
        ComplexMatrix rebuilt = mine.vectors * ComplexMatrix::diagonal(mine.values) * mine.vectors.adjoint();
        EXPECT_LT(max_abs_diff(rebuilt, m), 1e-10 * scale);
    }
}

TEST(Eigen, DensityMatrixSpectrumSumsToOne) {
    std::mt19937_64 gen(5);
    for (std::size_t dim : {4U, 16U, 64U}) {
        const auto logd = static_cast<int>(std::log2(dim));
        QubitList labels(static_cast<std::size_t>(logd));
        std::iota(labels.begin(), labels.end(), 1);
        const DensityMatrix rho(random_psd(dim, gen), labels);
        const auto ev = rho.eigenvalues();
        EXPECT_NEAR(std::accumulate(ev.begin(), ev.end(), 0.0), 1.0, 1e-10);
    }
}

TEST(DensityMatrixValidation, RejectsBadInputs) {
    const double neg[] = {1.5, -0.5};
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal(neg), {1}), InvalidDensityMatrixError);
    const double heavy[] = {0.6, 0.6};
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal(heavy), {1}), InvalidDensityMatrixError);
    const double ok[] = {0.5, 0.5};
    EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal(ok), {1, 2}), InvalidSubsetError);
    const double roundoff[] = {1.0 + 5e-11, -5e-11};
    const DensityMatrix clamped(ComplexMatrix::diagonal(roundoff), {1});
    EXPECT_EQ(clamped.eigenvalues()[0], 0.0);
}

TEST(MatrixSqrt, SpecExamples) {
    EXPECT_LT(max_abs_diff(matrix_sqrt_psd(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)), 1e-14);
    const double d[] = {4.0, 9.0};
    const double r[] = {2.0, 3.0};
    EXPECT_LT(max_abs_diff(matrix_sqrt_psd(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(r)), 1e-13);
    const double neg[] = {1.0, -1e-6};
    EXPECT_THROW(matrix_sqrt_psd(ComplexMatrix::diagonal(neg)), InvalidDensityMatrixError);
}

TEST(MatrixSqrt, SquaresBack) {
    std::mt19937_64 gen(77);
    for (std::size_t dim : {2U, 4U, 8U, 16U, 32U, 64U}) {
        const ComplexMatrix p = random_psd(dim, gen);
        const ComplexMatrix root = matrix_sqrt_psd(p);
        EXPECT_LT((root * root - p).frobenius_norm(), 1e-8);
        for (double v : hermitian_eigvals(root)) EXPECT_GE(v, -1e-12);
    }
}

TEST(TraceNorm, Examples) {
    const double d[] = {1.0, -1.0};
    EXPECT_DOUBLE_EQ(trace_norm_hermitian(ComplexMatrix::diagonal(d)), 2.0);
    std::mt19937_64 gen(3);
    const ComplexMatrix p = random_psd(8, gen);
    EXPECT_NEAR(trace_norm_hermitian(p), 1.0, 1e-12);
    EXPECT_THROW(trace_norm_hermitian(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0})), NotHermitianError);
}

TEST(Entropy, VonNeumannExamples) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::from_pure(bell())), 0.0, 1e-12);
    const double mixed[] = {0.5, 0.5};
    EXPECT_DOUBLE_EQ(von_neumann_entropy(DensityMatrix(ComplexMatrix::diagonal(mixed), {1})), 1.0);
    const double q[] = {0.75, 0.25};
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(ComplexMatrix::diagonal(q), {1})), 0.8112781244591328, 1e-12);
}

TEST(Entropy, VonNeumannMatchesEigenOracle) {
    for (int n = 3; n <= 6; ++n) {
        const PureState psi = haar_random_pure(n, 500 + n);
        const Qubit keep[] = {1, 2};
        const DensityMatrix rho = partial_trace(psi, keep);
        EXPECT_NEAR(von_neumann_entropy(rho), oracle::entropy(oracle::to_eigen(rho.matrix())), 1e-10);
        EXPECT_LE(von_neumann_entropy(rho), 2.0 + 1e-12);
    }
}

TEST(Entropy, Binary) {
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_NEAR(binary_entropy(1.0 / 3), 0.9182958340544896, 1e-12);
    EXPECT_NEAR(binary_entropy(0.2), binary_entropy(0.8), 1e-15);
    EXPECT_THROW(binary_entropy(1.1), std::domain_error);
    EXPECT_THROW(binary_entropy(-1e-9), std::domain_error);
    EXPECT_NO_THROW(binary_entropy(1.0 + 1e-13));
}

TEST(Entropy, Shannon) {
    const double p[] = {0.5, 0.25, 0.25, 0.0};
    EXPECT_DOUBLE_EQ(shannon_entropy(p), 1.5);
}

TEST(Kron, BuildsTensorProduct) {
    const ComplexMatrix x(2, {0.0, 1.0, 1.0, 0.0});
    const ComplexMatrix k = kron(ComplexMatrix::identity(2), x);
    EXPECT_EQ(k(0, 1), Complex(1.0));
    EXPECT_EQ(k(2, 3), Complex(1.0));
    EXPECT_EQ(k(0, 2), Complex(0.0));
}
