#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fcb/error.hpp"
#include "fcb/metrics.hpp"
#include "oracles/charpoly.hpp"

using namespace fcb;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_spd(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MatrixXd x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = u(rng);
    const MatrixXd q = Eigen::HouseholderQR<MatrixXd>(x).householderQ();
    // Eigenvalues at least 0.5 apart so the bisection oracle separates them.
    std::uniform_real_distribution<double> gap(0.5, 3.0);
    VectorXd lambda(n);
    double v = 0.5;
    for (int i = 0; i < n; ++i) lambda[i] = v, v += gap(rng);
    MatrixXd a = q * lambda.asDiagonal() * q.transpose();
    return 0.5 * (a + a.transpose());
}

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal;
}

MatrixXd pair_matrix() { return (MatrixXd(2, 2) << 1, 1, 1, 2).finished(); }

}  // namespace

TEST(Eigen, TrivialExtremes) {
    const auto e = eig_extremes(MatrixXd::Identity(5, 5));
    EXPECT_DOUBLE_EQ(e.min, 1.0);
    EXPECT_DOUBLE_EQ(e.max, 1.0);
    const auto d = eig_extremes(Eigen::Vector2d(1.0, 100.0).asDiagonal().toDenseMatrix());
    EXPECT_DOUBLE_EQ(d.min, 1.0);
    EXPECT_DOUBLE_EQ(d.max, 100.0);
    EXPECT_NEAR(pl(Eigen::Vector2d(1.0, 100.0).asDiagonal().toDenseMatrix()), 2.0, 1e-14);
    EXPECT_EQ(pl(MatrixXd::Identity(3, 3)), 0.0);
}

TEST(Eigen, MatchesCharacteristicPolynomialOracle) {
    std::mt19937 rng(7);
    for (int t = 0; t < 60; ++t) {
        const int n = 3 + t % 2;
        const MatrixXd a = random_spd(rng, n);
        const auto ref = oracle::spd_eigenvalues(a);
        ASSERT_EQ(static_cast<int>(ref.size()), n);
        const VectorXd got = symmetric_eigenvalues(a);
        for (int i = 0; i < n; ++i) EXPECT_NEAR(got[i], ref[static_cast<std::size_t>(i)], 1e-10 * ref.back());
    }
}

TEST(Eigen, AscendingAndTraceIsPreserved) {
    std::mt19937 rng(11);
    for (int n : {1, 2, 5, 9, 16}) {
        const MatrixXd a = random_spd(rng, n);
        const VectorXd e = symmetric_eigenvalues(a);
        EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
        EXPECT_NEAR(e.sum(), a.trace(), 1e-12 * a.trace());
    }
}

TEST(Eigen, PlIsPermutationInvariant) {
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        const int n = 4 + t % 6;
        const MatrixXd a = random_spd(rng, n);
        Eigen::VectorXi idx = Eigen::VectorXi::LinSpaced(n, 0, n - 1);
        std::shuffle(idx.begin(), idx.end(), rng);
        Eigen::PermutationMatrix<Eigen::Dynamic> p(idx);
        const MatrixXd b = p * a * p.transpose();
        EXPECT_NEAR(pl(a), pl(b), 1e-12);
    }
}

TEST(Eigen, RejectsBadInput) {
    MatrixXd a = pair_matrix();
    a(0, 1) = 1.001;
    EXPECT_EQ(code_of([&] { eig_extremes(a); }), ErrorCode::not_symmetric);
    const MatrixXd indefinite = (MatrixXd(2, 2) << 1, 2, 2, 1).finished();
    EXPECT_EQ(code_of([&] { eig_extremes(indefinite); }), ErrorCode::not_positive_definite);
}

TEST(GoodDigits, Subtracts) {
    EXPECT_NEAR(good_digits(8, 3.452154), 4.547846, 1e-12);
    EXPECT_EQ(good_digits(16, 0.0), 16.0);
}

TEST(Pn, KnownValues) {
    EXPECT_DOUBLE_EQ(pn(MatrixXd::Identity(4, 4)).value, 1.0);
    EXPECT_NEAR(pn(Eigen::Vector2d(2.0, 8.0).asDiagonal().toDenseMatrix()).value, 1.0, 1e-15);
    EXPECT_NEAR(pn(pair_matrix()).value, 1.0 / std::sqrt(10.0), 1e-12);
    EXPECT_NEAR(pn(pair_matrix()).log10_abs, -0.5, 1e-12);
    MatrixXd z = pair_matrix();
    z.row(1).setZero();
    EXPECT_EQ(code_of([&] { pn(z); }), ErrorCode::zero_row);
}

TEST(Pn, OrthogonalMatricesArePerfect) {
    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    for (int n : {2, 3, 6, 10}) {
        MatrixXd x(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x(i, j) = g(rng);
        const MatrixXd q = Eigen::HouseholderQR<MatrixXd>(x).householderQ();
        EXPECT_NEAR(std::abs(pn(q).value), 1.0, 1e-12);
    }
}

TEST(Pdet, KnownValues) {
    EXPECT_DOUBLE_EQ(pdet(MatrixXd::Identity(3, 3)).value, 1.0);
    EXPECT_NEAR(pdet(Eigen::Vector3d(2.0, 5.0, 0.1).asDiagonal().toDenseMatrix()).value, 1.0, 1e-15);
    EXPECT_NEAR(pdet(pair_matrix()).value, 0.5, 1e-14);
    MatrixXd bad = pair_matrix();
    bad(1, 1) = 0.0;
    EXPECT_EQ(code_of([&] { pdet(bad); }), ErrorCode::not_positive_definite);
}

TEST(Pdet, BoundedByHadamard) {
    std::mt19937 rng(17);
    for (int t = 0; t < 30; ++t) {
        const MatrixXd a = random_spd(rng, 2 + t % 8);
        const auto d = pdet(a);
        EXPECT_GT(d.value, 0.0);
        EXPECT_LE(d.value, 1.0 + 1e-12);
        const auto p = pn(a);
        EXPECT_GT(std::abs(p.value), 0.0);
        EXPECT_LE(std::abs(p.value), 1.0 + 1e-12);
    }
}

TEST(Nnz, EntriesAndBlocks) {
    EXPECT_EQ(nnz(MatrixXd::Identity(6, 6)), 6u);
    EXPECT_EQ(nnz(MatrixXd::Identity(6, 6), true), 2u);
    MatrixXd m = MatrixXd::Zero(6, 6);
    m(0, 5) = 1e-20;
    EXPECT_EQ(nnz(m, true), 1u);
    EXPECT_EQ(nnz(m, true, 1e-10), 0u);
}

TEST(Chop, RoundsHalfAwayFromZero) {
    EXPECT_EQ(chop(1.23456, 4), 1.235);
    EXPECT_EQ(chop(-1.23456, 4), -1.235);
    EXPECT_EQ(chop(2.0005, 4), 2.001);
    EXPECT_EQ(chop(-0.0012345, 3), -0.00123);
    EXPECT_EQ(chop(123456.0, 2), 120000.0);
    EXPECT_EQ(chop(0.0, 4), 0.0);
    EXPECT_EQ(chop(M_PI, 17), M_PI);
}

TEST(Chop, IsIdempotent) {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> mant(-10.0, 10.0);
    std::uniform_int_distribution<int> expo(-12, 12);
    for (int t = 0; t < 2000; ++t) {
        const double x = mant(rng) * std::pow(10.0, expo(rng));
        for (int d : {1, 3, 4, 8}) EXPECT_EQ(chop(chop(x, d), d), chop(x, d));
    }
}

TEST(Chop, ArithmeticRoundsEveryStep) {
    const ChoppedNumber a(1.0, 4), b(3.0, 4);
    EXPECT_EQ((a / b).value(), 0.3333);
    EXPECT_EQ(((a / b) * b).value(), 0.9999);
    EXPECT_EQ((ChoppedNumber(1000.0, 4) + ChoppedNumber(0.4, 4)).value(), 1000.0);
}

TEST(ChoppedGauss, FullPrecisionMatchesExactSolve) {
    std::mt19937 rng(29);
    for (int t = 0; t < 20; ++t) {
        const MatrixXd a = random_spd(rng, 4) + MatrixXd::Identity(4, 4);
        const VectorXd x = VectorXd::Random(4);
        const VectorXd b = a * x;
        EXPECT_LT((chopped_gauss_solve(a, b, 17) - x).norm(), 1e-10);
    }
}

TEST(ChoppedGauss, ConvergesAsDigitsGrow) {
    const MatrixXd a = (MatrixXd(3, 3) << -0.002, 4, 4, -2, 2.906, -5.387, 3, -4.031, -3.112).finished();
    const VectorXd b = (VectorXd(3) << 7.998, -4.481, -4.143).finished();
    const VectorXd exact = a.partialPivLu().solve(b);
    double previous = INFINITY;
    for (int d : {4, 7, 10, 13, 16}) {
        const double err = (chopped_gauss_solve(a, b, d) - exact).norm();
        EXPECT_LE(err, std::max(previous, 1e-12));
        previous = err;
    }
    EXPECT_LT(previous, 1e-10);
}

TEST(ChoppedGauss, RowReorderRescuesTinyPivot) {
    const MatrixXd a = (MatrixXd(3, 3) << -0.002, 4, 4, -2, 2.906, -5.387, 3, -4.031, -3.112).finished();
    const VectorXd b = (VectorXd(3) << 7.998, -4.481, -4.143).finished();
    EXPECT_EQ(reorder_rows(a), (std::vector<int>{2, 0, 1}));
    const VectorXd naive = chopped_gauss_solve(a, b, 4);
    const VectorXd pivoted = chopped_gauss_solve(a, b, 4, Pivoting::row_reorder);
    EXPECT_GT(std::abs(naive[0] - 1.0), 1.0);
    EXPECT_LT((pivoted - VectorXd::Ones(3)).cwiseAbs().maxCoeff(), 1e-2);
}

TEST(ChoppedGauss, ZeroPivotBreaksDown) {
    const MatrixXd a = (MatrixXd(2, 2) << 0, 1, 1, 0).finished();
    EXPECT_EQ(code_of([&] { chopped_gauss_solve(a, VectorXd::Ones(2), 4); }), ErrorCode::chopped_pivot_breakdown);
    EXPECT_NO_THROW(chopped_gauss_solve(a, VectorXd::Ones(2), 4, Pivoting::row_reorder));
}

TEST(ConditionReport, CollectsAllNumbers) {
    const auto r = condition_report(pair_matrix());
    EXPECT_NEAR(r.pn.value, 1.0 / std::sqrt(10.0), 1e-12);
    EXPECT_NEAR(r.pdet.value, 0.5, 1e-14);
    EXPECT_EQ(r.nnz_entries, 4u);
    EXPECT_NEAR(r.good_digits_double, 16.0 - r.pl, 1e-15);
    EXPECT_NEAR(r.good_digits_single, 8.0 - r.pl, 1e-15);
}
