#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fcb {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

struct EigenExtremes {
    double min = 0.0;
    double max = 0.0;
};

/// Extreme eigenvalues of a symmetric positive definite matrix.
/// Throws not_symmetric (relative asymmetry > 1e-12) or not_positive_definite.
EigenExtremes eig_extremes(const Eigen::MatrixXd& g);

/// log10(lambda_max / lambda_min).
double pl(const Eigen::MatrixXd& g);

/// Decimal digits expected to survive a solve at precision p: p - PL.
double good_digits(double p, double pl_value);

/// A determinant kept both as a value and as log10|det|, since the value
/// underflows to 0 for large systems.
struct Determinant {
    double value = 0.0;
    double log10_abs = 0.0;
    int sign = 0;
};

/// Determinant of g with every row scaled to unit Euclidean norm.
Determinant pn(const Eigen::MatrixXd& g);

/// Determinant of D^-1/2 g D^-1/2 with D = diag(g).
Determinant pdet(const Eigen::MatrixXd& g);

/// Non-zero count, entry-wise or over 3x3 blocks.
std::size_t nnz(const Eigen::MatrixXd& g, bool blocks = false, double tolerance = 0.0);

struct ConditionReport {
    double pl = 0.0;
    Determinant pn;
    Determinant pdet;
    std::size_t nnz_entries = 0;
    std::size_t nnz_blocks = 0;
    double good_digits_double = 0.0;  // p = 16
    double good_digits_single = 0.0;  // p = 8
};

ConditionReport condition_report(const Eigen::MatrixXd& g);

/// Rounds x to `digits` significant decimal digits, half away from zero.
double chop(double x, int digits);

/// A value rounded to a fixed number of significant digits after every
/// arithmetic operation.
class ChoppedNumber {
public:
    ChoppedNumber(double value, int digits) : digits_(digits), value_(chop(value, digits)) {}

    double value() const noexcept { return value_; }
    int digits() const noexcept { return digits_; }

    friend ChoppedNumber operator+(ChoppedNumber a, ChoppedNumber b) { return {a.value_ + b.value_, a.digits_}; }
    friend ChoppedNumber operator-(ChoppedNumber a, ChoppedNumber b) { return {a.value_ - b.value_, a.digits_}; }
    friend ChoppedNumber operator*(ChoppedNumber a, ChoppedNumber b) { return {a.value_ * b.value_, a.digits_}; }
    friend ChoppedNumber operator/(ChoppedNumber a, ChoppedNumber b) { return {a.value_ / b.value_, a.digits_}; }

private:
    int digits_;
    double value_;
};

enum class Pivoting { none, row_reorder };

/// Gaussian elimination and back substitution in chopped arithmetic.
/// `row_reorder` permutes rows once so the largest leading coefficients sit
/// on the diagonal. Throws chopped_pivot_breakdown on a zero pivot.
Eigen::VectorXd chopped_gauss_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int digits,
                                    Pivoting pivoting = Pivoting::none);

/// Row order chosen by `Pivoting::row_reorder`.
std::vector<int> reorder_rows(const Eigen::MatrixXd& a);

}  // namespace fcb
