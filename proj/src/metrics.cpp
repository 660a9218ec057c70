#include "fcb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fcb/error.hpp"

namespace fcb {

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& input) {
    if (input.rows() != input.cols()) throw Error(ErrorCode::domain, "eigenvalues need a square matrix");
    Eigen::MatrixXd a = input;
    const Eigen::Index n = a.rows();
    constexpr double tol = 1e-15;

    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol * std::sqrt(std::abs(a(p, p) * a(q, q))) || apq == 0.0) continue;
                rotated = true;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
            }
        }
        if (!rotated) break;
    }

    Eigen::VectorXd out = a.diagonal();
    std::sort(out.data(), out.data() + out.size());
    return out;
}

EigenExtremes eig_extremes(const Eigen::MatrixXd& g) {
    if (g.rows() == 0 || g.rows() != g.cols())
        throw Error(ErrorCode::domain, "condition metrics need a non-empty square matrix");
    const double scale = g.cwiseAbs().maxCoeff();
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw Error(ErrorCode::not_symmetric, "matrix is not symmetric");
    const auto values = symmetric_eigenvalues(g);
    if (!(values[0] > 0.0))
        throw Error(ErrorCode::not_positive_definite, "matrix is not positive definite");
    return {values[0], values[values.size() - 1]};
}

double pl(const Eigen::MatrixXd& g) {
    const auto e = eig_extremes(g);
    return std::log10(e.max / e.min);
}

double good_digits(double p, double pl_value) { return p - pl_value; }

namespace {

Determinant lu_determinant(const Eigen::MatrixXd& a) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::MatrixXd& u = lu.matrixLU();
    Determinant d;
    d.sign = static_cast<int>(lu.permutationP().determinant());
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const double v = u(i, i);
        if (v == 0.0) return {0.0, -std::numeric_limits<double>::infinity(), 0};
        if (v < 0.0) d.sign = -d.sign;
        d.log10_abs += std::log10(std::abs(v));
    }
    d.value = d.sign * std::pow(10.0, d.log10_abs);
    return d;
}

}  // namespace

Determinant pn(const Eigen::MatrixXd& g) {
    if (g.rows() == 0 || g.rows() != g.cols()) throw Error(ErrorCode::domain, "PN needs a non-empty square matrix");
    Eigen::MatrixXd s = g;
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        const double norm = s.row(i).norm();
        if (norm == 0.0) throw Error(ErrorCode::zero_row, "row " + std::to_string(i) + " is zero");
        s.row(i) /= norm;
    }
    return lu_determinant(s);
}

Determinant pdet(const Eigen::MatrixXd& g) {
    if (g.rows() == 0 || g.rows() != g.cols()) throw Error(ErrorCode::domain, "PDET needs a non-empty square matrix");
    const Eigen::VectorXd d = g.diagonal();
    if ((d.array() <= 0.0).any())
        throw Error(ErrorCode::not_positive_definite, "PDET needs a positive diagonal");
    const Eigen::VectorXd inv = d.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd s = inv.asDiagonal() * g * inv.asDiagonal();
    s.diagonal().setOnes();
    return lu_determinant(s);
}

std::size_t nnz(const Eigen::MatrixXd& g, bool blocks, double tolerance) {
    if (!blocks) return static_cast<std::size_t>((g.array().abs() > tolerance).count());
    if (g.rows() % 3 != 0 || g.cols() % 3 != 0)
        throw Error(ErrorCode::domain, "block count needs dimensions divisible by 3");
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < g.rows(); i += 3)
        for (Eigen::Index j = 0; j < g.cols(); j += 3)
            if ((g.block<3, 3>(i, j).array().abs() > tolerance).any()) ++count;
    return count;
}

ConditionReport condition_report(const Eigen::MatrixXd& g) {
    ConditionReport r;
    r.pl = pl(g);
    r.pn = pn(g);
    r.pdet = pdet(g);
    r.nnz_entries = nnz(g);
    if (g.rows() % 3 == 0) r.nnz_blocks = nnz(g, true);
    r.good_digits_double = good_digits(16, r.pl);
    r.good_digits_single = good_digits(8, r.pl);
    return r;
}

double chop(double x, int digits) {
    if (digits < 1) throw Error(ErrorCode::domain, "chop needs at least one digit");
    if (x == 0.0 || !std::isfinite(x) || digits >= 17) return x;
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
    const int shift = digits - 1 - exponent;
    // Exact powers of ten only; negative shifts divide.
    const auto scale = [](double v, int k) {
        const double p = std::pow(10.0, std::abs(k) % 22);
        const double big = std::pow(10.0, 22);
        for (int i = std::abs(k) / 22; i > 0; --i) v = k > 0 ? v * big : v / big;
        return k > 0 ? v * p : v / p;
    };
    return scale(std::round(scale(x, shift)), -shift);
}

std::vector<int> reorder_rows(const Eigen::MatrixXd& a) {
    const auto n = static_cast<int>(a.rows());
    std::vector<int> order;
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
        int best = -1;
        for (int r = 0; r < n; ++r)
            if (!taken[static_cast<std::size_t>(r)] && (best < 0 || std::abs(a(r, k)) > std::abs(a(best, k))))
                best = r;
        taken[static_cast<std::size_t>(best)] = 1;
        order.push_back(best);
    }
    return order;
}

Eigen::VectorXd chopped_gauss_solve(const Eigen::MatrixXd& a_in, const Eigen::VectorXd& b_in, int digits,
                                    Pivoting pivoting) {
    const auto n = static_cast<int>(a_in.rows());
    if (a_in.cols() != n || b_in.size() != n || n == 0)
        throw Error(ErrorCode::domain, "chopped solve needs a non-empty square system");
    if (digits < 1) throw Error(ErrorCode::domain, "chopped solve needs at least one digit");

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    if (pivoting == Pivoting::row_reorder) order = reorder_rows(a_in);

    std::vector<std::vector<ChoppedNumber>> a;
    std::vector<ChoppedNumber> b;
    for (int r : order) {
        std::vector<ChoppedNumber> row;
        for (int j = 0; j < n; ++j) row.emplace_back(a_in(r, j), digits);
        a.push_back(std::move(row));
        b.emplace_back(b_in[r], digits);
    }

    auto pivot = [&](int k) {
        if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)].value() == 0.0)
            throw Error(ErrorCode::chopped_pivot_breakdown, "zero pivot in row " + std::to_string(k));
        return a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    };

    for (int k = 0; k < n; ++k) {
        const auto pk = pivot(k);
        for (int i = k + 1; i < n; ++i) {
            auto& ri = a[static_cast<std::size_t>(i)];
            const auto& rk = a[static_cast<std::size_t>(k)];
            const auto factor = ri[static_cast<std::size_t>(k)] / pk;
            ri[static_cast<std::size_t>(k)] = ChoppedNumber(0.0, digits);
            for (int j = k + 1; j < n; ++j)
                ri[static_cast<std::size_t>(j)] = ri[static_cast<std::size_t>(j)] - factor * rk[static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] - factor * b[static_cast<std::size_t>(k)];
        }
    }

    Eigen::VectorXd x(n);
    std::vector<ChoppedNumber> xs(static_cast<std::size_t>(n), ChoppedNumber(0.0, digits));
    for (int i = n - 1; i >= 0; --i) {
        auto sum = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            sum = sum - a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * xs[static_cast<std::size_t>(j)];
        xs[static_cast<std::size_t>(i)] = sum / pivot(i);
        x[i] = xs[static_cast<std::size_t>(i)].value();
    }
    return x;
}

}  // namespace fcb
