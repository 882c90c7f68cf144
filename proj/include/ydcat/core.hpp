#ifndef YDCAT_CORE_HPP
#define YDCAT_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ydcat {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** \brief Tensor or vector with the wrong shape. */
struct StructureError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

/** \brief Raised when a computation needs spins above the truncation level.
 *  Levels are stored as twice the spin so that half-integers stay exact. */
struct TruncationExceeded : Error {
    int required2;
    int available2;
    TruncationExceeded(int need2, int have2)
        : Error(make_message(need2, have2)), required2(need2), available2(have2) {}

    static std::string half(int twice) {
        if (twice % 2 == 0) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
    static std::string make_message(int need2, int have2) {
        return "TruncationExceeded: level " + half(need2) + " required, truncation level is " +
               half(have2);
    }
};

struct Term {
    int k;
    cd c;
};

struct Term2 {
    int j, k;
    cd c;
};

/** \brief Dense rank-3 tensor, row-major in (i, j, k). */
struct Tensor3 {
    int a = 0, b = 0, c = 0;
    std::vector<cd> v;
    Tensor3() = default;
    Tensor3(int a_, int b_, int c_) : a(a_), b(b_), c(c_), v(size_t(a_) * b_ * c_, cd(0)) {}
    cd& operator()(int i, int j, int k) { return v[(size_t(i) * b + j) * c + k]; }
    const cd& operator()(int i, int j, int k) const { return v[(size_t(i) * b + j) * c + k]; }
};

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline Vec unit_vec(int n, int i) {
    Vec e = Vec::Zero(n);
    e(i) = 1.0;
    return e;
}

inline Mat kron(const Mat& A, const Mat& B) {
    Mat K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

inline Vec kron(const Vec& a, const Vec& b) {
    Vec k(a.size() * b.size());
    for (int i = 0; i < a.size(); ++i) k.segment(i * b.size(), b.size()) = a(i) * b;
    return k;
}

/** Singular values below this count as zero whatever the scale of the matrix. */
constexpr double kAbsoluteCut = 1e-13;

/** \brief Orthonormal basis (columns) of the null space of M.
 *  Singular values below rel_cut times the largest one, or below kAbsoluteCut, count as zero. */
inline Mat null_space(const Mat& M, double rel_cut = 1e-10) {
    const int n = int(M.cols());
    if (n == 0) return Mat(0, 0);
    if (M.rows() == 0) return Mat::Identity(n, n);
    Mat R;
    if (M.rows() > 2 * n) {
        Eigen::HouseholderQR<Mat> qr(M);
        R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    } else {
        R = M;
    }
    Eigen::JacobiSVD<Mat> svd(R, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double smax = s.size() ? s(0) : 0.0;
    double cut = std::max(rel_cut * smax, kAbsoluteCut);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

/** \brief Orthonormal basis of the column span. */
inline Mat range_basis(const Mat& M, double rel_cut = 1e-10) {
    if (M.cols() == 0 || M.rows() == 0) return Mat(M.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    double cut = std::max(rel_cut * s(0), kAbsoluteCut);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    return svd.matrixU().leftCols(rank);
}

inline int matrix_rank(const Mat& M, double rel_cut = 1e-10) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(M);
    const auto& s = svd.singularValues();
    double cut = std::max(rel_cut * s(0), kAbsoluteCut);
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

/** \brief Spectral norm distance between orthogonal projections onto two column spans. */
inline double subspace_distance(const Mat& A, const Mat& B) {
    Mat qa = range_basis(A), qb = range_basis(B);
    int n = int(std::max(A.rows(), B.rows()));
    Mat pa = qa.cols() ? Mat(qa * qa.adjoint()) : Mat::Zero(n, n);
    Mat pb = qb.cols() ? Mat(qb * qb.adjoint()) : Mat::Zero(n, n);
    Mat d = pa - pb;
    if (d.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(d);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/** \brief f(H) for Hermitian H through its eigendecomposition. */
template <class F>
Mat hermitian_apply(const Mat& H, F f) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    Vec d = es.eigenvalues().unaryExpr([&](double x) { return cd(f(x)); });
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

/** \brief Largest distance of X's columns from span(Q), Q orthonormal. */
inline double span_defect(const Mat& Q, const Mat& X) {
    if (X.cols() == 0) return 0.0;
    if (Q.cols() == 0) return max_abs(X);
    return max_abs(Mat(X - Q * (Q.adjoint() * X)));
}

inline Mat hermitian_power(const Mat& H, double p) {
    return hermitian_apply(H, [p](double x) { return std::pow(x, p); });
}

using Rng = std::mt19937_64;

inline Mat random_matrix(int r, int c, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            double re = nd(rng);
            double im = nd(rng);
            m(i, j) = cd(re, im);
        }
    return m;
}

inline Vec random_vec(int n, Rng& rng) { return random_matrix(n, 1, rng).col(0); }

inline Mat random_hermitian(int n, Rng& rng) {
    Mat m = random_matrix(n, n, rng);
    return (m + m.adjoint()) / 2.0;
}

inline Mat random_unitary(int n, Rng& rng) {
    Mat m = random_matrix(n, n, rng);
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR();
    for (int i = 0; i < n; ++i) {
        cd d = r(i, i);
        if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

/** \brief Eigenvalue clusters of a Hermitian matrix: returns orthonormal bases of the
 *  eigenspaces, ordered by increasing eigenvalue. */
inline std::vector<Mat> hermitian_eigenspaces(const Mat& H, double gap) {
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const auto& ev = es.eigenvalues();
    std::vector<Mat> out;
    int start = 0;
    for (int i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || ev(i) - ev(i - 1) > gap) {
            out.push_back(es.eigenvectors().middleCols(start, i - start));
            start = i;
        }
    }
    return out;
}

/** \brief One named residual in a validation report. */
struct Check {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    long evaluated = 0;
    long skipped = 0;
    bool sampled = false;
    bool passed() const { return std::isfinite(residual) && residual <= tol; }
};

struct ValidationReport {
    std::vector<Check> checks;
    std::vector<std::string> notes;
    uint64_t seed = 0;

    Check& add(const std::string& name, double residual, double tol) {
        checks.push_back(Check{name, residual, tol});
        return checks.back();
    }
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed()) return false;
        return true;
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& c : checks) m = std::max(m, c.residual);
        return m;
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    double residual(const std::string& name) const {
        auto* c = find(name);
        if (!c) throw Error("no check named " + name);
        return c->residual;
    }
    void merge(const ValidationReport& o, const std::string& prefix = "") {
        for (auto c : o.checks) {
            c.name = prefix + c.name;
            checks.push_back(c);
        }
        for (const auto& n : o.notes) notes.push_back(prefix + n);
    }
};

/** Running maximum of residual norms. */
struct MaxAcc {
    double v = 0.0;
    void operator()(double x) {
        if (!(x <= v)) v = std::isnan(x) ? std::numeric_limits<double>::infinity() : x;
    }
};

}  // namespace ydcat

#endif
