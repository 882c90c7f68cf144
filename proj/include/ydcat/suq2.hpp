#ifndef YDCAT_SUQ2_HPP
#define YDCAT_SUQ2_HPP

#include "ydcat/repcat.hpp"

#include <array>

namespace ydcat {

/** \brief Polynomial algebra of SU_q(2) in the normal-ordered basis A(k) c^m (c*)^n,
 *  A(k) = a^k for k >= 0 and (a*)^{-k} for k < 0, truncated at total degree deg.
 *  Relations: ac = q ca, ac* = q c*a, cc* = c*c, a*a + c*c = 1, aa* + q^2 cc* = 1.
 *  The coproduct is not stored; coefficients of corepresentations are built from
 *  the fundamental one by tensor products. */
struct SUq2Poly {
    double q = 0.5;
    int deg = 0;
    std::vector<std::array<int, 3>> mono;
    std::map<std::array<int, 3>, int> index;
    HopfAlgebraData alg;

    int idx(int k, int m, int n) const {
        auto it = index.find({k, m, n});
        if (it == index.end()) throw TruncationExceeded(std::abs(k) + m + n, deg);
        return it->second;
    }
};

namespace detail {

inline std::vector<std::pair<std::array<int, 3>, double>> suq2_monoprod(double q, std::array<int, 3> x,
                                                                       std::array<int, 3> y) {
    const int k1 = x[0], m1 = x[1], n1 = x[2], k2 = y[0], m2 = y[1], n2 = y[2];
    double f = std::pow(q, -double(k2) * (m1 + n1));
    std::vector<std::pair<std::array<int, 3>, double>> out;
    if ((k1 >= 0 && k2 >= 0) || (k1 <= 0 && k2 <= 0)) {
        out.push_back({{k1 + k2, m1 + m2, n1 + n2}, f});
        return out;
    }
    // polynomial in t = cc* collected on the right
    std::vector<double> poly{1.0};
    auto times = [&](double lam) {  // poly *= (1 - lam t)
        std::vector<double> np(poly.size() + 1, 0.0);
        for (size_t p = 0; p < poly.size(); ++p) {
            np[p] += poly[p];
            np[p + 1] -= lam * poly[p];
        }
        poly = np;
    };
    if (k1 > 0) {
        int kk = k1, j = -k2, mn = std::min(kk, j);
        for (int i = j - mn + 1; i <= j; ++i) times(std::pow(q, 2.0 * i));
    } else {
        int kk = -k1, j = k2, mn = std::min(kk, j);
        for (int i = j - mn + 1; i <= j; ++i) times(std::pow(q, -2.0 * (i - 1)));
    }
    for (size_t p = 0; p < poly.size(); ++p)
        if (poly[p] != 0.0) out.push_back({{k1 + k2, m1 + m2 + int(p), n1 + n2 + int(p)}, f * poly[p]});
    return out;
}

}  // namespace detail

inline SUq2Poly suq2_polynomial_algebra(double q, int deg) {
    SUq2Poly P;
    P.q = q;
    P.deg = deg;
    for (int d = 0; d <= deg; ++d)
        for (int k = -d; k <= d; ++k)
            for (int m = 0; m <= d - std::abs(k); ++m) {
                int n = d - std::abs(k) - m;
                P.index[{k, m, n}] = int(P.mono.size());
                P.mono.push_back({k, m, n});
            }
    const int N = int(P.mono.size());
    HopfAlgebraData& A = P.alg;
    A.dim = N;
    A.grade.resize(N);
    A.max_grade = deg;
    A.basis_labels.resize(N);
    for (int i = 0; i < N; ++i) {
        auto [k, m, n] = P.mono[i];
        A.grade[i] = std::abs(k) + m + n;
        A.basis_labels[i] = "A" + std::to_string(k) + "c" + std::to_string(m) + "c*" + std::to_string(n);
    }
    A.mult.assign(size_t(N) * N, {});
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (A.grade[i] + A.grade[j] > deg) continue;
            for (const auto& t : detail::suq2_monoprod(q, P.mono[i], P.mono[j]))
                A.mult[size_t(i) * N + j].push_back({P.index.at(t.first), cd(t.second)});
        }
    A.comult.assign(N, {});
    A.unit = unit_vec(N, P.index.at({0, 0, 0}));
    A.counit = Vec::Zero(N);
    A.antipode = Mat::Zero(N, N);
    A.star = Mat::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        auto [k, m, n] = P.mono[i];
        if (m == 0 && n == 0) A.counit(i) = 1.0;
        double sgn = ((m + n) % 2) ? -1.0 : 1.0;
        A.antipode(P.index.at({-k, m, n}), i) = sgn * std::pow(q, double(m - n) + double(k) * (m + n));
        A.star(P.index.at({-k, n, m}), i) = std::pow(q, double(k) * (n + m));
    }
    return P;
}

/** U = [[a, -q c*], [c, a*]]. */
inline Representation suq2_fundamental(const SUq2Poly& P) {
    Representation U;
    U.d = 2;
    U.label = "1/2";
    const int N = P.alg.dim;
    U.u = {unit_vec(N, P.idx(1, 0, 0)), Vec(-P.q * unit_vec(N, P.idx(0, 0, 1))),
           unit_vec(N, P.idx(0, 1, 0)), unit_vec(N, P.idx(-1, 0, 0))};
    return U;
}

inline std::string spin_label(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

/** \brief Irreducible corepresentations of spins 0..max2/2 as polynomial coefficients,
 *  each written in the eigenbasis of its S^2-intertwiner. Spin t/2 is the orthogonal
 *  complement of spin (t-2)/2 inside spin (t-1)/2 tensor spin 1/2. */
inline std::vector<Representation> suq2_irreps_poly(const SUq2Poly& P, int max2) {
    std::vector<Representation> out;
    out.push_back(trivial_rep(P.alg));
    out.back().label = "0";
    if (max2 >= 1) out.push_back(suq2_fundamental(P));
    for (int t = 2; t <= max2; ++t) {
        Representation W = tensor(P.alg, out[t - 1], out[1]);
        auto H = intertwiner_space(out[t - 2], W);
        if (H.size() != 1) throw Error("SU_q(2) tower: lower component not found");
        Mat w = H[0];
        w /= std::sqrt((w.adjoint() * w).trace().real() / w.cols());
        Mat pick = null_space(w.adjoint());
        if (pick.cols() != t + 1) throw Error("SU_q(2) tower: top component has the wrong dimension");
        out.push_back(restrict(W, pick, spin_label(t)));
    }
    for (auto& U : out) {
        if (U.d == 1) continue;
        Representation S2 = U;
        for (auto& v : S2.u) v = P.alg.S(P.alg.S(v));
        auto E = intertwiner_space(U, S2);
        if (E.size() != 1) throw Error("SU_q(2) tower: S^2 intertwiner not unique");
        Mat F = E[0];
        F *= std::abs(F.trace()) / F.trace();
        F = (F + F.adjoint()).eval() / 2.0;
        Eigen::SelfAdjointEigenSolver<Mat> es(F);
        Mat V = es.eigenvectors();
        // fix phases: first nonzero entry of each column real positive
        for (int c = 0; c < V.cols(); ++c) {
            int r = 0;
            V.col(c).cwiseAbs().maxCoeff(&r);
            V.col(c) *= std::abs(V(r, c)) / V(r, c);
        }
        std::string lab = U.label;
        U = restrict(U, V, lab);
    }
    return out;
}

/** \brief SU_q(2) realized on the Peter-Weyl basis u^s_ij of spins up to model2/2,
 *  with irreducibles in the table up to level2/2. */
inline QG make_suq2(double q, int level2, int model2 = -1) {
    if (model2 < 0) model2 = 2 * level2;
    model2 = std::max(model2, 2 * level2);  // conjugate data needs products of grade 2 * level2
    SUq2Poly P = suq2_polynomial_algebra(q, model2);
    auto polys = suq2_irreps_poly(P, model2);
    const int N = P.alg.dim;
    Mat B(N, N);
    std::vector<int> grade;
    std::vector<std::string> labels;
    std::vector<int> offset;
    int col = 0;
    for (const auto& U : polys) {
        offset.push_back(col);
        for (int i = 0; i < U.d; ++i)
            for (int j = 0; j < U.d; ++j) {
                B.col(col++) = U.at(i, j);
                grade.push_back(U.d - 1);
                labels.push_back("u" + U.label + "_" + std::to_string(i) + std::to_string(j));
            }
    }
    if (col != N) throw Error("Peter-Weyl basis size mismatch");
    Eigen::PartialPivLU<Mat> lu(B);
    auto clean = [](Vec v) {
        for (int i = 0; i < v.size(); ++i)
            if (std::abs(v(i)) < 1e-12) v(i) = 0;
        return v;
    };

    auto G = std::make_shared<QuantumGroup>();
    G->kind = "suq2";
    G->q = q;
    G->name = "SU_q(2)";
    HopfAlgebraData& A = G->cg;
    A.dim = N;
    A.basis_labels = labels;
    A.grade = grade;
    A.max_grade = model2;
    A.mult.assign(size_t(N) * N, {});
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (grade[i] + grade[j] <= model2) pairs.push_back({i, j});
    const size_t chunk = 2048;
    for (size_t s = 0; s < pairs.size(); s += chunk) {
        size_t e = std::min(pairs.size(), s + chunk);
        Mat rhs(N, e - s);
        for (size_t p = s; p < e; ++p) rhs.col(p - s) = P.alg.mul(B.col(pairs[p].first), B.col(pairs[p].second));
        Mat sol = lu.solve(rhs);
        for (size_t p = s; p < e; ++p) {
            Vec v = clean(sol.col(p - s));
            auto& row = A.mult[size_t(pairs[p].first) * N + pairs[p].second];
            for (int k = 0; k < N; ++k)
                if (v(k) != cd(0)) row.push_back({k, v(k)});
        }
    }
    A.comult.assign(N, {});
    for (size_t t = 0; t < polys.size(); ++t) {
        int d = polys[t].d, o = offset[t];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) A.comult[o + i * d + j].push_back({o + i * d + k, o + k * d + j, 1.0});
    }
    A.unit = clean(lu.solve(P.alg.unit));
    A.counit = Vec::Zero(N);
    for (int i = 0; i < N; ++i) A.counit(i) = P.alg.eps(B.col(i));
    A.counit = clean(A.counit);
    A.antipode = lu.solve(Mat(P.alg.antipode * B));
    A.star = lu.solve(Mat(P.alg.star * B.conjugate()));
    for (int i = 0; i < N; ++i) {
        A.antipode.col(i) = clean(A.antipode.col(i));
        A.star.col(i) = clean(A.star.col(i));
    }

    IrrepTable& T = G->table;
    T.level2 = level2;
    for (int t = 0; t <= level2; ++t) {
        Representation U;
        U.d = t + 1;
        U.label = spin_label(t);
        for (int i = 0; i < U.d; ++i)
            for (int j = 0; j < U.d; ++j) U.u.push_back(unit_vec(N, offset[t] + i * U.d + j));
        T.irreps.push_back(U);
        T.labels.push_back(U.label);
        T.spin2.push_back(t);
    }
    for (const auto& U : T.irreps) T.conj.push_back(conjugate_data(A, U));
    return G;
}

}  // namespace ydcat

#endif
