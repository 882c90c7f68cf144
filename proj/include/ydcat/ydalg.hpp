#ifndef YDCAT_YDALG_HPP
#define YDCAT_YDALG_HPP

#include "ydcat/repcat.hpp"

#include <functional>
#include <memory>

namespace ydcat {

/** \brief Coordinates of C[G] in the matrix-coefficient basis u^s_ij of its irreducibles.
 *  basis.col(p) is the p-th coefficient in the coordinates of G->cg; coords = basis^{-1}. */
struct PeterWeyl {
    Mat basis;
    Mat coords;
    std::vector<int> block, row, col;
};

inline PeterWeyl peter_weyl(const QuantumGroup& G) {
    PeterWeyl pw;
    const int n = G.cg.dim;
    if (G.kind == "suq2") {
        pw.basis = Mat::Identity(n, n);
        pw.coords = Mat::Identity(n, n);
        for (int t = 0; int(pw.block.size()) < n; ++t)
            for (int i = 0; i <= t; ++i)
                for (int j = 0; j <= t; ++j) {
                    pw.block.push_back(t);
                    pw.row.push_back(i);
                    pw.col.push_back(j);
                }
        return pw;
    }
    pw.basis = Mat::Zero(n, n);
    int c = 0;
    for (int s = 0; s < G.table.size(); ++s) {
        const auto& U = G.table.irreps[s];
        for (int i = 0; i < U.d; ++i)
            for (int j = 0; j < U.d; ++j) {
                if (c >= n) throw Error("Peter-Weyl basis overflow");
                pw.basis.col(c++) = U.at(i, j);
                pw.block.push_back(s);
                pw.row.push_back(i);
                pw.col.push_back(j);
            }
    }
    if (c != n) throw Error("Peter-Weyl basis incomplete: table does not exhaust C[G]");
    pw.coords = pw.basis.inverse();
    return pw;
}

/** \brief Regular part of a braided-commutative Yetter-Drinfeld G-C*-algebra, on a finite basis.
 *
 *  alpha(b_a) = sum_{(j,k,c) in coact[a]} c e_j (x) b_k with e_j the basis of G->cg.
 *  act_op[p] is the matrix of a -> e_p |> a. When act_need[p*dim+a] >= 0 the column is not
 *  representable below the truncation level and acting with it throws. */
struct RegularYDAlgebra {
    QG G;
    std::string name;
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Term>> mult;
    Vec unit;
    Mat star;
    std::vector<std::vector<Term2>> coact;
    std::vector<Mat> act_op;
    std::vector<int> act_need;
    int level2 = -1;

    int ncg() const { return G->cg.dim; }
    Vec e(int i) const { return unit_vec(dim, i); }

    Vec mul(const Vec& x, const Vec& y) const {
        Vec out = Vec::Zero(dim);
        for (int i = 0; i < dim; ++i) {
            if (x(i) == cd(0)) continue;
            for (int j = 0; j < dim; ++j) {
                if (y(j) == cd(0)) continue;
                cd f = x(i) * y(j);
                for (const auto& t : mult[size_t(i) * dim + j]) out(t.k) += f * t.c;
            }
        }
        return out;
    }
    Vec adj(const Vec& x) const { return star * x.conjugate(); }

    /** alpha(a) as an ncg x dim coefficient matrix. */
    Mat coaction(const Vec& a) const {
        Mat out = Mat::Zero(ncg(), dim);
        for (int i = 0; i < dim; ++i) {
            if (a(i) == cd(0)) continue;
            for (const auto& t : coact[i]) out(t.j, t.k) += a(i) * t.c;
        }
        return out;
    }

    bool act_known(int p, int a) const { return act_need.empty() || act_need[size_t(p) * dim + a] < 0; }

    Vec act(const Vec& x, const Vec& a) const {
        Vec out = Vec::Zero(dim);
        for (int p = 0; p < x.size(); ++p) {
            if (x(p) == cd(0)) continue;
            for (int k = 0; k < dim; ++k) {
                if (a(k) == cd(0)) continue;
                if (!act_known(p, k)) throw TruncationExceeded(act_need[size_t(p) * dim + k], level2);
                out += x(p) * a(k) * act_op[p].col(k);
            }
        }
        return out;
    }

    /** Left multiplication by a as a dim x dim matrix. */
    Mat left_mul(const Vec& a) const {
        Mat L(dim, dim);
        for (int k = 0; k < dim; ++k) L.col(k) = mul(a, e(k));
        return L;
    }
};

using YD = std::shared_ptr<const RegularYDAlgebra>;

namespace detail {

inline std::vector<std::vector<Term>> sparse_columns(const Mat& M, double cut = 0.0) {
    std::vector<std::vector<Term>> out(M.cols());
    for (int c = 0; c < M.cols(); ++c)
        for (int r = 0; r < M.rows(); ++r)
            if (std::abs(M(r, c)) > cut) out[c].push_back({r, M(r, c)});
    return out;
}

inline std::vector<Term2> sparse_matrix(const Mat& M, double cut = 0.0) {
    std::vector<Term2> out;
    for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c)
            if (std::abs(M(r, c)) > cut) out.push_back({r, c, M(r, c)});
    return out;
}

/** Delta^2(x) as a list of (i, j, k, c) with x = sum c e_i (x) e_j (x) e_k. */
inline std::vector<std::pair<std::array<int, 3>, cd>> coproduct2(const HopfAlgebraData& A, const Vec& x) {
    Mat X = A.coproduct(x);
    std::vector<std::pair<std::array<int, 3>, cd>> out;
    for (int j = 0; j < A.dim; ++j)
        for (int k = 0; k < A.dim; ++k) {
            if (X(j, k) == cd(0)) continue;
            for (const auto& t : A.comult[j]) out.push_back({{t.j, t.k, k}, X(j, k) * t.c});
        }
    return out;
}

inline std::vector<std::pair<std::array<int, 2>, cd>> coproduct1(const HopfAlgebraData& A, const Vec& x) {
    std::vector<std::pair<std::array<int, 2>, cd>> out;
    for (int i = 0; i < A.dim; ++i) {
        if (x(i) == cd(0)) continue;
        for (const auto& t : A.comult[i]) out.push_back({{t.j, t.k}, x(i) * t.c});
    }
    return out;
}

}  // namespace detail

/** \brief Trivial YD algebra C over G. */
inline RegularYDAlgebra trivial_yd(QG G) {
    RegularYDAlgebra A;
    A.G = G;
    A.name = "C";
    A.dim = 1;
    A.labels = {"1"};
    A.mult = {{{0, 1.0}}};
    A.unit = Vec::Ones(1);
    A.star = Mat::Ones(1, 1);
    const auto& cg = G->cg;
    A.coact.assign(1, {});
    for (int j = 0; j < cg.dim; ++j)
        if (cg.unit(j) != cd(0)) A.coact[0].push_back({j, 0, cg.unit(j)});
    A.act_op.resize(cg.dim);
    for (int p = 0; p < cg.dim; ++p) A.act_op[p] = Mat::Constant(1, 1, cg.counit(p));
    return A;
}

/** \brief C[G] with alpha = Delta and the adjoint action x |> a = x_(1) a S(x_(2)). */
inline RegularYDAlgebra adjoint_yd_on_CG(QG G) {
    const HopfAlgebraData& H = G->cg;
    if (H.truncated()) throw Error("adjoint_yd_on_CG needs an untruncated Hopf algebra");
    RegularYDAlgebra A;
    A.G = G;
    A.name = "adjoint C[" + G->name + "]";
    A.dim = H.dim;
    A.labels = H.basis_labels;
    A.mult = H.mult;
    A.unit = H.unit;
    A.star = H.star;
    A.coact = H.comult;
    A.act_op.assign(H.dim, Mat::Zero(H.dim, H.dim));
    for (int p = 0; p < H.dim; ++p)
        for (const auto& t : H.comult[p]) {
            Vec sk = H.S(H.e(t.k));
            for (int a = 0; a < H.dim; ++a) A.act_op[p].col(a) += t.c * H.mul(H.mul(H.e(t.j), H.e(a)), sk);
        }
    peter_weyl(*G);  // throws when the table does not exhaust C[G]
    return A;
}

/** \brief The same algebra and coaction with the action replaced by x |> a = eps(x) a.
 *  Not braided-commutative unless B is commutative. */
inline RegularYDAlgebra counit_action_control(const RegularYDAlgebra& A) {
    RegularYDAlgebra B = A;
    B.name = A.name + " with counit action";
    const auto& cg = A.G->cg;
    for (int p = 0; p < cg.dim; ++p) B.act_op[p] = cg.counit(p) * Mat::Identity(A.dim, A.dim);
    B.act_need.clear();
    return B;
}

/** \brief Restriction of A to the span of the columns of C (a unital *-subalgebra stable under
 *  alpha and |>). Throws when the span is not closed; the largest defect is reported. */
inline RegularYDAlgebra sub_yd(const RegularYDAlgebra& A, const Mat& C, const std::string& name,
                               double tol = 1e-8) {
    Mat Q = range_basis(C);
    if (Q.cols() != C.cols()) throw Error("sub_yd: spanning vectors are linearly dependent");
    const int m = int(Q.cols());
    const int n = A.ncg();
    Mat P = Q.adjoint();
    double defect = 0.0;
    auto coords = [&](const Vec& v) {
        Vec c = P * v;
        defect = std::max(defect, max_abs(Vec(Q * c - v)));
        return c;
    };
    RegularYDAlgebra B;
    B.G = A.G;
    B.name = name;
    B.dim = m;
    for (int i = 0; i < m; ++i) B.labels.push_back("c" + std::to_string(i));
    B.mult.assign(size_t(m) * m, {});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vec c = coords(A.mul(Q.col(i), Q.col(j)));
            for (int k = 0; k < m; ++k)
                if (std::abs(c(k)) > 1e-14) B.mult[size_t(i) * m + j].push_back({k, c(k)});
        }
    B.unit = coords(A.unit);
    B.star = Mat(m, m);
    for (int i = 0; i < m; ++i) B.star.col(i) = coords(A.adj(Q.col(i)));
    B.coact.assign(m, {});
    for (int i = 0; i < m; ++i) {
        Mat X = A.coaction(Q.col(i));
        Mat Y(n, m);
        for (int j = 0; j < n; ++j) Y.row(j) = coords(X.row(j).transpose()).transpose();
        B.coact[i] = detail::sparse_matrix(Y, 1e-14);
    }
    B.act_op.assign(n, Mat::Zero(m, m));
    for (int p = 0; p < n; ++p)
        for (int i = 0; i < m; ++i) B.act_op[p].col(i) = coords(A.act(A.G->cg.e(p), Q.col(i)));
    if (defect > tol)
        throw Error("sub_yd: span not closed under the structure maps, defect " + std::to_string(defect));
    return B;
}

/** \brief Same YD algebra in the basis b'_a = sum_k W(k,a) b_k. */
inline RegularYDAlgebra change_basis(const RegularYDAlgebra& A, const Mat& W) {
    Mat Wi = W.inverse();
    const int N = A.dim, n = A.ncg();
    RegularYDAlgebra B = A;
    B.mult.assign(size_t(N) * N, {});
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            Vec c = Wi * A.mul(W.col(a), W.col(b));
            for (int k = 0; k < N; ++k)
                if (c(k) != cd(0)) B.mult[size_t(a) * N + b].push_back({k, c(k)});
        }
    B.unit = Wi * A.unit;
    B.star = Wi * A.star * W.conjugate();
    for (int a = 0; a < N; ++a) {
        Mat X = A.coaction(W.col(a)) * Wi.transpose();
        B.coact[a] = detail::sparse_matrix(X);
    }
    for (int p = 0; p < n; ++p) B.act_op[p] = Wi * A.act_op[p] * W;
    if (!A.act_need.empty()) {
        // a column of the new basis is known only if every old column it touches is
        B.act_need.assign(size_t(n) * N, -1);
        for (int p = 0; p < n; ++p)
            for (int a = 0; a < N; ++a)
                for (int k = 0; k < N; ++k)
                    if (W(k, a) != cd(0) && !A.act_known(p, k))
                        B.act_need[size_t(p) * N + a] = std::max(B.act_need[size_t(p) * N + a],
                                                                 A.act_need[size_t(p) * N + k]);
    }
    return B;
}

/** \brief Matrix-block dual l^infty(G^) truncated to the irreducibles of spin <= level2/2
 *  (all irreducibles for a finite group), with the adjoint coaction
 *  T -> (U_s)_21^* (1 (x) T) (U_s)_21 and the action x |> a = (id (x) x) dual-coproduct(a). */
inline RegularYDAlgebra dual_yd(QG G, int level2 = -1) {
    const HopfAlgebraData& H = G->cg;
    const IrrepTable& T = G->table;
    const bool trunc = G->kind == "suq2";
    if (trunc && level2 < 0) throw Error("dual_yd: SU_q(2) needs a truncation level");
    if (trunc && level2 > T.level2) throw TruncationExceeded(level2, T.level2);
    std::vector<int> blocks;
    for (int s = 0; s < T.size(); ++s)
        if (!trunc || T.spin2[s] <= level2) blocks.push_back(s);
    std::vector<int> offset(T.size(), -1);
    RegularYDAlgebra A;
    A.G = G;
    A.name = "dual of " + G->name;
    A.level2 = trunc ? level2 : -1;
    int N = 0;
    for (int s : blocks) {
        offset[s] = N;
        int d = T.dim(s);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) A.labels.push_back("E" + T.labels[s] + "_" + std::to_string(i) + std::to_string(j));
        N += d * d;
    }
    A.dim = N;
    auto idx = [&](int s, int i, int j) { return offset[s] + i * T.dim(s) + j; };
    A.mult.assign(size_t(N) * N, {});
    A.unit = Vec::Zero(N);
    A.star = Mat::Zero(N, N);
    A.coact.assign(N, {});
    for (int s : blocks) {
        int d = T.dim(s);
        const auto& U = T.irreps[s];
        for (int i = 0; i < d; ++i) {
            A.unit(idx(s, i, i)) = 1.0;
            for (int j = 0; j < d; ++j) {
                A.star(idx(s, j, i), idx(s, i, j)) = 1.0;
                for (int k = 0; k < d; ++k) A.mult[size_t(idx(s, i, j)) * N + idx(s, j, k)].push_back({idx(s, i, k), 1.0});
            }
        }
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) {
                        Vec c = H.mul(H.adj(U.at(k, a)), U.at(l, b));
                        for (int j = 0; j < H.dim; ++j)
                            if (std::abs(c(j)) > 1e-14) A.coact[idx(s, k, l)].push_back({j, idx(s, a, b), c(j)});
                    }
    }

    // action of the matrix coefficients u^t_ij, then of the basis of C[G]
    PeterWeyl pw = peter_weyl(*G);
    const int n = H.dim;
    std::vector<Mat> act_pw(n, Mat::Zero(N, N));
    std::vector<int> need_pw(size_t(n) * N, -1);
    for (int p = 0; p < n; ++p) {
        const int t = pw.block[p], i = pw.row[p], j = pw.col[p];
        if (t >= T.size()) {
            int need = trunc ? t : -1;
            for (int a = 0; a < N; ++a) need_pw[size_t(p) * N + a] = std::max(need, 0);
            continue;
        }
        const int dt = T.dim(t);
        for (int r : blocks) {
            const int dr = T.dim(r);
            bool ok = true;
            int need = -1;
            if (trunc && T.spin2[r] + T.spin2[t] > level2) {
                ok = false;
                need = T.spin2[r] + T.spin2[t];
            }
            std::vector<std::pair<int, const Fusion*>> fus;
            if (ok)
                for (int s : blocks) {
                    try {
                        fus.push_back({s, &G->fusion(s, t)});
                    } catch (const TruncationExceeded& e) {
                        ok = false;
                        need = std::max(need, e.required2);
                    }
                }
            for (int k = 0; k < dr; ++k)
                for (int l = 0; l < dr; ++l) {
                    int a = idx(r, k, l);
                    if (!ok) {
                        need_pw[size_t(p) * N + a] = need;
                        continue;
                    }
                    for (const auto& [s, f] : fus) {
                        const int ds = T.dim(s);
                        for (size_t w = 0; w < f->labels.size(); ++w) {
                            if (f->labels[w] != r) continue;
                            const Mat& iso = f->isometries[w];
                            for (int m = 0; m < ds; ++m)
                                for (int q = 0; q < ds; ++q)
                                    act_pw[p](idx(s, m, q), a) += iso(m * dt + i, k) * std::conj(iso(q * dt + j, l));
                        }
                    }
                }
        }
    }
    A.act_op.assign(n, Mat::Zero(N, N));
    A.act_need.assign(size_t(n) * N, -1);
    bool any_need = false;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            cd c = pw.coords(q, p);
            if (std::abs(c) < 1e-14) continue;
            A.act_op[p] += c * act_pw[q];
            for (int a = 0; a < N; ++a) {
                int nd = need_pw[size_t(q) * N + a];
                if (nd >= 0) {
                    A.act_need[size_t(p) * N + a] = std::max(A.act_need[size_t(p) * N + a], nd);
                    any_need = true;
                }
            }
        }
    if (!any_need) A.act_need.clear();
    return A;
}

/** \brief Orthonormal basis of the fixed points {a : alpha(a) = 1 (x) a}. */
inline Mat fixed_points(const RegularYDAlgebra& A) {
    const int n = A.ncg(), N = A.dim;
    const Vec& one = A.G->cg.unit;
    Mat M(size_t(n) * N, N);
    for (int a = 0; a < N; ++a) {
        Mat X = A.coaction(A.e(a)) - one * A.e(a).transpose();
        for (int j = 0; j < n; ++j) M.block(size_t(j) * N, a, N, 1) = X.row(j).transpose();
    }
    return null_space(M);
}

/** \brief Projection onto the spectral subspace of the table irreducible s:
 *  a -> (eps o P_s (x) id) alpha(a), P_s the projection onto span{u^s_ij}. */
inline Mat spectral_projection(const RegularYDAlgebra& A, const PeterWeyl& pw, int s) {
    const auto& cg = A.G->cg;
    Vec f = Vec::Zero(cg.dim);  // functional eps o P_s in C[G] coordinates
    for (int p = 0; p < cg.dim; ++p)
        if (pw.block[p] == s && pw.row[p] == pw.col[p]) f += pw.coords.row(p).transpose();
    Mat E(A.dim, A.dim);
    for (int a = 0; a < A.dim; ++a) E.col(a) = A.coaction(A.e(a)).transpose() * f;
    return E;
}

namespace detail {

/** Runs f over all index tuples (or seeded samples above the threshold) and records the
 *  largest residual; tuples that need blocks above the truncation level count as skipped. */
inline Check& run_tuples(ValidationReport& rep, const std::string& name, double tol, std::vector<int> sizes,
                         Rng& rng, const std::function<double(const std::vector<int>&)>& f,
                         double threshold = 1e6, int samples = 10000) {
    double total = 1.0;
    for (int s : sizes) total *= std::max(s, 0);
    MaxAcc acc;
    long ev = 0, sk = 0;
    bool sampled = total > threshold;
    std::vector<int> idx(sizes.size(), 0);
    auto one = [&]() {
        try {
            acc(f(idx));
            ++ev;
        } catch (const TruncationExceeded&) {
            ++sk;
        }
    };
    if (total > 0) {
        if (!sampled) {
            while (true) {
                one();
                size_t d = 0;
                while (d < idx.size() && ++idx[d] == sizes[d]) idx[d++] = 0;
                if (d == idx.size()) break;
            }
        } else {
            for (int r = 0; r < samples; ++r) {
                for (size_t d = 0; d < idx.size(); ++d)
                    idx[d] = std::uniform_int_distribution<int>(0, sizes[d] - 1)(rng);
                one();
            }
        }
    }
    Check& c = rep.add(name, acc.v, tol);
    c.evaluated = ev;
    c.skipped = sk;
    c.sampled = sampled;
    return c;
}

/** Product in C[G] (x) B of coefficient matrices. */
inline Mat mul_cgb(const RegularYDAlgebra& A, const Mat& X, const Mat& Y) {
    const auto& H = A.G->cg;
    Mat out = Mat::Zero(H.dim, A.dim);
    for (int a = 0; a < H.dim; ++a)
        for (int b = 0; b < A.dim; ++b) {
            if (X(a, b) == cd(0)) continue;
            for (int c = 0; c < H.dim; ++c)
                for (int d = 0; d < A.dim; ++d) {
                    if (Y(c, d) == cd(0)) continue;
                    H.require_product(a, c);
                    cd f = X(a, b) * Y(c, d);
                    for (const auto& t1 : H.mult[size_t(a) * H.dim + c])
                        for (const auto& t2 : A.mult[size_t(b) * A.dim + d]) out(t1.k, t2.k) += f * t1.c * t2.c;
                }
        }
    return out;
}

}  // namespace detail

/** \brief One residual per Yetter-Drinfeld axiom, over all basis tuples up to 10^6 tuples and on
 *  10^4 seeded samples above that. For truncated models the certified range (tuples whose
 *  evaluation stays below the truncation level) is stated in the notes. */
inline ValidationReport check_yd_axioms(const RegularYDAlgebra& A, double tol, uint64_t seed = 7) {
    const HopfAlgebraData& H = A.G->cg;
    const int N = A.dim, n = H.dim;
    if (int(A.mult.size()) != N * N || A.unit.size() != N || A.star.rows() != N || A.star.cols() != N ||
        int(A.coact.size()) != N || int(A.act_op.size()) != n)
        throw StructureError("YD algebra tensors have inconsistent shapes");
    for (const auto& M : A.act_op)
        if (M.rows() != N || M.cols() != N) throw StructureError("action matrix has the wrong shape");

    ValidationReport rep;
    rep.seed = seed;
    Rng rng(seed);
    auto e = [&](int i) { return A.e(i); };
    // C[G] basis elements acting on at least one basis element below the truncation level
    std::vector<int> xs;
    for (int p = 0; p < n; ++p)
        for (int a = 0; a < N; ++a)
            if (A.act_known(p, a)) {
                xs.push_back(p);
                break;
            }
    const int nx = int(xs.size());
    auto g = [&](int i) { return H.e(xs[i]); };
    auto gfull = [&](int i) { return H.e(i); };
    std::vector<Mat> alpha(N);
    for (int a = 0; a < N; ++a) alpha[a] = A.coaction(e(a));
    Mat Sinv = H.antipode.inverse();

    detail::run_tuples(rep, "algebra_associative", tol, {N, N, N}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(A.mul(A.mul(e(t[0]), e(t[1])), e(t[2])) - A.mul(e(t[0]), A.mul(e(t[1]), e(t[2])))));
    });
    detail::run_tuples(rep, "algebra_unital", tol, {N}, rng, [&](const std::vector<int>& t) {
        return std::max(max_abs(Vec(A.mul(A.unit, e(t[0])) - e(t[0]))), max_abs(Vec(A.mul(e(t[0]), A.unit) - e(t[0]))));
    });
    detail::run_tuples(rep, "star_involutive", tol, {N}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(A.adj(A.adj(e(t[0]))) - e(t[0])));
    });
    detail::run_tuples(rep, "star_antimultiplicative", tol, {N, N}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(A.adj(A.mul(e(t[0]), e(t[1]))) - A.mul(A.adj(e(t[1])), A.adj(e(t[0])))));
    });

    detail::run_tuples(rep, "coaction_unital", tol, {1}, rng, [&](const std::vector<int>&) {
        return max_abs(Mat(A.coaction(A.unit) - H.unit * A.unit.transpose()));
    });
    detail::run_tuples(rep, "coaction_multiplicative", tol, {N, N}, rng, [&](const std::vector<int>& t) {
        return max_abs(Mat(A.coaction(A.mul(e(t[0]), e(t[1]))) - detail::mul_cgb(A, alpha[t[0]], alpha[t[1]])));
    });
    detail::run_tuples(rep, "coaction_star", tol, {N}, rng, [&](const std::vector<int>& t) {
        Mat X = alpha[t[0]];
        Mat Y = Mat::Zero(n, N);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < N; ++k)
                if (X(j, k) != cd(0)) Y += std::conj(X(j, k)) * H.adj(gfull(j)) * A.adj(e(k)).transpose();
        return max_abs(Mat(A.coaction(A.adj(e(t[0]))) - Y));
    });
    detail::run_tuples(rep, "coaction_coassociative", tol, {N}, rng, [&](const std::vector<int>& t) {
        const Mat& X = alpha[t[0]];
        // compare (Delta (x) id) alpha and (id (x) alpha) alpha as n x n x N arrays
        std::vector<Mat> L(n, Mat::Zero(n, N)), R(n, Mat::Zero(n, N));
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < N; ++k) {
                if (X(j, k) == cd(0)) continue;
                for (const auto& c : H.comult[j]) L[c.j].row(c.k) += X(j, k) * c.c * e(k).transpose();
                R[j] += X(j, k) * alpha[k];
            }
        double m = 0;
        for (int j = 0; j < n; ++j) m = std::max(m, max_abs(Mat(L[j] - R[j])));
        return m;
    });
    detail::run_tuples(rep, "coaction_counital", tol, {N}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(alpha[t[0]].transpose() * H.counit - e(t[0])));
    });

    detail::run_tuples(rep, "module_unital", tol, {N}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(A.act(H.unit, e(t[0])) - e(t[0])));
    });
    detail::run_tuples(rep, "module_associative", tol, {nx, nx, N}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(A.act(H.mul(g(t[0]), g(t[1])), e(t[2])) - A.act(g(t[0]), A.act(g(t[1]), e(t[2])))));
    });
    detail::run_tuples(rep, "module_algebra", tol, {nx, N, N}, rng, [&](const std::vector<int>& t) {
        Vec lhs = A.act(g(t[0]), A.mul(e(t[1]), e(t[2])));
        Vec rhs = Vec::Zero(N);
        for (const auto& [jk, c] : detail::coproduct1(H, g(t[0])))
            rhs += c * A.mul(A.act(gfull(jk[0]), e(t[1])), A.act(gfull(jk[1]), e(t[2])));
        return max_abs(Vec(lhs - rhs));
    });
    detail::run_tuples(rep, "module_unit", tol, {nx}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(A.act(g(t[0]), A.unit) - H.counit(xs[t[0]]) * A.unit));
    });
    detail::run_tuples(rep, "star_compatible", tol, {nx, N}, rng, [&](const std::vector<int>& t) {
        Vec x = g(t[0]);
        return max_abs(Vec(A.act(x, A.adj(e(t[1]))) - A.adj(A.act(H.adj(H.S(x)), e(t[1])))));
    });
    detail::run_tuples(rep, "yetter_drinfeld", tol, {nx, N}, rng, [&](const std::vector<int>& t) {
        Mat lhs = A.coaction(A.act(g(t[0]), e(t[1])));
        const Mat& X = alpha[t[1]];
        Mat rhs = Mat::Zero(n, N);
        auto d2 = detail::coproduct2(H, g(t[0]));
        for (int q = 0; q < N; ++q) {
            Vec a1 = X.col(q);
            if (max_abs(a1) == 0) continue;
            for (const auto& [ijk, c] : d2) {
                Vec left = H.mul(H.mul(gfull(ijk[0]), a1), H.S(gfull(ijk[2])));
                Vec right = A.act(gfull(ijk[1]), e(q));
                rhs += c * left * right.transpose();
            }
        }
        return max_abs(Mat(lhs - rhs));
    });
    detail::run_tuples(rep, "braided_commutative", tol, {N, N}, rng, [&](const std::vector<int>& t) {
        Vec a = e(t[0]), b = e(t[1]);
        const Mat& X = alpha[t[1]];
        Vec rhs = Vec::Zero(N);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < N; ++k)
                if (X(j, k) != cd(0)) rhs += X(j, k) * A.mul(e(k), A.act(Sinv.col(j), a));
        return max_abs(Vec(A.mul(a, b) - rhs));
    });
    Mat F = fixed_points(A);
    detail::run_tuples(rep, "fixed_points_central", tol, {int(F.cols()), N}, rng, [&](const std::vector<int>& t) {
        Vec f = F.col(t[0]);
        return max_abs(Vec(A.mul(f, e(t[1])) - A.mul(e(t[1]), f)));
    });
    rep.notes.push_back("fixed point algebra dimension " + std::to_string(F.cols()));
    for (const auto& c : rep.checks)
        if (c.evaluated == 0) rep.notes.push_back("no tuple of " + c.name + " lies in the certified range");
    if (A.level2 >= 0) {
        long sk = 0;
        for (const auto& c : rep.checks) sk += c.skipped;
        rep.notes.push_back("certified range: blocks up to spin " + TruncationExceeded::half(A.level2) +
                            ", tuples whose evaluation stays below the truncation level; " + std::to_string(sk) +
                            " tuples outside that range skipped");
    }
    return rep;
}

/** \brief The representation pi_X of B on H_U (x) B from the defining formula
 *  pi_X(a)(xi (x) b) = (xi (x) b)_(2) (S^{-1}((xi (x) b)_(1)) |> a), with delta(xi_i) = sum_j u_ij^* (x) xi_j. */
struct InducedAction {
    int d = 0, N = 0;
    std::vector<Mat> pi;  // pi[a] acting on index i*N + k
    ValidationReport report;
};

inline InducedAction induced_module_action(const RegularYDAlgebra& A, const Representation& U, double tol = 1e-9,
                                           uint64_t seed = 7) {
    const HopfAlgebraData& H = A.G->cg;
    const int N = A.dim, d = U.d, n = H.dim;
    Mat Sinv = H.antipode.inverse();
    InducedAction out;
    out.d = d;
    out.N = N;
    std::vector<Mat> alpha(N);
    for (int b = 0; b < N; ++b) alpha[b] = A.coaction(A.e(b));
    std::vector<Vec> ustar(size_t(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) ustar[size_t(i) * d + j] = H.adj(U.at(i, j));
    out.pi.assign(N, Mat::Zero(d * N, d * N));
    for (int a = 0; a < N; ++a)
        for (int i = 0; i < d; ++i)
            for (int b = 0; b < N; ++b) {
                Vec col = Vec::Zero(d * N);
                const Mat& X = alpha[b];
                for (int j = 0; j < d; ++j)
                    for (int p = 0; p < n; ++p)
                        for (int k = 0; k < N; ++k) {
                            if (X(p, k) == cd(0)) continue;
                            Vec x = Sinv * H.mul(ustar[size_t(i) * d + j], H.e(p));
                            col.segment(j * N, N) += X(p, k) * A.mul(A.e(k), A.act(x, A.e(a)));
                        }
                out.pi[a].col(i * N + b) = col;
            }

    ValidationReport& rep = out.report;
    rep.seed = seed;
    Rng rng(seed);
    detail::run_tuples(rep, "homomorphism", tol, {N, N}, rng, [&](const std::vector<int>& t) {
        Vec ab = A.mul(A.e(t[0]), A.e(t[1]));
        Mat P = Mat::Zero(d * N, d * N);
        for (int k = 0; k < N; ++k)
            if (ab(k) != cd(0)) P += ab(k) * out.pi[k];
        return max_abs(Mat(P - out.pi[t[0]] * out.pi[t[1]]));
    });
    detail::run_tuples(rep, "unital", tol, {1}, rng, [&](const std::vector<int>&) {
        Mat P = Mat::Zero(d * N, d * N);
        for (int k = 0; k < N; ++k)
            if (A.unit(k) != cd(0)) P += A.unit(k) * out.pi[k];
        return max_abs(Mat(P - Mat::Identity(d * N, d * N)));
    });
    // right B-linearity, and the coefficient matrix c_ij(a) = <xi_i, pi(a) (xi_j (x) 1)>
    auto coef = [&](const Mat& P, int i, int j) { return Vec(P.block(i * N, 0, N, d * N) * kron(unit_vec(d, j), A.unit)); };
    detail::run_tuples(rep, "module_map", tol, {N, d, N}, rng, [&](const std::vector<int>& t) {
        const Mat& P = out.pi[t[0]];
        Vec lhs = P.col(t[1] * N + t[2]);
        Vec rhs(d * N);
        for (int i = 0; i < d; ++i) rhs.segment(i * N, N) = A.mul(coef(P, i, t[1]), A.e(t[2]));
        return max_abs(Vec(lhs - rhs));
    });
    detail::run_tuples(rep, "star_preserving", tol, {N, d, d}, rng, [&](const std::vector<int>& t) {
        Vec as = A.adj(A.e(t[0]));
        Mat P = Mat::Zero(d * N, d * N);
        for (int k = 0; k < N; ++k)
            if (as(k) != cd(0)) P += as(k) * out.pi[k];
        return max_abs(Vec(coef(P, t[1], t[2]) - A.adj(coef(out.pi[t[0]], t[2], t[1]))));
    });
    detail::run_tuples(rep, "block_formula", tol, {N, d, d}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(coef(out.pi[t[0]], t[1], t[2]) - A.act(U.at(t[1], t[2]), A.e(t[0]))));
    });
    // delta_X(pi(a) x) = (id (x) pi) alpha(a) delta_X(x) in C[G] (x) H_U (x) B
    auto deltaX = [&](const Vec& y) {
        Mat out2 = Mat::Zero(n, d * N);
        for (int k = 0; k < d; ++k) {
            Mat Y = A.coaction(y.segment(k * N, N));
            for (int j = 0; j < d; ++j)
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < N; ++q) {
                        if (Y(p, q) == cd(0)) continue;
                        out2.col(j * N + q) += Y(p, q) * H.mul(ustar[size_t(k) * d + j], H.e(p));
                    }
        }
        return out2;
    };
    detail::run_tuples(rep, "equivariant", tol, {N, d, N}, rng, [&](const std::vector<int>& t) {
        const int a = t[0], i = t[1], b = t[2];
        Mat lhs = deltaX(out.pi[a].col(i * N + b));
        Mat rhs = Mat::Zero(n, d * N);
        const Mat& Xa = alpha[a];
        const Mat& Xb = alpha[b];
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < N; ++q) {
                if (Xa(p, q) == cd(0)) continue;
                for (int j = 0; j < d; ++j)
                    for (int p2 = 0; p2 < n; ++p2)
                        for (int q2 = 0; q2 < N; ++q2) {
                            if (Xb(p2, q2) == cd(0)) continue;
                            Vec first = H.mul(H.mul(H.e(p), ustar[size_t(i) * d + j]), H.e(p2));
                            Vec second = out.pi[q].col(j * N + q2);
                            rhs += Xa(p, q) * Xb(p2, q2) * first * second.transpose();
                        }
            }
        return max_abs(Mat(lhs - rhs));
    });
    return out;
}

}  // namespace ydcat

#endif
