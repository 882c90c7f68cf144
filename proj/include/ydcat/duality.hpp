#ifndef YDCAT_DUALITY_HPP
#define YDCAT_DUALITY_HPP

#include "ydcat/ydalg.hpp"

#include <numeric>

namespace ydcat {

/** \brief A morphism H_U -> H_V with coefficients in a YD algebra K:
 *  sum_k c[k] (x) b_k, each c[k] a rows x cols matrix. */
struct Morph {
    int rows = 0, cols = 0;
    std::vector<Mat> c;
};

inline Morph morph_zero(const RegularYDAlgebra& K, int rows, int cols) {
    return Morph{rows, cols, std::vector<Mat>(K.dim, Mat::Zero(rows, cols))};
}

/** M (x) 1_K. */
inline Morph morph_scalar(const RegularYDAlgebra& K, const Mat& M) {
    Morph m = morph_zero(K, int(M.rows()), int(M.cols()));
    for (int k = 0; k < K.dim; ++k)
        if (K.unit(k) != cd(0)) m.c[k] = K.unit(k) * M;
    return m;
}

inline Morph morph_add(const Morph& a, const Morph& b, cd s = 1.0) {
    Morph m = a;
    for (size_t k = 0; k < m.c.size(); ++k) m.c[k] += s * b.c[k];
    return m;
}

inline Morph morph_scale(const Morph& a, cd s) {
    Morph m = a;
    for (auto& x : m.c) x *= s;
    return m;
}

inline double morph_dist(const Morph& a, const Morph& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.c.size() != b.c.size())
        return std::numeric_limits<double>::infinity();
    double m = 0;
    for (size_t k = 0; k < a.c.size(); ++k) m = std::max(m, max_abs(Mat(a.c[k] - b.c[k])));
    return m;
}

inline Morph morph_col(const Morph& X, int i) {
    Morph m{X.rows, 1, {}};
    for (const auto& x : X.c) m.c.push_back(x.col(i));
    return m;
}

inline Vec morph_flatten(const Morph& m) {
    Vec v(m.c.size() * size_t(m.rows) * m.cols);
    size_t p = 0;
    for (const auto& x : m.c)
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) v(p++) = x(r, c);
    return v;
}

inline Morph morph_unflatten(const Vec& v, int rows, int cols, int K) {
    Morph m{rows, cols, std::vector<Mat>(K, Mat(rows, cols))};
    size_t p = 0;
    for (auto& x : m.c)
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) x(r, c) = v(p++);
    return m;
}

inline Morph morph_compose(const RegularYDAlgebra& K, const Morph& S, const Morph& T) {
    if (S.cols != T.rows) throw StructureError("morph_compose: shapes do not match");
    Morph m = morph_zero(K, S.rows, T.cols);
    for (int a = 0; a < K.dim; ++a) {
        if (max_abs(S.c[a]) == 0) continue;
        for (int b = 0; b < K.dim; ++b) {
            if (max_abs(T.c[b]) == 0) continue;
            Mat P = S.c[a] * T.c[b];
            for (const auto& t : K.mult[size_t(a) * K.dim + b]) m.c[t.k] += t.c * P;
        }
    }
    return m;
}

inline Morph morph_adjoint(const RegularYDAlgebra& K, const Morph& T) {
    Morph m = morph_zero(K, T.cols, T.rows);
    for (int k = 0; k < K.dim; ++k) {
        if (max_abs(T.c[k]) == 0) continue;
        Mat A = T.c[k].adjoint();
        for (int j = 0; j < K.dim; ++j)
            if (K.star(j, k) != cd(0)) m.c[j] += K.star(j, k) * A;
    }
    return m;
}

/** T (x) id_W, which is T_13. */
inline Morph morph_tensor_right(const Morph& T, int dW) {
    Morph m{T.rows * dW, T.cols * dW, {}};
    Mat I = Mat::Identity(dW, dW);
    for (const auto& x : T.c) m.c.push_back(kron(x, I));
    return m;
}

/** id_U (x) T = sum m_ij (x) T_l (x) (u_ij |> b_l). */
inline Morph morph_tensor_left(const RegularYDAlgebra& K, const Representation& U, const Morph& T) {
    Morph m = morph_zero(K, U.d * T.rows, U.d * T.cols);
    for (int l = 0; l < K.dim; ++l) {
        if (max_abs(T.c[l]) == 0) continue;
        for (int i = 0; i < U.d; ++i)
            for (int j = 0; j < U.d; ++j) {
                Vec a = K.act(U.at(i, j), K.e(l));
                for (int k = 0; k < K.dim; ++k) {
                    if (a(k) == cd(0)) continue;
                    m.c[k].block(i * T.rows, j * T.cols, T.rows, T.cols) += a(k) * T.c[l];
                }
            }
    }
    return m;
}

/** S (x) T = (S (x) id_Z)(id_U (x) T) for S: U -> V and T: W -> Z. */
inline Morph cb_tensor(const RegularYDAlgebra& K, const Representation& U, const Morph& S, const Morph& T) {
    return morph_compose(K, morph_tensor_right(S, T.rows), morph_tensor_left(K, U, T));
}

/** \brief Residual of V^*_12 (id (x) alpha)(T) U_12 = T_13, in the form
 *  alpha(t_ij) = sum_{k,l} v_ik u_jl^* (x) t_kl. */
inline double cb_residual(const RegularYDAlgebra& K, const Representation& U, const Representation& V, const Morph& T) {
    const HopfAlgebraData& H = K.G->cg;
    MaxAcc acc;
    for (int i = 0; i < V.d; ++i)
        for (int j = 0; j < U.d; ++j) {
            Vec t(K.dim);
            for (int k = 0; k < K.dim; ++k) t(k) = T.c[k](i, j);
            Mat r = K.coaction(t);
            for (int k = 0; k < V.d; ++k)
                for (int l = 0; l < U.d; ++l) {
                    Vec tk(K.dim);
                    for (int q = 0; q < K.dim; ++q) tk(q) = T.c[q](k, l);
                    if (max_abs(tk) == 0) continue;
                    r -= H.mul(V.at(i, k), H.adj(U.at(j, l))) * tk.transpose();
                }
            acc(max_abs(r));
        }
    return acc.v;
}

/** \brief Basis of C_K(U,V) = {T in B(H_U,H_V) (x) K : alpha(t_ij) = sum v_ik u_jl^* (x) t_kl}.
 *  The system splits along the classes of basis elements linked by the coaction. */
inline std::vector<Morph> cb_hom(const RegularYDAlgebra& K, const Representation& U, const Representation& V) {
    const HopfAlgebraData& H = K.G->cg;
    const int N = K.dim, dU = U.d, dV = V.d;
    std::vector<int> parent(N);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int a = 0; a < N; ++a)
        for (const auto& t : K.coact[a]) parent[find(a)] = find(t.k);
    std::vector<Vec> vu(size_t(dV) * dV * dU * dU);
    for (int i = 0; i < dV; ++i)
        for (int k = 0; k < dV; ++k)
            for (int j = 0; j < dU; ++j)
                for (int l = 0; l < dU; ++l)
                    vu[((size_t(i) * dV + k) * dU + j) * dU + l] = H.mul(V.at(i, k), H.adj(U.at(j, l)));
    std::vector<Morph> out;
    for (int root = 0; root < N; ++root) {
        if (find(root) != root) continue;
        std::vector<int> cls;
        for (int a = 0; a < N; ++a)
            if (find(a) == root) cls.push_back(a);
        const int m = int(cls.size());
        std::vector<int> pos(N, -1);
        for (int q = 0; q < m; ++q) pos[cls[q]] = q;
        // C[G] coordinates that can appear
        std::vector<char> used(H.dim, 0);
        for (int a : cls)
            for (const auto& t : K.coact[a]) used[t.j] = 1;
        for (const auto& v : vu)
            for (int x = 0; x < H.dim; ++x)
                if (v(x) != cd(0)) used[x] = 1;
        std::vector<int> sup;
        for (int x = 0; x < H.dim; ++x)
            if (used[x]) sup.push_back(x);
        std::vector<int> rowof(H.dim, -1);
        for (size_t q = 0; q < sup.size(); ++q) rowof[sup[q]] = int(q);
        const int S = int(sup.size());
        const int nun = dV * dU * m;
        Mat M = Mat::Zero(size_t(dV) * dU * S * m, nun);
        auto unk = [&](int i, int j, int q) { return (i * dU + j) * m + q; };
        for (int i = 0; i < dV; ++i)
            for (int j = 0; j < dU; ++j) {
                size_t base = size_t(i * dU + j) * S * m;
                for (int q = 0; q < m; ++q)
                    for (const auto& t : K.coact[cls[q]])
                        M(base + size_t(rowof[t.j]) * m + pos[t.k], unk(i, j, q)) += t.c;
                for (int k = 0; k < dV; ++k)
                    for (int l = 0; l < dU; ++l) {
                        const Vec& v = vu[((size_t(i) * dV + k) * dU + j) * dU + l];
                        for (int x = 0; x < H.dim; ++x) {
                            if (v(x) == cd(0)) continue;
                            for (int q = 0; q < m; ++q) M(base + size_t(rowof[x]) * m + q, unk(k, l, q)) -= v(x);
                        }
                    }
            }
        Mat Z = null_space(M);
        for (int c = 0; c < Z.cols(); ++c) {
            Morph T = morph_zero(K, dV, dU);
            for (int i = 0; i < dV; ++i)
                for (int j = 0; j < dU; ++j)
                    for (int q = 0; q < m; ++q) T.c[cls[q]](i, j) = Z(unk(i, j, q), c);
            out.push_back(T);
        }
    }
    return out;
}

/** \brief Conjugate data for an arbitrary (reducible) object, assembled from the table:
 *  rho_U = sum_k w_k rho_{s_k} w_k^*. */
inline ConjugateData object_conjugate(const QuantumGroup& G, const Representation& U) {
    Fusion f = decompose_in_table(G.table, U);
    ConjugateData c;
    c.rho = Mat::Zero(U.d, U.d);
    for (size_t k = 0; k < f.labels.size(); ++k)
        c.rho += f.isometries[k] * G.table.conj[f.labels[k]].rho * f.isometries[k].adjoint();
    c.rho = (c.rho + c.rho.adjoint()).eval() / 2.0;
    c.conj_rep = conjugate_rep(G.cg, U, c.rho);
    c.R = R_vector(c.rho);
    c.Rbar = Rbar_vector(c.rho);
    c.qdim = c.rho.trace().real();
    return c;
}

/** \brief A C*-tensor category over Rep G given by its morphism spaces between
 *  representations, with coefficients in a YD algebra K (K = C for the concrete kinds). */
struct CategoryProvider {
    enum class Kind { Rep, Fiber, Sub, CB };
    Kind kind = Kind::Rep;
    std::string name;
    QG G;
    YD K;
    Mat p;  // restriction C[G] -> C[H] for Kind::Sub

    std::vector<Morph> hom(const Representation& U, const Representation& V) const {
        std::vector<Morph> out;
        switch (kind) {
            case Kind::Rep:
                for (const auto& T : intertwiner_space(U, V)) out.push_back(morph_scalar(*K, T));
                break;
            case Kind::Fiber:
                for (int i = 0; i < V.d; ++i)
                    for (int j = 0; j < U.d; ++j) {
                        Mat T = Mat::Zero(V.d, U.d);
                        T(i, j) = 1.0;
                        out.push_back(morph_scalar(*K, T));
                    }
                break;
            case Kind::Sub:
                for (const auto& T : intertwiner_space(map_coefficients(U, p), map_coefficients(V, p)))
                    out.push_back(morph_scalar(*K, T));
                break;
            case Kind::CB:
                out = cb_hom(*K, U, V);
                break;
        }
        return out;
    }

    /** Distance of T from the declared morphism space. */
    double membership_residual(const Representation& U, const Representation& V, const Morph& T) const {
        switch (kind) {
            case Kind::Rep:
                return intertwiner_residual(U, V, T.c[0]);
            case Kind::Fiber:
                return 0.0;
            case Kind::Sub:
                return intertwiner_residual(map_coefficients(U, p), map_coefficients(V, p), T.c[0]);
            case Kind::CB:
                return cb_residual(*K, U, V, T);
        }
        return 0.0;
    }
};

inline CategoryProvider provider_rep(QG G) {
    return CategoryProvider{CategoryProvider::Kind::Rep, "Rep " + G->name, G,
                            std::make_shared<const RegularYDAlgebra>(trivial_yd(G)), Mat()};
}

inline CategoryProvider provider_fiber(QG G) {
    return CategoryProvider{CategoryProvider::Kind::Fiber, "fiber functor on Rep " + G->name, G,
                            std::make_shared<const RegularYDAlgebra>(trivial_yd(G)), Mat()};
}

/** Rep H for a quantum subgroup given by the restriction p: C[G] -> C[H]. */
inline CategoryProvider provider_sub(QG G, const Mat& p, const std::string& hname) {
    return CategoryProvider{CategoryProvider::Kind::Sub, "Rep " + hname, G,
                            std::make_shared<const RegularYDAlgebra>(trivial_yd(G)), p};
}

inline CategoryProvider provider_cb(YD K) {
    return CategoryProvider{CategoryProvider::Kind::CB, "C_B for " + K->name, K->G, K, Mat()};
}

/** \brief One summand xi-bar (x) T of the universal algebra, stored as the matrix X whose
 *  column i is the morphism 1 -> obj paired with conj(xi_i). */
struct UniversalPiece {
    Representation obj;
    Morph X;
};
using UniversalElement = std::vector<UniversalPiece>;

inline UniversalPiece piece_from(const Representation& obj, const Vec& xi, const Morph& T, const RegularYDAlgebra& K) {
    // conj(xi) (x) T with xi = sum xi_i e_i gives column i = conj(xi_i) T
    Morph X = morph_zero(K, obj.d, obj.d);
    for (int i = 0; i < obj.d; ++i)
        for (int k = 0; k < K.dim; ++k) X.c[k].col(i) = std::conj(xi(i)) * T.c[k].col(0);
    return UniversalPiece{obj, X};
}

/** (xi-bar (x) T)(zeta-bar (x) S) = conj(xi (x) zeta) (x) (T (x) id) S. */
inline UniversalElement universal_product(const UniversalElement& x, const UniversalElement& y,
                                          const CategoryProvider& P) {
    const RegularYDAlgebra& K = *P.K;
    UniversalElement out;
    for (const auto& a : x)
        for (const auto& b : y) {
            UniversalPiece p{tensor(P.G->cg, a.obj, b.obj), morph_zero(K, a.obj.d * b.obj.d, a.obj.d * b.obj.d)};
            for (int i = 0; i < a.obj.d; ++i) {
                Morph Ti = morph_tensor_right(morph_col(a.X, i), b.obj.d);
                for (int j = 0; j < b.obj.d; ++j) {
                    Morph c = morph_compose(K, Ti, morph_col(b.X, j));
                    for (int k = 0; k < K.dim; ++k) p.X.c[k].col(i * b.obj.d + j) = c.c[k].col(0);
                }
            }
            out.push_back(std::move(p));
        }
    return out;
}

/** Antilinear map (xi-bar (x) T) -> conj-conj(rho^{-1/2} xi) (x) (T^* (x) id) Rbar_U on conj(U). */
inline UniversalElement star_bullet(const UniversalElement& x, const CategoryProvider& P) {
    const RegularYDAlgebra& K = *P.K;
    UniversalElement out;
    for (const auto& a : x) {
        ConjugateData cj = object_conjugate(*P.G, a.obj);
        const int d = a.obj.d;
        Mat rm = hermitian_power(cj.rho, -0.5);
        Morph rbar = morph_scalar(K, Mat(cj.Rbar));
        UniversalPiece p{cj.conj_rep, morph_zero(K, d, d)};
        for (int i = 0; i < d; ++i) {
            Morph s = morph_compose(K, morph_tensor_right(morph_adjoint(K, morph_col(a.X, i)), d), rbar);
            for (int k = 0; k < K.dim; ++k)
                for (int c = 0; c < d; ++c) p.X.c[k].col(c) += rm(c, i) * s.c[k].col(0);
        }
        out.push_back(std::move(p));
    }
    return out;
}

/** \brief B = sum_s conj(H_s) (x) hom(1, U_s) assembled from a provider, with the projection
 *  pi from the universal algebra, and the resulting YD algebra structure. */
struct CategoricalYD {
    CategoryProvider P;
    RegularYDAlgebra alg;
    std::vector<std::vector<Morph>> hom1;
    std::vector<int> offset;
    std::vector<Mat> solve;
    PeterWeyl pw;
    double coord_defect = 0.0;  // largest distance of a projected column from hom(1,U_s)

    int index(int s, int i, int l) const { return offset[s] + i * int(hom1[s].size()) + l; }

    Vec coords(int s, const Morph& T, double* defect = nullptr) const {
        const int m = int(hom1[s].size());
        Vec v = morph_flatten(T);
        if (m == 0) {
            if (defect) *defect = std::max(*defect, max_abs(v));
            return Vec::Zero(0);
        }
        Vec c = solve[s] * v;
        if (defect) {
            Vec r = -v;
            for (int l = 0; l < m; ++l) r += c(l) * morph_flatten(hom1[s][l]);
            *defect = std::max(*defect, max_abs(r));
        }
        return c;
    }

    /** pi of one piece, using the given decomposition of its object. */
    Vec project_piece(const UniversalPiece& x, const Fusion& f, double* defect = nullptr) const {
        const RegularYDAlgebra& K = *P.K;
        Vec out = Vec::Zero(alg.dim);
        for (size_t w = 0; w < f.labels.size(); ++w) {
            const int r = f.labels[w];
            const Mat& iso = f.isometries[w];
            const int dr = int(iso.cols());
            Morph Y = morph_zero(K, dr, dr);
            for (int k = 0; k < K.dim; ++k) Y.c[k] = iso.adjoint() * x.X.c[k] * iso;
            for (int a = 0; a < dr; ++a) {
                Vec c = coords(r, morph_col(Y, a), defect);
                for (int l = 0; l < c.size(); ++l) out(index(r, a, l)) += c(l);
            }
        }
        return out;
    }

    /** \brief pi: universal algebra -> B. A nonzero seed mixes each isotypic component by a
     *  random unitary before projecting, which must not change the result. */
    Vec project_pi(const UniversalElement& x, uint64_t seed = 0, double* defect = nullptr) const {
        Vec out = Vec::Zero(alg.dim);
        for (const auto& p : x) out += project_piece(p, decompose_in_table(P.G->table, p.obj, seed), defect);
        return out;
    }

    /** Basis element (s,i,l) as a universal element conj(xi_i) (x) T_l on U_s. */
    UniversalElement basis_element(int s, int i, int l) const {
        const auto& U = P.G->table.irreps[s];
        return {piece_from(U, unit_vec(U.d, i), hom1[s][l], *P.K)};
    }

    UniversalElement lift(const Vec& b) const {
        UniversalElement out;
        const auto& T = P.G->table;
        for (int s = 0; s < T.size(); ++s) {
            const int m = int(hom1[s].size());
            if (m == 0) continue;
            UniversalPiece p{T.irreps[s], morph_zero(*P.K, T.dim(s), T.dim(s))};
            for (int i = 0; i < T.dim(s); ++i)
                for (int l = 0; l < m; ++l) {
                    cd c = b(index(s, i, l));
                    if (c == cd(0)) continue;
                    for (int k = 0; k < P.K->dim; ++k) p.X.c[k].col(i) += c * hom1[s][l].c[k].col(0);
                }
            out.push_back(std::move(p));
        }
        return out;
    }
};

/** \brief u^r_ij |> b via (xi-bar (x) zeta) |>~ (eta-bar (x) T) = conj(xi (x) eta (x) conj(rho^{-1/2} zeta))
 *  (x) (id (x) T (x) id) Rbar_U followed by pi, for x given in C[G] coordinates. */
inline Vec module_action_rhd(const CategoricalYD& C, const Vec& x, const Vec& b) {
    const auto& G = *C.P.G;
    const auto& T = G.table;
    const RegularYDAlgebra& K = *C.P.K;
    Vec xpw = C.pw.coords * x;
    Vec out = Vec::Zero(C.alg.dim);
    for (int q = 0; q < xpw.size(); ++q) {
        if (std::abs(xpw(q)) < 1e-14) continue;
        const int r = C.pw.block[q], i = C.pw.row[q], j = C.pw.col[q];
        if (r >= T.size()) throw TruncationExceeded(r, T.level2);
        const auto& Ur = T.irreps[r];
        const auto& cj = T.conj[r];
        const int dr = Ur.d;
        Mat rm = hermitian_power(cj.rho, -0.5);
        Morph rbar = morph_scalar(K, Mat(cj.Rbar));
        for (int s = 0; s < T.size(); ++s) {
            const int m = int(C.hom1[s].size());
            const int ds = T.dim(s);
            bool touched = false;
            for (int k = 0; k < ds && !touched; ++k)
                for (int l = 0; l < m; ++l)
                    if (b(C.index(s, k, l)) != cd(0)) touched = true;
            if (!touched) continue;
            Representation W = tensor(G.cg, tensor(G.cg, Ur, T.irreps[s]), cj.conj_rep);
            Fusion f = decompose_in_table(T, W);
            for (int k = 0; k < ds; ++k)
                for (int l = 0; l < m; ++l) {
                    cd c = b(C.index(s, k, l));
                    if (c == cd(0)) continue;
                    Morph M = morph_compose(K, morph_tensor_right(morph_tensor_left(K, Ur, C.hom1[s][l]), dr), rbar);
                    UniversalPiece p{W, morph_zero(K, W.d, W.d)};
                    for (int cc = 0; cc < dr; ++cc) {
                        cd coef = rm(cc, j);
                        if (coef == cd(0)) continue;
                        int colx = (i * ds + k) * dr + cc;
                        for (int kk = 0; kk < K.dim; ++kk) p.X.c[kk].col(colx) = coef * M.c[kk].col(0);
                    }
                    out += xpw(q) * c * C.project_piece(p, f);
                }
        }
    }
    return out;
}

/** \brief Builds B from a category provider: basis (s, i, l) = conj(xi_i) (x) T_l with T_l a
 *  basis of hom(1, U_s); product, involution, coaction and action go through pi. */
inline CategoricalYD build_yd_from_category(const CategoryProvider& P) {
    const auto& G = *P.G;
    const auto& T = G.table;
    const RegularYDAlgebra& K = *P.K;
    CategoricalYD C;
    C.P = P;
    C.pw = peter_weyl(G);
    Representation one = trivial_rep(G.cg);
    int N = 0;
    for (int s = 0; s < T.size(); ++s) {
        C.hom1.push_back(P.hom(one, T.irreps[s]));
        C.offset.push_back(N);
        const int m = int(C.hom1[s].size());
        N += T.dim(s) * m;
        if (m) {
            Mat B(size_t(T.dim(s)) * K.dim, m);
            for (int l = 0; l < m; ++l) B.col(l) = morph_flatten(C.hom1[s][l]);
            C.solve.push_back((B.adjoint() * B).inverse() * B.adjoint());
        } else {
            C.solve.push_back(Mat());
        }
    }
    RegularYDAlgebra& A = C.alg;
    A.G = P.G;
    A.name = "B(" + P.name + ")";
    A.dim = N;
    for (int s = 0; s < T.size(); ++s)
        for (int i = 0; i < T.dim(s); ++i)
            for (size_t l = 0; l < C.hom1[s].size(); ++l)
                A.labels.push_back(T.labels[s] + "_" + std::to_string(i) + "_" + std::to_string(l));
    A.mult.assign(size_t(N) * N, {});
    A.star = Mat::Zero(N, N);
    A.coact.assign(N, {});
    // so that the structure maps of B itself are never consulted while building it
    A.unit = Vec::Zero(N);
    double& defect = C.coord_defect;

    std::vector<std::array<int, 3>> basis;
    for (int s = 0; s < T.size(); ++s)
        for (int i = 0; i < T.dim(s); ++i)
            for (size_t l = 0; l < C.hom1[s].size(); ++l) basis.push_back({s, i, int(l)});

    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            auto [s, i, l] = basis[a];
            auto [t, j, m] = basis[b];
            auto prod = universal_product(C.basis_element(s, i, l), C.basis_element(t, j, m), P);
            Vec v = C.project_piece(prod[0], G.fusion(s, t), &defect);
            for (int k = 0; k < N; ++k)
                if (std::abs(v(k)) > 1e-14) A.mult[size_t(a) * N + b].push_back({k, v(k)});
        }
    // unit: conj(xi_0) (x) id_1 on the trivial object
    {
        UniversalElement u{{one, morph_scalar(K, Mat::Ones(1, 1))}};
        A.unit = C.project_pi(u, 0, &defect);
    }
    std::vector<Fusion> conj_fusion;
    for (int s = 0; s < T.size(); ++s) conj_fusion.push_back(decompose_in_table(T, T.conj[s].conj_rep));
    for (int a = 0; a < N; ++a) {
        auto [s, i, l] = basis[a];
        auto st = star_bullet(C.basis_element(s, i, l), P);
        // the table's conjugate representation is used for the decomposition
        A.star.col(a) = C.project_piece(st[0], conj_fusion[s], &defect);
    }
    for (int a = 0; a < N; ++a) {
        auto [s, i, l] = basis[a];
        for (int j = 0; j < T.dim(s); ++j) {
            const Vec& u = T.irreps[s].at(i, j);
            for (int x = 0; x < G.cg.dim; ++x)
                if (std::abs(u(x)) > 1e-14) A.coact[a].push_back({x, C.index(s, j, l), u(x)});
        }
    }
    A.act_op.assign(G.cg.dim, Mat::Zero(N, N));
    for (int p = 0; p < G.cg.dim; ++p)
        for (int a = 0; a < N; ++a) A.act_op[p].col(a) = module_action_rhd(C, G.cg.e(p), A.e(a));
    return C;
}

/** \brief Image of T in hom_P(U,V) in C_B(U,V), B = C.alg:
 *  sum theta_{zeta_j, xi_i} (x) pi(conj(zeta_j (x) conj(rho^{-1/2} xi_i)) (x) (T (x) id) Rbar_U). */
inline Morph equivalence_image(const CategoricalYD& C, const Representation& U, const Representation& V,
                               const Morph& T, const ConjugateData& cu, const Fusion& fvu) {
    const RegularYDAlgebra& K = *C.P.K;
    const int dU = U.d, dV = V.d;
    Mat rm = hermitian_power(cu.rho, -0.5);
    Morph S = morph_compose(K, morph_tensor_right(T, dU), morph_scalar(K, Mat(cu.Rbar)));
    Morph out = morph_zero(C.alg, dV, dU);
    for (int j = 0; j < dV; ++j)
        for (int i = 0; i < dU; ++i) {
            UniversalPiece p{Representation{}, morph_zero(K, dV * dU, dV * dU)};
            for (int c = 0; c < dU; ++c) {
                cd coef = rm(c, i);
                if (coef == cd(0)) continue;
                for (int k = 0; k < K.dim; ++k) p.X.c[k].col(j * dU + c) = coef * S.c[k].col(0);
            }
            Vec b = C.project_piece(p, fvu);
            for (int k = 0; k < C.alg.dim; ++k) out.c[k](j, i) = b(k);
        }
    return out;
}

struct EquivalenceData {
    std::vector<Morph> source, images;
    int dim_source = 0, dim_target = 0, rank = 0;
    double membership = 0.0;
    bool bijective() const { return dim_source == dim_target && rank == dim_source; }
};

inline EquivalenceData equivalence_hom_map(const CategoricalYD& C, const Representation& U, const Representation& V) {
    EquivalenceData e;
    const auto& G = *C.P.G;
    ConjugateData cu = object_conjugate(G, U);
    Fusion f = decompose_in_table(G.table, tensor(G.cg, V, cu.conj_rep));
    e.source = C.P.hom(U, V);
    e.dim_source = int(e.source.size());
    MaxAcc acc;
    for (const auto& T : e.source) {
        e.images.push_back(equivalence_image(C, U, V, T, cu, f));
        acc(cb_residual(C.alg, U, V, e.images.back()));
    }
    e.membership = acc.v;
    e.dim_target = int(cb_hom(C.alg, U, V).size());
    if (!e.images.empty()) {
        Mat F(morph_flatten(e.images[0]).size(), e.images.size());
        for (size_t c = 0; c < e.images.size(); ++c) F.col(c) = morph_flatten(e.images[c]);
        e.rank = matrix_rank(F, 1e-9);
    }
    return e;
}

/** Notes a non-simple unit: hom(1,U) coordinates then come from the Gram pseudo-inverse,
 *  not from an orthonormalization. */
inline void note_unit_dimension(const CategoricalYD& C, ValidationReport& rep) {
    const size_t m = C.hom1.empty() ? 0 : C.hom1[0].size();
    if (m > 1)
        rep.notes.push_back("non-simple unit: dim End(1) = " + std::to_string(m) +
                            "; hom(1,U) coordinates use the Gram pseudo-inverse, no orthonormalization");
}

/** \brief Bijectivity, composition and strict-tensor checks of the hom-space equivalence on
 *  all ordered pairs of the given objects. */
inline ValidationReport check_equivalence(const CategoricalYD& C, const std::vector<Representation>& objs, double tol,
                                          uint64_t seed = 7) {
    ValidationReport rep;
    rep.seed = seed;
    const auto& G = *C.P.G;
    const RegularYDAlgebra& K = *C.P.K;
    MaxAcc memb, comp, tens_l, tens_r;
    long bad = 0, pairs = 0;
    auto image = [&](const Representation& U, const Representation& V, const Morph& T) {
        ConjugateData cu = object_conjugate(G, U);
        Fusion f = decompose_in_table(G.table, tensor(G.cg, V, cu.conj_rep));
        return equivalence_image(C, U, V, T, cu, f);
    };
    Rng rng(seed);
    for (const auto& U : objs)
        for (const auto& V : objs) {
            EquivalenceData e = equivalence_hom_map(C, U, V);
            ++pairs;
            memb(e.membership);
            if (!e.bijective()) {
                ++bad;
                rep.notes.push_back("not bijective on (" + U.label + "," + V.label + "): source " +
                                    std::to_string(e.dim_source) + ", target " + std::to_string(e.dim_target) +
                                    ", rank " + std::to_string(e.rank));
            }
            if (e.source.empty()) continue;
            // composition with a morphism V -> U
            for (const auto& S : C.P.hom(V, U)) {
                Morph ST = morph_compose(K, S, e.source[0]);
                Morph lhs = image(U, U, ST);
                Morph rhs = morph_compose(C.alg, image(V, U, S), e.images[0]);
                comp(morph_dist(lhs, rhs));
                break;
            }
            // id_W (x) T and T (x) id_W against the tensor rules of C_B
            for (const auto& W : objs) {
                const Morph& T = e.source[std::uniform_int_distribution<int>(0, e.dim_source - 1)(rng)];
                const Morph& IT = e.images[&T - &e.source[0]];
                Representation WU = tensor(G.cg, W, U), WV = tensor(G.cg, W, V);
                Morph lhs = image(WU, WV, morph_tensor_left(K, W, T));
                Morph rhs = morph_tensor_left(C.alg, W, IT);
                tens_l(morph_dist(lhs, rhs));
                Representation UW = tensor(G.cg, U, W), VW = tensor(G.cg, V, W);
                Morph lhs2 = image(UW, VW, morph_tensor_right(T, W.d));
                Morph rhs2 = morph_tensor_right(IT, W.d);
                tens_r(morph_dist(lhs2, rhs2));
            }
        }
    rep.add("image_in_cb_hom", memb.v, tol);
    Check& b = rep.add("bijective_pairs_failed", double(bad), 0.0);
    b.evaluated = pairs;
    rep.add("composition", comp.v, tol);
    rep.add("strict_tensor_left", tens_l.v, tol);
    rep.add("strict_tensor_right", tens_r.v, tol);
    note_unit_dimension(C, rep);
    return rep;
}

/** \brief lambda(pi(conj(zeta) (x) T)) = (conj(zeta) (x) id)(T) from B_{C_A} to A. */
struct RoundtripData {
    std::shared_ptr<CategoricalYD> cat;
    Mat lambda;  // A.dim x cat->alg.dim
    ValidationReport report;
};

inline RoundtripData roundtrip_lambda(YD A, double tol, uint64_t seed = 7) {
    RoundtripData R;
    R.cat = std::make_shared<CategoricalYD>(build_yd_from_category(provider_cb(A)));
    const CategoricalYD& C = *R.cat;
    const RegularYDAlgebra& B = C.alg;
    const int N = A->dim, M = B.dim;
    const auto& T = A->G->table;
    R.lambda = Mat::Zero(N, M);
    for (int s = 0; s < T.size(); ++s)
        for (int i = 0; i < T.dim(s); ++i)
            for (size_t l = 0; l < C.hom1[s].size(); ++l)
                for (int k = 0; k < N; ++k) R.lambda(k, C.index(s, i, int(l))) = C.hom1[s][l].c[k](i, 0);
    const Mat& L = R.lambda;
    ValidationReport& rep = R.report;
    rep.seed = seed;
    rep.add("coordinate_defect", C.coord_defect, tol);
    int rank = matrix_rank(L, 1e-9);
    Check& rk = rep.add("rank_deficiency", double(std::max(N, M) - rank), 0.0);
    rk.evaluated = 1;
    rep.notes.push_back("dim A = " + std::to_string(N) + ", dim B_{C_A} = " + std::to_string(M) + ", rank = " +
                        std::to_string(rank));
    note_unit_dimension(C, rep);
    if (rank < M) {
        Mat Z = null_space(L);
        std::ostringstream os;
        os << "counterexample: nonzero element of B_{C_A} in the kernel of lambda, coordinates " << Z.col(0).transpose();
        rep.notes.push_back(os.str());
    }
    Rng rng(seed);
    const auto& H = A->G->cg;
    detail::run_tuples(rep, "multiplicative", tol, {M, M}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(L * B.mul(B.e(t[0]), B.e(t[1])) - A->mul(L.col(t[0]), L.col(t[1]))));
    });
    detail::run_tuples(rep, "unital", tol, {1}, rng, [&](const std::vector<int>&) {
        return max_abs(Vec(L * B.unit - A->unit));
    });
    detail::run_tuples(rep, "star", tol, {M}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(L * B.adj(B.e(t[0])) - A->adj(L.col(t[0]))));
    });
    detail::run_tuples(rep, "coaction_equivariant", tol, {M}, rng, [&](const std::vector<int>& t) {
        return max_abs(Mat(B.coaction(B.e(t[0])) * L.transpose() - A->coaction(L.col(t[0]))));
    });
    detail::run_tuples(rep, "action_equivariant", tol, {H.dim, M}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(L * B.act(H.e(t[0]), B.e(t[1])) - A->act(H.e(t[0]), L.col(t[1]))));
    });
    return R;
}

/** \brief Module-category unitary T_{U,V}: (zeta (x) b) (x) (xi_j (x) a) -> sum_i xi_i (x) zeta (x) (u_ij |> b) a,
 *  from (H_V (x) B) (x)_B (H_U (x) B) to H_U (x) H_V (x) B, with balancing, inner products,
 *  equivariance and the coherence identity checked. */
struct ModuleTensorData {
    Mat T;  // rows (i*dV + k)*N + x, columns ((k*N + p)*dU + j)*N + q
    ValidationReport report;
};

namespace detail {

/** T_{U,V}((zeta_k (x) b) (x) (xi_j (x) a)) as coefficients over (i, k, B). */
inline Vec module_tensor_apply(const RegularYDAlgebra& A, const Representation& U, int dV, int k, const Vec& b, int j,
                               const Vec& a) {
    const int N = A.dim;
    Vec out = Vec::Zero(size_t(U.d) * dV * N);
    for (int i = 0; i < U.d; ++i) out.segment((size_t(i) * dV + k) * N, N) = A.mul(A.act(U.at(i, j), b), a);
    return out;
}

}  // namespace detail

inline ModuleTensorData module_tensor_unitary(const RegularYDAlgebra& A, const Representation& U,
                                              const Representation& V, const Representation* W, double tol,
                                              uint64_t seed = 7) {
    const HopfAlgebraData& H = A.G->cg;
    const int N = A.dim, dU = U.d, dV = V.d, n = H.dim;
    ModuleTensorData out;
    out.T = Mat::Zero(size_t(dU) * dV * N, size_t(dV) * N * dU * N);
    auto colidx = [&](int k, int p, int j, int q) { return ((size_t(k) * N + p) * dU + j) * N + q; };
    for (int k = 0; k < dV; ++k)
        for (int p = 0; p < N; ++p)
            for (int j = 0; j < dU; ++j)
                for (int q = 0; q < N; ++q)
                    out.T.col(colidx(k, p, j, q)) = detail::module_tensor_apply(A, U, dV, k, A.e(p), j, A.e(q));
    ValidationReport& rep = out.report;
    rep.seed = seed;
    Rng rng(seed);
    InducedAction piU = induced_module_action(A, U, tol, seed);
    // balancing: T((zeta (x) b c) (x) eta) = T((zeta (x) b) (x) pi_U(c) eta)
    detail::run_tuples(rep, "balanced", tol, {dV, N, N, dU, N}, rng, [&](const std::vector<int>& t) {
        const int k = t[0], p = t[1], c = t[2], j = t[3], q = t[4];
        Vec lhs = out.T * kron(kron(kron(unit_vec(dV, k), A.mul(A.e(p), A.e(c))), unit_vec(dU, j)), A.e(q));
        Vec eta = piU.pi[c].col(j * N + q);
        Vec rhs = out.T * kron(kron(unit_vec(dV, k), A.e(p)), eta);
        return max_abs(Vec(lhs - rhs));
    });
    // B-valued inner products: <(zeta (x) b) (x) eta, (zeta' (x) b') (x) eta'> = <eta, pi_U((zeta',zeta) b^* b') eta'>
    auto ip_target = [&](const Vec& x, const Vec& y) {
        Vec r = Vec::Zero(N);
        for (int s = 0; s < dU * dV; ++s) r += A.mul(A.adj(x.segment(size_t(s) * N, N)), y.segment(size_t(s) * N, N));
        return r;
    };
    detail::run_tuples(rep, "inner_product_preserved", tol, {dV, N, dU, N, dV, N, dU, N}, rng,
                       [&](const std::vector<int>& t) {
                           const int k = t[0], p = t[1], j = t[2], q = t[3], k2 = t[4], p2 = t[5], j2 = t[6], q2 = t[7];
                           Vec src = Vec::Zero(N);
                           if (k == k2) {
                               Vec c = A.mul(A.adj(A.e(p)), A.e(p2));
                               Vec eta = Vec::Zero(dU * N);
                               for (int m = 0; m < N; ++m)
                                   if (c(m) != cd(0)) eta += c(m) * piU.pi[m].col(j2 * N + q2);
                               src = A.mul(A.adj(A.e(q)), eta.segment(j * N, N));
                           }
                           Vec tgt = ip_target(out.T.col(colidx(k, p, j, q)), out.T.col(colidx(k2, p2, j2, q2)));
                           return max_abs(Vec(src - tgt));
                       });
    int rk = matrix_rank(out.T, 1e-9);
    Check& sur = rep.add("range_deficiency", double(dU * dV * N - rk), 0.0);
    sur.evaluated = 1;
    // equivariance for delta(zeta_k (x) b) = sum v_kl^* b_(1) (x) zeta_l (x) b_(2) and the tensor comodules
    std::vector<Mat> alpha(N);
    for (int a = 0; a < N; ++a) alpha[a] = A.coaction(A.e(a));
    auto delta_target = [&](const Vec& y) {
        // y over (i, k, B): coefficient of xi_i (x) zeta_k; (u_ij v_kl)^* = v_kl^* u_ij^*
        Mat out2 = Mat::Zero(n, size_t(dU) * dV * N);
        for (int i = 0; i < dU; ++i)
            for (int k = 0; k < dV; ++k) {
                Mat Y = A.coaction(y.segment((size_t(i) * dV + k) * N, N));
                if (max_abs(Y) == 0) continue;
                for (int j = 0; j < dU; ++j)
                    for (int l = 0; l < dV; ++l) {
                        Vec f = H.mul(H.adj(V.at(k, l)), H.adj(U.at(i, j)));
                        for (int x = 0; x < n; ++x)
                            for (int m = 0; m < N; ++m)
                                if (Y(x, m) != cd(0))
                                    out2.col((size_t(j) * dV + l) * N + m) += Y(x, m) * H.mul(f, H.e(x));
                    }
            }
        return out2;
    };
    detail::run_tuples(rep, "equivariant", tol, {dV, N, dU, N}, rng, [&](const std::vector<int>& t) {
        const int k = t[0], p = t[1], j = t[2], q = t[3];
        Mat lhs = delta_target(out.T.col(colidx(k, p, j, q)));
        Mat rhs = Mat::Zero(n, size_t(dU) * dV * N);
        const Mat& Xb = alpha[p];
        const Mat& Xa = alpha[q];
        for (int l = 0; l < dV; ++l) {
            Vec vk = H.adj(V.at(k, l));
            for (int m = 0; m < dU; ++m) {
                Vec uj = H.adj(U.at(j, m));
                for (int x1 = 0; x1 < n; ++x1)
                    for (int p2 = 0; p2 < N; ++p2) {
                        if (Xb(x1, p2) == cd(0)) continue;
                        Vec f1 = H.mul(H.mul(vk, H.e(x1)), uj);
                        for (int x2 = 0; x2 < n; ++x2)
                            for (int q2 = 0; q2 < N; ++q2) {
                                if (Xa(x2, q2) == cd(0)) continue;
                                Vec f = H.mul(f1, H.e(x2));
                                rhs += Xb(x1, p2) * Xa(x2, q2) * f * out.T.col(colidx(l, p2, m, q2)).transpose();
                            }
                    }
            }
        }
        return max_abs(Mat(lhs - rhs));
    });
    if (W) {
        const int dW = W->d;
        Representation UV = tensor(H, U, V), VW = tensor(H, V, *W);
        detail::run_tuples(rep, "coherence", tol, {dW, N, dV, N, dU, N}, rng, [&](const std::vector<int>& t) {
            const int m = t[0], p = t[1], k = t[2], c = t[3], j = t[4], q = t[5];
            // T_{U(x)V,W}(id (x) T_{U,V})
            Vec inner = detail::module_tensor_apply(A, U, dV, k, A.e(c), j, A.e(q));
            Vec lhs = Vec::Zero(size_t(dU) * dV * dW * N);
            for (int i = 0; i < dU; ++i) {
                Vec x = inner.segment((size_t(i) * dV + k) * N, N);
                lhs += detail::module_tensor_apply(A, UV, dW, m, A.e(p), i * dV + k, x);
            }
            // T_{U,V(x)W}(T_{V,W} (x) id)
            Vec vw = detail::module_tensor_apply(A, V, dW, m, A.e(p), k, A.e(c));
            Vec rhs = Vec::Zero(size_t(dU) * dV * dW * N);
            for (int k2 = 0; k2 < dV; ++k2) {
                Vec y = vw.segment((size_t(k2) * dW + m) * N, N);
                rhs += detail::module_tensor_apply(A, U, dV * dW, k2 * dW + m, y, j, A.e(q));
            }
            return max_abs(Vec(lhs - rhs));
        });
        (void)VW;
    }
    return out;
}

/** \brief Functor C_{A0} -> C_{A1} induced by an equivariant *-homomorphism f (dim A1 x dim A0). */
struct PushforwardData {
    bool accepted = false;
    ValidationReport equivariance;  // refusal reasons when not accepted
    ValidationReport report;
    bool all_injective = true, all_surjective = true;
    bool f_injective = false, f_surjective = false;
};

inline Morph morph_map(const Mat& f, const Morph& T, int dim1) {
    Morph m{T.rows, T.cols, std::vector<Mat>(dim1, Mat::Zero(T.rows, T.cols))};
    for (size_t k = 0; k < T.c.size(); ++k)
        for (int j = 0; j < dim1; ++j)
            if (f(j, k) != cd(0)) m.c[j] += f(j, k) * T.c[k];
    return m;
}

inline PushforwardData pushforward(const RegularYDAlgebra& A0, const RegularYDAlgebra& A1, const Mat& f,
                                   const std::vector<Representation>& objs, double tol, uint64_t seed = 7) {
    PushforwardData P;
    const HopfAlgebraData& H = A0.G->cg;
    const int N0 = A0.dim;
    ValidationReport& eq = P.equivariance;
    Rng rng(seed);
    detail::run_tuples(eq, "multiplicative", tol, {N0, N0}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(f * A0.mul(A0.e(t[0]), A0.e(t[1])) - A1.mul(f.col(t[0]), f.col(t[1]))));
    });
    detail::run_tuples(eq, "unital", tol, {1}, rng, [&](const std::vector<int>&) {
        return max_abs(Vec(f * A0.unit - A1.unit));
    });
    detail::run_tuples(eq, "star", tol, {N0}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(f * A0.adj(A0.e(t[0])) - A1.adj(f.col(t[0]))));
    });
    detail::run_tuples(eq, "coaction_equivariant", tol, {N0}, rng, [&](const std::vector<int>& t) {
        return max_abs(Mat(A0.coaction(A0.e(t[0])) * f.transpose() - A1.coaction(f.col(t[0]))));
    });
    detail::run_tuples(eq, "action_equivariant", tol, {H.dim, N0}, rng, [&](const std::vector<int>& t) {
        return max_abs(Vec(f * A0.act(H.e(t[0]), A0.e(t[1])) - A1.act(H.e(t[0]), f.col(t[1]))));
    });
    P.accepted = eq.passed();
    if (!P.accepted) {
        for (const auto& c : eq.checks)
            if (!c.passed()) eq.notes.push_back("refused: f violates " + c.name);
        return P;
    }
    int rk = matrix_rank(f, 1e-9);
    P.f_injective = rk == N0;
    P.f_surjective = rk == A1.dim;
    ValidationReport& rep = P.report;
    rep.seed = seed;
    MaxAcc memb, comp, tens;
    for (const auto& U : objs)
        for (const auto& V : objs) {
            auto B0 = cb_hom(A0, U, V);
            auto B1 = cb_hom(A1, U, V);
            if (B0.empty()) {
                if (!B1.empty()) P.all_surjective = false;
                continue;
            }
            Mat F(morph_flatten(morph_map(f, B0[0], A1.dim)).size(), B0.size());
            for (size_t c = 0; c < B0.size(); ++c) {
                Morph img = morph_map(f, B0[c], A1.dim);
                memb(cb_residual(A1, U, V, img));
                F.col(c) = morph_flatten(img);
            }
            int r = matrix_rank(F, 1e-9);
            if (r < int(B0.size())) P.all_injective = false;
            if (r < int(B1.size())) P.all_surjective = false;
            for (const auto& S : cb_hom(A0, V, U)) {
                Morph lhs = morph_map(f, morph_compose(A0, S, B0[0]), A1.dim);
                Morph rhs = morph_compose(A1, morph_map(f, S, A1.dim), morph_map(f, B0[0], A1.dim));
                comp(morph_dist(lhs, rhs));
                break;
            }
            for (const auto& W : objs) {
                Morph lhs = morph_map(f, morph_tensor_left(A0, W, B0[0]), A1.dim);
                Morph rhs = morph_tensor_left(A1, W, morph_map(f, B0[0], A1.dim));
                tens(morph_dist(lhs, rhs));
            }
        }
    rep.add("image_in_cb_hom", memb.v, tol);
    rep.add("composition", comp.v, tol);
    rep.add("tensor", tens.v, tol);
    Check& ci = rep.add("injectivity_matches", P.all_injective == P.f_injective ? 0.0 : 1.0, 0.0);
    ci.evaluated = 1;
    Check& cs = rep.add("surjectivity_matches", P.all_surjective == P.f_surjective ? 0.0 : 1.0, 0.0);
    cs.evaluated = 1;
    return P;
}

}  // namespace ydcat

#endif
