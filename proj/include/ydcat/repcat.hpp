#ifndef YDCAT_REPCAT_HPP
#define YDCAT_REPCAT_HPP

#include "ydcat/hopf.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace ydcat {

/** \brief Unitary corepresentation U = sum m_ij (x) u_ij, coefficients in the coordinates
 *  of a Hopf algebra model. */
struct Representation {
    int d = 0;
    std::vector<Vec> u;  // u[i*d+j]
    std::string label;
    const Vec& at(int i, int j) const { return u[size_t(i) * d + j]; }
    Vec& at(int i, int j) { return u[size_t(i) * d + j]; }
};

inline Representation trivial_rep(const HopfAlgebraData& A) {
    return Representation{1, {A.unit}, "1"};
}

/** U_13 V_23 with index order (i,k),(j,l) -> u_ij v_kl. */
inline Representation tensor(const HopfAlgebraData& A, const Representation& U,
                             const Representation& V) {
    Representation W;
    W.d = U.d * V.d;
    W.label = "(" + U.label + "x" + V.label + ")";
    W.u.assign(size_t(W.d) * W.d, Vec());
    for (int i = 0; i < U.d; ++i)
        for (int j = 0; j < U.d; ++j)
            for (int k = 0; k < V.d; ++k)
                for (int l = 0; l < V.d; ++l)
                    W.at(i * V.d + k, j * V.d + l) = A.mul(U.at(i, j), V.at(k, l));
    return W;
}

/** W^* U W for an isometry W from C^m into H_U. */
inline Representation restrict(const Representation& U, const Mat& W, std::string label = "") {
    Representation R;
    R.d = int(W.cols());
    R.label = label.empty() ? U.label : label;
    const int n = int(U.u[0].size());
    R.u.assign(size_t(R.d) * R.d, Vec::Zero(n));
    for (int a = 0; a < R.d; ++a)
        for (int b = 0; b < R.d; ++b)
            for (int i = 0; i < U.d; ++i)
                for (int j = 0; j < U.d; ++j) {
                    cd f = std::conj(W(i, a)) * W(j, b);
                    if (std::abs(f) > 1e-15) R.at(a, b) += f * U.at(i, j);
                }
    return R;
}

/** Coefficients mapped through a linear map of the coordinate space. */
inline Representation map_coefficients(const Representation& U, const Mat& P) {
    Representation R = U;
    for (auto& v : R.u) v = P * v;
    return R;
}

inline double corep_residual(const HopfAlgebraData& A, const Representation& U) {
    MaxAcc acc;
    for (int i = 0; i < U.d; ++i)
        for (int j = 0; j < U.d; ++j) {
            Mat D = A.coproduct(U.at(i, j));
            for (int k = 0; k < U.d; ++k) D -= U.at(i, k) * U.at(k, j).transpose();
            acc(max_abs(D));
        }
    return acc.v;
}

inline double unitarity_residual(const HopfAlgebraData& A, const Representation& U) {
    MaxAcc acc;
    for (int i = 0; i < U.d; ++i)
        for (int j = 0; j < U.d; ++j) {
            Vec a = Vec::Zero(A.dim), b = Vec::Zero(A.dim);
            for (int k = 0; k < U.d; ++k) {
                a += A.mul(A.adj(U.at(k, i)), U.at(k, j));
                b += A.mul(U.at(i, k), A.adj(U.at(j, k)));
            }
            if (i == j) {
                a -= A.unit;
                b -= A.unit;
            }
            acc(max_abs(a));
            acc(max_abs(b));
        }
    return acc.v;
}

/** Coordinates that carry any coefficient of the given representations. */
inline std::vector<int> coefficient_support(std::initializer_list<const Representation*> reps) {
    int n = 0;
    for (auto* r : reps) n = std::max(n, int(r->u[0].size()));
    std::vector<char> used(n, 0);
    for (auto* r : reps)
        for (const auto& v : r->u)
            for (int c = 0; c < v.size(); ++c)
                if (std::abs(v(c)) > 1e-14) used[c] = 1;
    std::vector<int> out;
    for (int c = 0; c < n; ++c)
        if (used[c]) out.push_back(c);
    return out;
}

inline double intertwiner_residual(const Representation& U, const Representation& V, const Mat& T) {
    MaxAcc acc;
    for (int i = 0; i < V.d; ++i)
        for (int j = 0; j < U.d; ++j) {
            Vec r = Vec::Zero(U.u[0].size());
            for (int k = 0; k < V.d; ++k) r += V.at(i, k) * T(k, j);
            for (int k = 0; k < U.d; ++k) r -= T(i, k) * U.at(k, j);
            acc(max_abs(r));
        }
    return acc.v;
}

/** \brief Orthonormal (Hilbert-Schmidt) basis of {T : V(T(x)1) = (T(x)1)U}. */
inline std::vector<Mat> intertwiner_space(const Representation& U, const Representation& V) {
    const int dU = U.d, dV = V.d;
    std::vector<int> sup = coefficient_support({&U, &V});
    const int r = int(sup.size());
    const int nun = dU * dV;
    Mat M = Mat::Zero(size_t(dV) * dU * std::max(r, 1), nun);
    for (int i = 0; i < dV; ++i)
        for (int j = 0; j < dU; ++j) {
            size_t row0 = (size_t(i) * dU + j) * r;
            for (int k = 0; k < dV; ++k)
                for (int c = 0; c < r; ++c) M(row0 + c, k * dU + j) += V.at(i, k)(sup[c]);
            for (int k = 0; k < dU; ++k)
                for (int c = 0; c < r; ++c) M(row0 + c, i * dU + k) -= U.at(k, j)(sup[c]);
        }
    Mat N = null_space(M);
    std::vector<Mat> out;
    for (int c = 0; c < N.cols(); ++c) {
        Mat T(dV, dU);
        for (int a = 0; a < dV; ++a)
            for (int b = 0; b < dU; ++b) T(a, b) = N(a * dU + b, c);
        out.push_back(T);
    }
    return out;
}

inline Vec char_vector(const Representation& U) {
    Vec c = Vec::Zero(U.u[0].size());
    for (int i = 0; i < U.d; ++i) c += U.at(i, i);
    return c;
}

inline std::string fingerprint(const Representation& U) {
    Vec c = char_vector(U);
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    for (int i = 0; i < c.size(); ++i) {
        double re = std::round(c(i).real() * 1e6) / 1e6, im = std::round(c(i).imag() * 1e6) / 1e6;
        os << (re == 0 ? 0.0 : re) << "," << (im == 0 ? 0.0 : im) << ";";
    }
    return os.str();
}

/** \brief Splits U into irreducible pieces using a random self-adjoint intertwiner.
 *  Returns isometries with orthogonal ranges summing to the identity. */
inline std::vector<Mat> split_irreducible(const Representation& U, Rng& rng) {
    auto E = intertwiner_space(U, U);
    Mat Z = Mat::Zero(U.d, U.d);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (const auto& T : E) {
        double x = nd(rng), y = nd(rng);
        Z += cd(x, y) * T;
    }
    Z = (Z + Z.adjoint()).eval() / 2.0;
    double scale = std::max(1.0, max_abs(Z));
    return hermitian_eigenspaces(Z / scale, 1e-7);
}

struct ConjugateData {
    Mat rho;
    Representation conj_rep;
    Vec R;     // in Hbar (x) H, index a*d + k
    Vec Rbar;  // in H (x) Hbar, index k*d + a
    double qdim = 0.0;
};

/** Matrix of j(T) on the conjugate space in the basis conj(xi_i): transpose. */
inline Mat conj_transport(const Mat& T) { return T.transpose(); }

inline Representation conjugate_rep(const HopfAlgebraData& A, const Representation& U, const Mat& rho) {
    Mat jr = conj_transport(rho);
    Mat a = hermitian_power(jr, 0.5), b = hermitian_power(jr, -0.5);
    Representation C;
    C.d = U.d;
    C.label = "conj(" + U.label + ")";
    C.u.assign(size_t(U.d) * U.d, Vec::Zero(A.dim));
    for (int i = 0; i < U.d; ++i)
        for (int j = 0; j < U.d; ++j)
            for (int k = 0; k < U.d; ++k)
                for (int l = 0; l < U.d; ++l) {
                    cd f = a(i, k) * b(l, j);
                    if (std::abs(f) > 1e-15) C.at(i, j) += f * A.adj(U.at(k, l));
                }
    return C;
}

inline double hom_residual_from_unit(const HopfAlgebraData& A, const Representation& W, const Vec& v) {
    MaxAcc acc;
    for (int i = 0; i < W.d; ++i) {
        Vec r = -v(i) * A.unit;
        for (int j = 0; j < W.d; ++j)
            if (v(j) != cd(0)) r += W.at(i, j) * v(j);
        acc(max_abs(r));
    }
    return acc.v;
}

inline Vec R_vector(const Mat& rho) {
    const int d = int(rho.rows());
    Mat m = hermitian_power(rho, -0.5);
    Vec R(d * d);
    for (int a = 0; a < d; ++a)
        for (int k = 0; k < d; ++k) R(a * d + k) = m(k, a);
    return R;
}

inline Vec Rbar_vector(const Mat& rho) {
    const int d = int(rho.rows());
    Mat m = hermitian_power(rho, 0.5);
    Vec R(d * d);
    for (int k = 0; k < d; ++k)
        for (int a = 0; a < d; ++a) R(k * d + a) = m(k, a);
    return R;
}

/** Residuals of the two conjugate equations. */
inline double conjugate_equation_residual(const Vec& R, const Vec& Rbar, int d) {
    Mat X = Mat::Zero(d, d), Y = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a)
            for (int k = 0; k < d; ++k) {
                X(i, a) += std::conj(R(a * d + k)) * Rbar(k * d + i);
                Y(i, a) += std::conj(Rbar(a * d + k)) * R(k * d + i);
            }
    Mat I = Mat::Identity(d, d);
    return std::max(max_abs(Mat(X - I)), max_abs(Mat(Y - I)));
}

/** \brief Woronowicz character, conjugate representation and solutions of the conjugate
 *  equations for an irreducible U. rho is taken from the intertwiner U -> (id(x)S^2)U,
 *  with the orientation fixed by requiring R to be an invariant vector of conj(U)(x)U. */
inline ConjugateData conjugate_data(const HopfAlgebraData& A, const Representation& U) {
    Representation S2 = U;
    for (auto& v : S2.u) v = A.S(A.S(v));
    auto E = intertwiner_space(U, S2);
    if (E.size() != 1) throw Error("conjugate_data needs an irreducible representation");
    Mat F = E[0];
    cd tr = F.trace();
    if (std::abs(tr) < 1e-12) throw Error("rho convention error: intertwiner has zero trace");
    F *= std::abs(tr) / tr;
    F = (F + F.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(F);
    if (es.eigenvalues().minCoeff() <= 0) throw Error("rho convention error: not positive definite");
    // normalize Tr F = Tr F^{-1}
    double t1 = F.trace().real(), t2 = F.inverse().trace().real();
    F *= std::sqrt(t2 / t1);

    ConjugateData best;
    double best_res = std::numeric_limits<double>::infinity();
    for (int orient = 0; orient < 2; ++orient) {
        Mat rho = orient == 0 ? F : Mat(F.inverse());
        rho = (rho + rho.adjoint()).eval() / 2.0;
        ConjugateData c;
        c.rho = rho;
        c.conj_rep = conjugate_rep(A, U, rho);
        c.R = R_vector(rho);
        c.Rbar = Rbar_vector(rho);
        c.qdim = rho.trace().real();
        Representation CU = tensor(A, c.conj_rep, U);
        Representation UC = tensor(A, U, c.conj_rep);
        double res = std::max(hom_residual_from_unit(A, CU, c.R), hom_residual_from_unit(A, UC, c.Rbar));
        if (res < best_res) {
            best_res = res;
            best = c;
        }
    }
    return best;
}

struct Fusion {
    std::vector<int> labels;
    std::vector<Mat> isometries;  // w_i : H_{labels[i]} -> H_W
};

inline double completeness_residual(const Fusion& f, int dim) {
    Mat s = Mat::Zero(dim, dim);
    for (const auto& w : f.isometries) s += w * w.adjoint();
    return max_abs(Mat(s - Mat::Identity(dim, dim)));
}

/** \brief Table of irreducible representatives with conjugate data and a write-once
 *  cache of fusion isometries. */
struct IrrepTable {
    std::vector<Representation> irreps;
    std::vector<ConjugateData> conj;
    std::vector<std::string> labels;
    std::vector<int> spin2;  // twice the spin for the SU_q(2) backend, empty otherwise
    int level2 = -1;         // truncation level (twice the spin), -1 when complete

    int size() const { return int(irreps.size()); }
    int dim(int s) const { return irreps[s].d; }
    int find(const std::string& l) const {
        for (int i = 0; i < size(); ++i)
            if (labels[i] == l) return i;
        throw Error("unknown irrep label " + l);
    }
};

/** \brief Decomposes W into table irreducibles via Hom(U_r, W). Throws
 *  TruncationExceeded when the table is truncated and the pieces do not exhaust W. */
inline Fusion decompose_in_table(const IrrepTable& T, const Representation& W, uint64_t seed = 0) {
    Fusion f;
    int got = 0;
    Rng rng(seed);
    for (int r = 0; r < T.size(); ++r) {
        auto H = intertwiner_space(T.irreps[r], W);
        if (H.empty()) continue;
        // Gram matrix for <S,T> = tr(S^*T)/d_r, which is the scalar of S^*T
        const int m = int(H.size());
        std::vector<Mat> basis = H;
        if (seed != 0) {
            Mat U = random_unitary(m, rng);
            for (int a = 0; a < m; ++a) {
                basis[a] = Mat::Zero(W.d, T.dim(r));
                for (int b = 0; b < m; ++b) basis[a] += U(b, a) * H[b];
            }
        }
        std::vector<Mat> iso;
        for (auto B : basis) {
            for (const auto& w : iso) B -= w * (w.adjoint() * B).trace() / double(T.dim(r));
            double nrm = std::sqrt(std::abs((B.adjoint() * B).trace().real()) / T.dim(r));
            if (nrm < 1e-9) continue;
            iso.push_back(B / nrm);
        }
        for (auto& w : iso) {
            f.labels.push_back(r);
            f.isometries.push_back(w);
            got += T.dim(r);
        }
    }
    if (got != W.d) {
        if (T.level2 >= 0) {
            int need = T.level2 + 1;
            throw TruncationExceeded(need, T.level2);
        }
        throw Error("decomposition incomplete: achieved rank " + std::to_string(got) + " of " +
                    std::to_string(W.d));
    }
    return f;
}

/** \brief A compact quantum group realized through a Hopf algebra model of C[G] and its
 *  table of irreducibles. */
class QuantumGroup {
public:
    std::string kind;  // "finite" or "suq2"
    std::string name;
    HopfAlgebraData cg;
    IrrepTable table;
    double q = 1.0;

    const Fusion& fusion(int s, int t) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find({s, t});
        if (it != cache_.end()) return it->second;
        if (table.level2 >= 0 && !table.spin2.empty()) {
            int need = table.spin2[s] + table.spin2[t];
            if (need > table.level2) throw TruncationExceeded(need, table.level2);
        }
        Representation W = tensor(cg, table.irreps[s], table.irreps[t]);
        Fusion f = decompose_in_table(table, W);
        return cache_.emplace(std::make_pair(s, t), std::move(f)).first->second;
    }

    Representation tensor_irreps(int s, int t) const { return tensor(cg, table.irreps[s], table.irreps[t]); }

    /** Fusion multiplicity N_{st}^r. */
    int multiplicity(int s, int t, int r) const {
        const Fusion& f = fusion(s, t);
        return int(std::count(f.labels.begin(), f.labels.end(), r));
    }

    /** Throws when spin2 exceeds the truncation level. */
    void require_level(int need2) const {
        if (table.level2 >= 0 && need2 > table.level2) throw TruncationExceeded(need2, table.level2);
    }

private:
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, Fusion> cache_;
};

using QG = std::shared_ptr<const QuantumGroup>;

/** Haar-orthonormal regular corepresentation: Delta(e_j) = sum_i e_i (x) u_ij. */
inline Representation regular_rep(const HopfAlgebraData& A) {
    const int n = A.dim;
    Representation U;
    U.d = n;
    U.label = "reg";
    U.u.assign(size_t(n) * n, Vec::Zero(n));
    for (int j = 0; j < n; ++j)
        for (const auto& t : A.comult[j]) U.at(t.j, j)(t.k) += t.c;
    // make unitary: orthonormalize the carrier for <a,b> = h(b^* a)
    HaarFunctional h = haar(A);
    Mat G(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G(a, b) = h(A.mul(A.adj(A.e(a)), A.e(b)));
    G = (G + G.adjoint()).eval() / 2.0;
    Mat Gh = hermitian_power(G, 0.5), Gi = hermitian_power(G, -0.5);
    Representation V;
    V.d = n;
    V.label = "reg";
    V.u.assign(size_t(n) * n, Vec::Zero(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    cd f = Gh(i, a) * Gi(b, j);
                    if (std::abs(f) > 1e-15) V.at(i, j) += f * U.at(a, b);
                }
    return V;
}

/** \brief Irreducibles of a finite quantum group from the regular corepresentation,
 *  ordered by dimension, trivial first, then character fingerprint. */
inline IrrepTable irrep_table_finite(const HopfAlgebraData& A, uint64_t seed = 11) {
    Representation reg = regular_rep(A);
    Rng rng(seed);
    auto pieces = split_irreducible(reg, rng);
    std::vector<Representation> found;
    for (const auto& W : pieces) {
        Representation P = restrict(reg, W);
        auto E = intertwiner_space(P, P);
        if (E.size() != 1) throw Error("decomposition failure: input not semisimple or clustering failed");
        bool dup = false;
        for (const auto& F : found)
            if (F.d == P.d && !intertwiner_space(P, F).empty()) dup = true;
        if (!dup) found.push_back(P);
    }
    int total = 0;
    for (const auto& F : found) total += F.d * F.d;
    if (total != A.dim) throw Error("decomposition failure: sum of squared dimensions mismatch");
    Vec one = A.unit;
    std::vector<std::pair<std::tuple<int, int, std::string>, int>> keys;
    for (int i = 0; i < int(found.size()); ++i) {
        bool triv = found[i].d == 1 && max_abs(Vec(found[i].u[0] - one)) < 1e-8;
        keys.push_back({{found[i].d, triv ? 0 : 1, fingerprint(found[i])}, i});
    }
    std::sort(keys.begin(), keys.end());
    IrrepTable T;
    for (const auto& k : keys) {
        Representation P = found[k.second];
        if (P.d == 1 && std::get<1>(k.first) == 0) P.u[0] = one;  // exact trivial
        P.label = "u" + std::to_string(T.irreps.size());
        T.irreps.push_back(P);
        T.labels.push_back(P.label);
    }
    for (const auto& P : T.irreps) T.conj.push_back(conjugate_data(A, P));
    return T;
}

inline QG make_finite_group(const HopfAlgebraData& A, const std::string& name = "finite") {
    auto G = std::make_shared<QuantumGroup>();
    G->kind = "finite";
    G->name = name;
    G->cg = A;
    G->table = irrep_table_finite(A);
    return G;
}

/** Isometry of the isotypic pieces mapping to an irreducible in the table, or -1. */
inline int identify_irrep(const IrrepTable& T, const Representation& P) {
    for (int r = 0; r < T.size(); ++r)
        if (T.dim(r) == P.d && !intertwiner_space(P, T.irreps[r]).empty()) return r;
    return -1;
}

}  // namespace ydcat

#endif
