#ifndef YDCAT_POISSON_HPP
#define YDCAT_POISSON_HPP

#include "ydcat/duality.hpp"

#include <Eigen/Eigenvalues>

namespace ydcat {

/** \brief Probability measure on the table irreducibles. */
struct Measure {
    std::vector<double> w;  // indexed by table position

    std::vector<int> support() const {
        std::vector<int> s;
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] != 0.0) s.push_back(int(i));
        return s;
    }
};

inline Measure make_measure(const IrrepTable& T, const std::map<std::string, double>& weights) {
    Measure m;
    m.w.assign(T.size(), 0.0);
    double sum = 0.0;
    for (const auto& [label, x] : weights) {
        if (!(x >= 0.0)) throw StructureError("measure weight for " + label + " is negative");
        m.w[T.find(label)] += x;
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw StructureError("measure weights sum to " + std::to_string(sum));
    return m;
}

inline Measure delta_measure(const IrrepTable& T, int s) {
    Measure m;
    m.w.assign(T.size(), 0.0);
    m.w[s] = 1.0;
    return m;
}

/** \brief phi_U(T) = Tr(T rho^{-1}) / dim_q U, stored as the density rho^{-1} / dim_q U. */
inline Mat phi_density(const ConjugateData& c) { return hermitian_power(c.rho, -1.0) / c.qdim; }

inline cd phi_state(const ConjugateData& c, const Mat& T) { return (T * phi_density(c)).trace(); }

/** Residual of (id (x) phi_U)(U_21^* (1 (x) T) U_21) = phi_U(T) 1 in C[G]. */
inline double phi_invariance_residual(const HopfAlgebraData& H, const Representation& U, const ConjugateData& c,
                                      const Mat& T) {
    const int d = U.d;
    Mat W = phi_density(c);
    Vec lhs = Vec::Zero(H.dim);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (W(b, a) == cd(0)) continue;
            Vec e = Vec::Zero(H.dim);
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y)
                    if (T(x, y) != cd(0)) e += T(x, y) * H.mul(H.adj(U.at(x, a)), U.at(y, b));
            lhs += W(b, a) * e;
        }
    return max_abs(Vec(lhs - phi_state(c, T) * H.unit));
}

/** \brief Block positions of a dual algebra built by dual_yd. */
struct DualLayout {
    std::vector<int> blocks;  // table indices present
    std::vector<int> offset;  // per table index, -1 when absent
    int dim = 0;

    int index(const IrrepTable& T, int s, int i, int j) const { return offset[s] + i * T.dim(s) + j; }
};

inline DualLayout dual_layout(const RegularYDAlgebra& D) {
    const auto& T = D.G->table;
    const bool trunc = D.G->kind == "suq2";
    DualLayout L;
    L.offset.assign(T.size(), -1);
    for (int s = 0; s < T.size(); ++s)
        if (!trunc || T.spin2[s] <= D.level2) {
            L.blocks.push_back(s);
            L.offset[s] = L.dim;
            L.dim += T.dim(s) * T.dim(s);
        }
    if (L.dim != D.dim) throw Error("dual_layout: algebra is not a block dual");
    return L;
}

/** \brief P_mu(a) = sum_s mu(s) (phi_s (x) id) dual-coproduct(a), blockwise. Output block t needs
 *  the input blocks r inside U_s (x) U_t; blocks where that fails are uncertified. */
struct MarkovOperator {
    QG G;
    DualLayout layout;
    Mat P;                    // rows of uncertified blocks are zero
    std::vector<char> certified;  // per layout block
    int certified_dim = 0;    // certified blocks form a prefix of the layout
    int required2 = -1;       // level needed to certify every block

    bool complete() const { return certified_dim == layout.dim; }

    Vec apply(const Vec& a) const {
        if (!complete()) throw TruncationExceeded(required2, G->table.level2);
        return P * a;
    }

    /** Output restricted to the certified blocks. */
    Vec apply_certified(const Vec& a) const { return (P * a).head(certified_dim); }
};

inline MarkovOperator markov_operator(const RegularYDAlgebra& D, const Measure& mu) {
    const auto& G = *D.G;
    const auto& T = G.table;
    MarkovOperator M;
    M.G = D.G;
    M.layout = dual_layout(D);
    const DualLayout& L = M.layout;
    M.P = Mat::Zero(L.dim, L.dim);
    bool prefix = true;
    for (int t : L.blocks) {
        const int dt = T.dim(t);
        bool ok = true;
        for (int s : mu.support()) {
            const Fusion* f = nullptr;
            try {
                f = &G.fusion(s, t);
            } catch (const TruncationExceeded& e) {
                ok = false;
                M.required2 = std::max(M.required2, e.required2);
                continue;
            }
            for (int r : f->labels)
                if (L.offset[r] < 0) {
                    ok = false;
                    M.required2 = std::max(M.required2, T.spin2.empty() ? -1 : T.spin2[s] + T.spin2[t]);
                }
        }
        M.certified.push_back(ok);
        if (!ok) {
            prefix = false;
            continue;
        }
        if (!prefix) throw Error("markov_operator: certified blocks are not a prefix");
        M.certified_dim += dt * dt;
        for (int s : mu.support()) {
            const int ds = T.dim(s);
            Mat W = mu.w[s] * phi_density(T.conj[s]);
            const Fusion& f = G.fusion(s, t);
            for (size_t w = 0; w < f.labels.size(); ++w) {
                const int r = f.labels[w];
                const int dr = T.dim(r);
                const Mat& iso = f.isometries[w];
                for (int k = 0; k < dr; ++k)
                    for (int l = 0; l < dr; ++l) {
                        const int col = L.index(T, r, k, l);
                        for (int a = 0; a < dt; ++a)
                            for (int b = 0; b < dt; ++b) {
                                cd v = 0.0;
                                for (int m = 0; m < ds; ++m)
                                    for (int m2 = 0; m2 < ds; ++m2)
                                        v += W(m2, m) * iso(m * dt + a, k) * std::conj(iso(m2 * dt + b, l));
                                M.P(L.index(T, t, a, b), col) += v;
                            }
                    }
            }
        }
    }
    return M;
}

/** \brief Unitality, positivity on seeded positive samples and G-equivariance of P_mu on the
 *  certified blocks. */
inline ValidationReport markov_report(const RegularYDAlgebra& D, const MarkovOperator& M, double tol,
                                      uint64_t seed = 7, int samples = 100) {
    ValidationReport rep;
    rep.seed = seed;
    const auto& T = D.G->table;
    const DualLayout& L = M.layout;
    const int c = M.certified_dim;
    rep.add("unital", max_abs(Vec(M.apply_certified(D.unit) - D.unit.head(c))), tol);
    Rng rng(seed);
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        Vec a = Vec::Zero(L.dim);
        for (int s : L.blocks) {
            const int d = T.dim(s);
            Mat X = random_matrix(d, d, rng);
            Mat Pm = X * X.adjoint();
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) a(L.index(T, s, i, j)) = Pm(i, j);
        }
        Vec b = M.apply_certified(a);
        for (size_t k = 0; k < L.blocks.size(); ++k) {
            if (!M.certified[k]) continue;
            const int s = L.blocks[k], d = T.dim(s);
            Mat B(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) B(i, j) = b(L.index(T, s, i, j));
            Mat Hm = (B + B.adjoint()) / 2.0;
            double mn = Eigen::SelfAdjointEigenSolver<Mat>(Hm).eigenvalues().minCoeff();
            worst = std::max({worst, -mn, max_abs(Mat(B - B.adjoint()))});
        }
    }
    Check& pc = rep.add("positive", worst, tol);
    pc.evaluated = samples;
    MaxAcc eq;
    const Mat Pc = M.P.topRows(c);
    for (int a = 0; a < L.dim; ++a) {
        Vec x = D.e(a);
        Mat lhs = D.coaction(M.P * x).leftCols(c);
        Mat rhs = D.coaction(x) * Pc.transpose();
        eq(max_abs(Mat(lhs - rhs)));
    }
    Check& ec = rep.add("equivariant", eq.v, tol);
    ec.evaluated = L.dim;
    if (!M.complete())
        rep.notes.push_back("certified output blocks cover " + std::to_string(c) + " of " + std::to_string(L.dim) +
                            " coordinates; full output needs level " + std::to_string(M.required2));
    return rep;
}

/** (mu * nu)(r) = sum mu(s) nu(t) N_st^r dim_q(r) / (dim_q(s) dim_q(t)). */
inline Measure convolve(const QuantumGroup& G, const Measure& mu, const Measure& nu) {
    const auto& T = G.table;
    Measure out;
    out.w.assign(T.size(), 0.0);
    for (int s : mu.support())
        for (int t : nu.support()) {
            const Fusion& f = G.fusion(s, t);
            for (int r : f.labels)
                out.w[r] += mu.w[s] * nu.w[t] * T.conj[r].qdim / (T.conj[s].qdim * T.conj[t].qdim);
        }
    return out;
}

/** \brief Harmonic elements {a : P_mu(a) = a}, imposed on the certified output blocks. With
 *  uncertified blocks the solution space is an outer approximation. */
struct HarmonicSpace {
    Mat basis;  // columns in dual coordinates
    int certified_dim = 0;
    int certified_rank = 0;  // dimension of the projection to the certified blocks
    bool exact = false;
    ValidationReport report;
};

inline HarmonicSpace harmonic_space(const RegularYDAlgebra& D, const MarkovOperator& M, double tol = 1e-9) {
    HarmonicSpace H;
    const int c = M.certified_dim, N = M.layout.dim;
    Mat E = M.P.topRows(c) - Mat::Identity(N, N).topRows(c);
    H.basis = null_space(E, 1e-10);
    H.certified_dim = c;
    H.exact = M.complete();
    H.certified_rank = H.basis.cols() ? matrix_rank(Mat(H.basis.topRows(c)), 1e-9) : 0;
    H.report.add("contains_unit", span_defect(H.basis, D.unit), tol);
    if (H.exact) {
        MaxAcc cl;
        for (int k = 0; k < H.basis.cols(); ++k) {
            Mat X = D.coaction(H.basis.col(k));
            cl(span_defect(H.basis, Mat(X.transpose())));
        }
        H.report.add("coaction_stable", cl.v, tol);
    } else {
        H.report.notes.push_back("outer approximation: harmonic equations imposed on " + std::to_string(c) + " of " +
                                 std::to_string(N) + " coordinates; no convergence claim");
    }
    H.report.notes.push_back("dimension " + std::to_string(H.basis.cols()) + ", certified projection rank " +
                             std::to_string(H.certified_rank));
    return H;
}

/** \brief E_1, the spectral projection of P onto eigenvalue 1 along the rest of the spectrum,
 *  from right and left eigenvectors (eigenvalue 1 is semisimple for a power-bounded P). */
struct CesaroData {
    Mat E1;
    std::vector<cd> peripheral;  // eigenvalues of modulus 1 other than 1
    ValidationReport report;
};

inline CesaroData cesaro_projection(const MarkovOperator& M, double tol = 1e-9) {
    if (!M.complete()) throw TruncationExceeded(M.required2, M.G->table.level2);
    CesaroData C;
    const int N = M.layout.dim;
    Mat A = M.P - Mat::Identity(N, N);
    Mat V = null_space(A, 1e-10);
    Mat W = null_space(Mat(A.adjoint()), 1e-10);
    if (V.cols() != W.cols()) throw Error("cesaro_projection: eigenvalue 1 is not semisimple");
    C.E1 = V * (W.adjoint() * V).inverse() * W.adjoint();
    Eigen::ComplexEigenSolver<Mat> es(M.P);
    for (int k = 0; k < N; ++k) {
        cd l = es.eigenvalues()(k);
        if (std::abs(std::abs(l) - 1.0) < 1e-8 && std::abs(l - 1.0) > 1e-8) C.peripheral.push_back(l);
    }
    C.report.add("idempotent", max_abs(Mat(C.E1 * C.E1 - C.E1)), tol);
    C.report.add("commutes_with_P", max_abs(Mat(C.E1 * M.P - M.P * C.E1)), tol);
    C.report.add("fixes_harmonic", max_abs(Mat(M.P * C.E1 - C.E1)), tol);
    if (!C.peripheral.empty()) {
        std::ostringstream os;
        os << "peripheral spectrum besides 1:";
        for (cd l : C.peripheral) os << " (" << l.real() << "," << l.imag() << ")";
        os << "; P^n(xy) need not converge, the Cesaro mean is used";
        C.report.notes.push_back(os.str());
    }
    return C;
}

/** x . y = E_1(xy), the limit of the Cesaro means of P^n(xy). */
inline Vec cesaro_product(const RegularYDAlgebra& D, const CesaroData& C, const Vec& x, const Vec& y) {
    return C.E1 * D.mul(x, y);
}

/** Mean of P^n(z) over n < terms, for comparison with E_1(z). */
inline Vec cesaro_mean(const MarkovOperator& M, const Vec& z, int terms) {
    Vec acc = Vec::Zero(z.size()), cur = z;
    for (int n = 0; n < terms; ++n) {
        acc += cur;
        cur = M.P * cur;
    }
    return acc / double(terms);
}

/** \brief Associativity, involution and unit of the Cesaro product on a harmonic basis. */
inline ValidationReport cesaro_algebra_report(const RegularYDAlgebra& D, const CesaroData& C, const Mat& Hb,
                                              double tol) {
    ValidationReport rep;
    const int k = int(Hb.cols());
    MaxAcc as, st, un, cl;
    for (int a = 0; a < k; ++a) {
        Vec x = Hb.col(a);
        un(max_abs(Vec(cesaro_product(D, C, D.unit, x) - x)));
        un(max_abs(Vec(cesaro_product(D, C, x, D.unit) - x)));
        for (int b = 0; b < k; ++b) {
            Vec y = Hb.col(b);
            Vec xy = cesaro_product(D, C, x, y);
            cl(span_defect(Hb, xy));
            st(max_abs(Vec(D.adj(xy) - cesaro_product(D, C, D.adj(y), D.adj(x)))));
            for (int c = 0; c < k; ++c) {
                Vec z = Hb.col(c);
                as(max_abs(Vec(cesaro_product(D, C, xy, z) - cesaro_product(D, C, x, cesaro_product(D, C, y, z)))));
            }
        }
    }
    rep.add("unit", un.v, tol);
    rep.add("closed", cl.v, tol);
    rep.add("involution", st.v, tol);
    rep.add("associative", as.v, tol);
    return rep;
}

/** \brief Natural transformation between X -> X (x) V and X -> X (x) W on Rep G, by its blocks
 *  eta_s in Hom_G(U_s (x) V, U_s (x) W) for the table irreducibles s of a layout. */
struct NatTransBlocks {
    Representation V, W;
    std::vector<int> blocks;  // table indices present
    std::vector<Mat> eta;     // eta[k] for blocks[k], (d_s d_W) x (d_s d_V)

    int position(int s) const {
        for (size_t k = 0; k < blocks.size(); ++k)
            if (blocks[k] == s) return int(k);
        return -1;
    }
};

/** eta on U_s (x) U_t assembled from the blocks: sum_w (w (x) id) eta_r (w^* (x) id). */
inline Mat nat_on_tensor(const QuantumGroup& G, const NatTransBlocks& eta, int s, int t) {
    const auto& T = G.table;
    const Fusion& f = G.fusion(s, t);
    const int dV = eta.V.d, dW = eta.W.d, d = T.dim(s) * T.dim(t);
    Mat out = Mat::Zero(size_t(d) * dW, size_t(d) * dV);
    for (size_t w = 0; w < f.labels.size(); ++w) {
        int k = eta.position(f.labels[w]);
        if (k < 0) throw TruncationExceeded(T.spin2.empty() ? -1 : T.spin2[s] + T.spin2[t], T.level2);
        const Mat& iso = f.isometries[w];
        out += kron(iso, Mat::Identity(dW, dW)) * eta.eta[k] * kron(Mat(iso.adjoint()), Mat::Identity(dV, dV));
    }
    return out;
}

/** \brief P_mu(eta)_t = sum_s mu(s) (phi_s (x) id)(eta_{U_s (x) U_t}); blocks t whose inputs are not
 *  all present are dropped from the output, which lists only the certified blocks. */
inline NatTransBlocks categorical_markov(const QuantumGroup& G, const Measure& mu, const NatTransBlocks& eta) {
    const auto& T = G.table;
    NatTransBlocks out{eta.V, eta.W, {}, {}};
    const int dV = eta.V.d, dW = eta.W.d;
    for (int t : eta.blocks) {
        const int dt = T.dim(t);
        Mat acc = Mat::Zero(size_t(dt) * dW, size_t(dt) * dV);
        bool ok = true;
        for (int s : mu.support()) {
            Mat X;
            try {
                X = nat_on_tensor(G, eta, s, t);
            } catch (const TruncationExceeded&) {
                ok = false;
                break;
            }
            const int ds = T.dim(s);
            Mat Wd = mu.w[s] * phi_density(T.conj[s]);
            const int ro = dt * dW, co = dt * dV;
            for (int m = 0; m < ds; ++m)
                for (int m2 = 0; m2 < ds; ++m2)
                    if (Wd(m2, m) != cd(0)) acc += Wd(m2, m) * X.block(size_t(m) * ro, size_t(m2) * co, ro, co);
        }
        if (!ok) continue;
        out.blocks.push_back(t);
        out.eta.push_back(acc);
    }
    return out;
}

/** Largest intertwiner residual of the blocks. */
inline double naturality_residual(const QuantumGroup& G, const NatTransBlocks& eta) {
    MaxAcc acc;
    for (size_t k = 0; k < eta.blocks.size(); ++k) {
        const auto& U = G.table.irreps[eta.blocks[k]];
        acc(intertwiner_residual(tensor(G.cg, U, eta.V), tensor(G.cg, U, eta.W), eta.eta[k]));
    }
    return acc.v;
}

/** Basis of the block data: products of Hom_G(U_s (x) V, U_s (x) W) over the given blocks. */
inline std::vector<NatTransBlocks> nat_trans_basis(const QuantumGroup& G, const Representation& V,
                                                   const Representation& W, const std::vector<int>& blocks) {
    std::vector<NatTransBlocks> out;
    std::vector<std::vector<Mat>> homs;
    for (int s : blocks)
        homs.push_back(intertwiner_space(tensor(G.cg, G.table.irreps[s], V), tensor(G.cg, G.table.irreps[s], W)));
    for (size_t k = 0; k < blocks.size(); ++k)
        for (const auto& h : homs[k]) {
            NatTransBlocks e{V, W, blocks, {}};
            for (size_t j = 0; j < blocks.size(); ++j) {
                const int d = G.table.dim(blocks[j]);
                e.eta.push_back(j == k ? h : Mat(Mat::Zero(size_t(d) * W.d, size_t(d) * V.d)));
            }
            out.push_back(e);
        }
    return out;
}

/** Constant transformation (id_X (x) T)_X for T in Hom_G(V,W). */
inline NatTransBlocks constant_transformation(const QuantumGroup& G, const Representation& V, const Representation& W,
                                              const Mat& Tm, const std::vector<int>& blocks) {
    NatTransBlocks e{V, W, blocks, {}};
    for (int s : blocks) e.eta.push_back(kron(Mat::Identity(G.table.dim(s), G.table.dim(s)), Tm));
    return e;
}

/** \brief Harmonic elements among the block data at (V,W), with the categorical Markov operator
 *  as a linear map on the products of Hom_G(U_s (x) V, U_s (x) W). */
struct NatHarmonic {
    int dimension = 0;
    int data_dimension = 0;
    bool exact = false;
};

inline Vec nat_flatten(const NatTransBlocks& e, const std::vector<int>& blocks) {
    std::vector<cd> v;
    for (int s : blocks) {
        int k = e.position(s);
        const Mat& m = e.eta[k];
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    }
    return Eigen::Map<Vec>(v.data(), Eigen::Index(v.size()));
}

inline NatHarmonic nat_harmonic(const QuantumGroup& G, const Measure& mu, const Representation& V,
                                const Representation& W, const std::vector<int>& blocks) {
    NatHarmonic h;
    auto basis = nat_trans_basis(G, V, W, blocks);
    h.data_dimension = int(basis.size());
    if (basis.empty()) return h;
    auto img0 = categorical_markov(G, mu, basis[0]);
    const auto& cert = img0.blocks;
    h.exact = cert.size() == blocks.size();
    Mat Bin(nat_flatten(basis[0], cert).size(), basis.size()), Bout(Bin.rows(), basis.size());
    for (size_t k = 0; k < basis.size(); ++k) {
        Bin.col(k) = nat_flatten(basis[k], cert);
        Bout.col(k) = nat_flatten(categorical_markov(G, mu, basis[k]), cert);
    }
    Mat Z = null_space(Mat(Bout - Bin), 1e-10);
    h.dimension = int(Z.cols());
    return h;
}

/** \brief eta_s(xi) = sum_j (a_j)_s xi (x) zeta_j for T = sum_j zeta_j (x) a_j in C_D(1, V) over a
 *  block dual D; blocks in D's layout. */
inline NatTransBlocks picture_from_cb(const RegularYDAlgebra& D, const Representation& V, const Morph& Tm) {
    const auto& G = *D.G;
    const auto& T = G.table;
    DualLayout L = dual_layout(D);
    NatTransBlocks e{trivial_rep(G.cg), V, L.blocks, {}};
    const int dV = V.d;
    for (int s : L.blocks) {
        const int d = T.dim(s);
        Mat m = Mat::Zero(size_t(d) * dV, d);
        for (int j = 0; j < dV; ++j)
            for (int a = 0; a < d; ++a)
                for (int i = 0; i < d; ++i) m(a * dV + j, i) = Tm.c[L.index(T, s, a, i)](j, 0);
        e.eta.push_back(m);
    }
    return e;
}

/** (id (x) P_mu) applied to the coefficients of T. */
inline Morph markov_on_morph(const MarkovOperator& M, const Morph& Tm) {
    Morph out = Tm;
    for (int r = 0; r < Tm.rows; ++r)
        for (int c = 0; c < Tm.cols; ++c) {
            Vec a(Tm.c.size());
            for (size_t k = 0; k < Tm.c.size(); ++k) a(k) = Tm.c[k](r, c);
            Vec b = M.P * a;
            for (size_t k = 0; k < Tm.c.size(); ++k) out.c[k](r, c) = b(k);
        }
    return out;
}

/** \brief The picture bijection C_D(1,V) -> block data at (1,V): lands in intertwiners, is injective,
 *  and commutes with the two Markov operators on the certified blocks. */
inline ValidationReport picture_report(const RegularYDAlgebra& D, const MarkovOperator& M, const Measure& mu,
                                       const Representation& V, double tol) {
    ValidationReport rep;
    const auto& G = *D.G;
    Representation one = trivial_rep(G.cg);
    auto basis = cb_hom(D, one, V);
    MaxAcc nat, comm;
    long ev = 0;
    std::vector<int> certified_blocks;
    for (size_t k = 0; k < M.layout.blocks.size(); ++k)
        if (M.certified[k]) certified_blocks.push_back(M.layout.blocks[k]);
    Mat F;
    for (const auto& Tm : basis) {
        NatTransBlocks e = picture_from_cb(D, V, Tm);
        nat(naturality_residual(G, e));
        NatTransBlocks lhs = picture_from_cb(D, V, markov_on_morph(M, Tm));
        NatTransBlocks rhs = categorical_markov(G, mu, e);
        for (int s : certified_blocks) {
            int a = lhs.position(s), b = rhs.position(s);
            if (b < 0) throw Error("picture_report: categorical Markov output lacks a certified block");
            comm(max_abs(Mat(lhs.eta[a] - rhs.eta[b])));
        }
        ++ev;
        Vec f = nat_flatten(e, e.blocks);
        F.conservativeResize(f.size(), F.cols() + 1);
        F.col(F.cols() - 1) = f;
    }
    Check& c1 = rep.add("lands_in_intertwiners", nat.v, tol);
    c1.evaluated = ev;
    Check& c2 = rep.add("markov_commutes", comm.v, tol);
    c2.evaluated = ev;
    int rk = basis.empty() ? 0 : matrix_rank(F, 1e-9);
    Check& c3 = rep.add("injective_deficiency", double(int(basis.size()) - rk), 0.0);
    c3.evaluated = 1;
    int nat_dim = int(nat_trans_basis(G, one, V, dual_layout(D).blocks).size());
    Check& c4 = rep.add("surjective_deficiency", double(nat_dim - rk), 0.0);
    c4.evaluated = 1;
    rep.notes.push_back("C_D(1,V) dimension " + std::to_string(basis.size()) + ", block data dimension " +
                        std::to_string(nat_dim) + ", certified blocks " + std::to_string(certified_blocks.size()) +
                        " of " + std::to_string(M.layout.blocks.size()));
    return rep;
}

}  // namespace ydcat

#endif
