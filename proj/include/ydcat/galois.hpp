#ifndef YDCAT_GALOIS_HPP
#define YDCAT_GALOIS_HPP

#include "ydcat/duality.hpp"

#include <Eigen/Eigenvalues>

namespace ydcat {

/** \brief Quantum subgroup given by a surjective Hopf *-homomorphism p: C[G] -> C[H]. */
struct SubgroupData {
    std::string name;
    HopfAlgebraData H;
    Mat p;  // H.dim x G.dim
};

/** Restriction C(G) -> C(K) for a subgroup K of a finite group, given by its elements. */
inline SubgroupData restriction_to_subgroup(const FiniteGroup& G, std::vector<int> elems, const std::string& name) {
    std::sort(elems.begin(), elems.end());
    if (elems.empty() || elems[0] != 0) throw StructureError("subgroup must contain the identity");
    const int k = int(elems.size());
    std::vector<int> pos(G.order(), -1);
    for (int a = 0; a < k; ++a) pos[elems[a]] = a;
    FiniteGroup K;
    K.table.assign(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a) {
        K.names.push_back(G.names[elems[a]]);
        for (int b = 0; b < k; ++b) {
            int c = pos[G.table[elems[a]][elems[b]]];
            if (c < 0) throw StructureError("elements are not closed under multiplication");
            K.table[a][b] = c;
        }
    }
    SubgroupData S{name, function_algebra(K), Mat::Zero(k, G.order())};
    for (int a = 0; a < k; ++a) S.p(a, elems[a]) = 1.0;
    return S;
}

/** \brief Checks that p is a surjective unital *-homomorphism intertwining coproduct, counit and antipode. */
inline ValidationReport validate_subgroup(const HopfAlgebraData& G, const SubgroupData& S, double tol) {
    ValidationReport rep;
    const HopfAlgebraData& H = S.H;
    const Mat& p = S.p;
    if (p.rows() != H.dim || p.cols() != G.dim) {
        rep.add("shape", std::numeric_limits<double>::infinity(), tol);
        return rep;
    }
    MaxAcc mul, cop, st, an, cu;
    for (int a = 0; a < G.dim; ++a) {
        for (int b = 0; b < G.dim; ++b) mul(max_abs(Vec(p * G.mul(G.e(a), G.e(b)) - H.mul(p.col(a), p.col(b)))));
        cop(max_abs(Mat(p * G.coproduct(G.e(a)) * p.transpose() - H.coproduct(p.col(a)))));
        st(max_abs(Vec(p * G.adj(G.e(a)) - H.adj(p.col(a)))));
        an(max_abs(Vec(p * G.S(G.e(a)) - H.S(p.col(a)))));
        cu(std::abs(G.counit(a) - H.eps(p.col(a))));
    }
    rep.add("multiplicative", mul.v, tol);
    rep.add("unital", max_abs(Vec(p * G.unit - H.unit)), tol);
    rep.add("comultiplicative", cop.v, tol);
    rep.add("star", st.v, tol);
    rep.add("antipode", an.v, tol);
    rep.add("counit", cu.v, tol);
    Check& c = rep.add("rank_deficiency", double(H.dim - matrix_rank(p)), 0.0);
    c.evaluated = 1;
    return rep;
}

/** \brief {x : (id (x) q) Delta(x) = x (x) q(1)} for a linear map q; depends on ker q only. */
inline Mat invariant_coideal(const HopfAlgebraData& G, const Mat& q) {
    const int n = G.dim, m = int(q.rows());
    Vec q1 = q * G.unit;
    Mat M(size_t(n) * m, n);
    for (int a = 0; a < n; ++a) {
        Mat X = G.coproduct(G.e(a)) * q.transpose() - G.e(a) * q1.transpose();
        for (int j = 0; j < n; ++j) M.block(size_t(j) * m, a, m, 1) = X.row(j).transpose();
    }
    return null_space(M);
}

struct CoidealSubalgebra {
    std::string name;
    Mat basis;  // columns in C[G] coordinates, orthonormal
    std::shared_ptr<const RegularYDAlgebra> yd;
};

/** C[G/H] = {x : (id (x) p) Delta(x) = x (x) 1} with the restricted adjoint YD structure. */
inline CoidealSubalgebra quotient_coideal(QG G, const SubgroupData& S, double tol = 1e-9) {
    ValidationReport v = validate_subgroup(G->cg, S, tol);
    if (!v.passed()) {
        std::string why;
        for (const auto& c : v.checks)
            if (!c.passed()) why += " " + c.name;
        throw StructureError("restriction map is not a surjective Hopf *-homomorphism:" + why);
    }
    CoidealSubalgebra C;
    C.name = "C[" + G->name + "/" + S.name + "]";
    C.basis = invariant_coideal(G->cg, S.p);
    auto adj = std::make_shared<const RegularYDAlgebra>(adjoint_yd_on_CG(G));
    C.yd = std::make_shared<const RegularYDAlgebra>(sub_yd(*adj, C.basis, C.name));
    return C;
}

struct ReconstructionData {
    std::vector<Mat> hom1;  // per table irrep, basis of Hom_H(1, U_s) inside H_s
    Mat kernel;             // recovered kernel of the restriction, orthonormal columns
    ValidationReport report;
};

/** \brief Recovers the kernel of C[G] -> C[H] from an invariant subalgebra C (columns in C[G]):
 *  Hom_H(1,U_s) is spanned by the rows of the U_s-coefficient matrices of elements of C,
 *  Hom_H(U_s,U_t) comes from Hom_H(1, U_t (x) conj U_s) via T = V rho_s^{-1/2}, and x = sum c^s_ij u^s_ij
 *  lies in the kernel iff sum c^s_ij X^s_ij = 0 for every family (X_s) commuting with all of them. */
inline ReconstructionData reconstruct_subgroup(QG G, const Mat& C, double tol = 1e-9) {
    const HopfAlgebraData& cg = G->cg;
    const auto& T = G->table;
    ReconstructionData R;
    Mat Q = range_basis(C);
    RegularYDAlgebra adj = adjoint_yd_on_CG(G);
    MaxAcc act_def, coact_def;
    for (int c = 0; c < Q.cols(); ++c) {
        for (int p = 0; p < cg.dim; ++p) act_def(span_defect(Q, adj.act(cg.e(p), Q.col(c))));
        coact_def(span_defect(Q, cg.coproduct(Q.col(c)).transpose()));
    }
    R.report.add("action_stable", act_def.v, tol);
    R.report.add("coaction_stable", coact_def.v, tol);
    if (act_def.v > tol)
        throw StructureError("subalgebra is not stable under the adjoint action (defect " + std::to_string(act_def.v) +
                             "); not of quotient type");
    PeterWeyl pw = peter_weyl(*G);
    Mat Y = pw.coords * Q;
    std::vector<int> off(T.size() + 1, 0);
    for (int s = 0; s < T.size(); ++s) off[s + 1] = off[s] + T.dim(s) * T.dim(s);
    for (int s = 0; s < T.size(); ++s) {
        const int d = T.dim(s);
        Mat rows(d, Y.cols() * d);
        for (int c = 0; c < Y.cols(); ++c)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) rows(j, c * d + i) = Y(off[s] + i * d + j, c);
        R.hom1.push_back(range_basis(rows, 1e-9));
    }
    // families (X_s) with T X_s = X_t T for all T in Hom_H(U_s, U_t); they span the image of C[H]^*
    const int n = cg.dim;
    std::vector<Mat> eqs;
    long nhoms = 0;
    for (int s = 0; s < T.size(); ++s) {
        const int ds = T.dim(s);
        const auto& cs = T.conj[s];
        Mat rm = hermitian_power(cs.rho, -0.5);
        for (int t = 0; t < T.size(); ++t) {
            const int dt = T.dim(t);
            Fusion f = decompose_in_table(T, tensor(cg, T.irreps[t], cs.conj_rep));
            for (size_t k = 0; k < f.labels.size(); ++k) {
                const Mat& F = R.hom1[f.labels[k]];
                for (int c = 0; c < F.cols(); ++c) {
                    Vec v = f.isometries[k] * F.col(c);
                    Mat V(dt, ds);
                    for (int a = 0; a < dt; ++a)
                        for (int b = 0; b < ds; ++b) V(a, b) = v(a * ds + b);
                    Mat Tm = V * rm;
                    ++nhoms;
                    Mat E = Mat::Zero(size_t(dt) * ds, n);
                    for (int a = 0; a < dt; ++a)
                        for (int b = 0; b < ds; ++b) {
                            for (int m = 0; m < ds; ++m) E(a * ds + b, off[s] + m * ds + b) += Tm(a, m);
                            for (int m = 0; m < dt; ++m) E(a * ds + b, off[t] + a * dt + m) -= Tm(m, b);
                        }
                    eqs.push_back(E);
                }
            }
        }
    }
    size_t rows = 0;
    for (const auto& E : eqs) rows += E.rows();
    Mat M(rows, n);
    rows = 0;
    for (const auto& E : eqs) {
        M.block(rows, 0, E.rows(), n) = E;
        rows += E.rows();
    }
    Mat X = rows ? null_space(M) : Mat(Mat::Identity(n, n));
    R.report.notes.push_back("H-intertwiners between table irreducibles used: " + std::to_string(nhoms) +
                             ", image of C[H]^* has dimension " + std::to_string(X.cols()));
    Mat ann = null_space(Mat(X.transpose()));
    Mat K = pw.basis * ann;
    R.kernel = K.cols() ? range_basis(K) : K;
    return R;
}

/** \brief Hopf *-ideal test for I (orthonormal columns): two-sided ideal, coideal, eps(I) = 0,
 *  S(I) in I, I^* = I. */
inline ValidationReport hopf_ideal_check(const HopfAlgebraData& G, const Mat& I, double tol) {
    ValidationReport rep;
    const int n = G.dim;
    Mat Qc = null_space(Mat(I.adjoint()));  // orthonormal complement
    Mat q = Qc.adjoint();
    MaxAcc id, co, ep, an, st;
    for (int c = 0; c < I.cols(); ++c) {
        Vec x = I.col(c);
        for (int a = 0; a < n; ++a) {
            id(max_abs(Vec(q * G.mul(x, G.e(a)))));
            id(max_abs(Vec(q * G.mul(G.e(a), x))));
        }
        co(max_abs(Mat(q * G.coproduct(x) * q.transpose())));
        ep(std::abs(G.eps(x)));
        an(max_abs(Vec(q * G.S(x))));
        st(max_abs(Vec(q * G.adj(x))));
    }
    rep.add("two_sided_ideal", id.v, tol);
    rep.add("coideal", co.v, tol);
    rep.add("counit_vanishes", ep.v, tol);
    rep.add("antipode_stable", an.v, tol);
    rep.add("star_stable", st.v, tol);
    return rep;
}

struct EnumeratedCoideal {
    Mat basis;
    std::vector<int> components;
    bool quotient_type = false;
    double reconstruction_distance = 0.0;
    ValidationReport certificate;
};

struct CoidealEnumeration {
    bool exhaustive = false;
    int components = 0;
    std::vector<EnumeratedCoideal> coideals;
    ValidationReport report;
};

/** \brief All alpha- and |>-stable unital *-subalgebras of C[G] for a finite G.
 *  The stable subspaces are the sums of isotypic components of C[G] under the operators
 *  e_p |> . and (f_j (x) id) alpha; this is exhaustive when the commutant of those
 *  operators is commutative (multiplicity-free). Each subalgebra found is certified to be
 *  of quotient type by reconstructing its kernel, checking that it is a Hopf *-ideal and
 *  recomputing the invariant subalgebra from it. */
inline CoidealEnumeration enumerate_coideals(QG G, double tol = 1e-9, uint64_t seed = 7) {
    const HopfAlgebraData& cg = G->cg;
    if (cg.truncated()) throw Error("coideal enumeration is implemented for finite quantum groups only");
    const int n = cg.dim;
    CoidealEnumeration out;
    RegularYDAlgebra A = adjoint_yd_on_CG(G);
    std::vector<Mat> ops = A.act_op;
    for (int j = 0; j < n; ++j) {
        Mat M(n, n);
        for (int a = 0; a < n; ++a) M.col(a) = A.coaction(A.e(a)).row(j).transpose();
        ops.push_back(M);
    }
    // commutant: X O = O X, X flattened row-major
    Mat Mc = Mat::Zero(size_t(n) * n * ops.size(), n * n);
    for (size_t o = 0; o < ops.size(); ++o)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                size_t row = o * n * n + a * n + b;
                for (int m = 0; m < n; ++m) {
                    Mc(row, a * n + m) += ops[o](m, b);
                    Mc(row, m * n + b) -= ops[o](a, m);
                }
            }
    Mat Z = null_space(Mc);
    const int cdim = int(Z.cols());
    Rng rng(seed);
    Vec w = random_vec(cdim, rng);
    Mat X(n, n);
    Vec z = Z * w;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) X(a, b) = z(a * n + b);
    Eigen::ComplexEigenSolver<Mat> es(X);
    std::vector<cd> vals;
    std::vector<Mat> comps;
    for (int k = 0; k < n; ++k) {
        cd l = es.eigenvalues()(k);
        bool seen = false;
        for (cd v : vals)
            if (std::abs(v - l) < 1e-6) seen = true;
        if (seen) continue;
        vals.push_back(l);
        comps.push_back(null_space(Mat(X - l * Mat::Identity(n, n)), 1e-8));
    }
    int total = 0;
    for (const auto& c : comps) total += int(c.cols());
    bool commutative = true;
    for (int a = 0; a < cdim && commutative; ++a)
        for (int b = 0; b < cdim; ++b) {
            Mat Xa(n, n), Xb(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Xa(i, j) = Z(i * n + j, a);
                    Xb(i, j) = Z(i * n + j, b);
                }
            if (max_abs(Mat(Xa * Xb - Xb * Xa)) > 1e-8) {
                commutative = false;
                break;
            }
        }
    out.components = int(comps.size());
    out.exhaustive = commutative && total == n && int(comps.size()) == cdim;
    out.report.notes.push_back("commutant dimension " + std::to_string(cdim) + ", isotypic components " +
                               std::to_string(comps.size()) + (commutative ? ", commutative" : ", noncommutative"));
    Check& ex = out.report.add("multiplicity_free", out.exhaustive ? 0.0 : 1.0, 0.0);
    ex.evaluated = 1;
    if (!out.exhaustive) return out;
    const int m = int(comps.size());
    if (m > 20) throw Error("too many isotypic components to enumerate");
    long quotient = 0, found = 0;
    MaxAcc cert;
    for (long mask = 1; mask < (1L << m); ++mask) {
        Mat S(n, 0);
        std::vector<int> which;
        for (int k = 0; k < m; ++k)
            if (mask >> k & 1) {
                which.push_back(k);
                Mat T(n, S.cols() + comps[k].cols());
                T << S, comps[k];
                S = T;
            }
        Mat Q = range_basis(S);
        if (span_defect(Q, cg.unit) > 1e-8) continue;
        bool closed = true;
        for (int a = 0; a < Q.cols() && closed; ++a) {
            if (span_defect(Q, cg.adj(Q.col(a))) > 1e-8) closed = false;
            for (int b = 0; b < Q.cols() && closed; ++b)
                if (span_defect(Q, cg.mul(Q.col(a), Q.col(b))) > 1e-8) closed = false;
        }
        if (!closed) continue;
        ++found;
        EnumeratedCoideal e;
        e.basis = Q;
        e.components = which;
        ReconstructionData R = reconstruct_subgroup(G, Q, tol);
        e.certificate = hopf_ideal_check(cg, R.kernel, tol);
        Mat q = null_space(Mat(R.kernel.adjoint())).adjoint();
        Mat back = invariant_coideal(cg, q);
        e.reconstruction_distance = back.cols() == Q.cols() ? subspace_distance(back, Q) : 1.0;
        e.certificate.add("coideal_from_kernel", e.reconstruction_distance, tol);
        e.quotient_type = e.certificate.passed();
        if (e.quotient_type) ++quotient;
        cert(e.certificate.max_residual());
        out.coideals.push_back(std::move(e));
    }
    out.report.notes.push_back("invariant subalgebras found " + std::to_string(found) + ", of quotient type " +
                               std::to_string(quotient));
    Check& q = out.report.add("non_quotient_type", double(found - quotient), 0.0);
    q.evaluated = found;
    out.report.add("certificate", cert.v, tol);
    return out;
}

/** \brief Gamma(x (x) y) = x_(1) (x) x_(2) y from B (x) B to C[G] (x) B, with its inverse and the
 *  Miyashita-Ulbrich action x |> a = Gamma^{-1}(x (x) 1)_1 a Gamma^{-1}(x (x) 1)_2 when bijective. */
struct GaloisData {
    Mat gamma;  // (n*N) x (N*N), row j*N + k, column a*N + b
    Mat gamma_inv;
    int rank = 0;
    bool invertible = false;
    std::vector<Mat> mu_action;  // per C[G] basis element
    ValidationReport report;
};

inline Vec galois_apply(const RegularYDAlgebra& A, const Vec& x, const Vec& y) {
    const int N = A.dim;
    Vec out = Vec::Zero(size_t(A.ncg()) * N);
    Mat X = A.coaction(x);
    for (int j = 0; j < A.ncg(); ++j)
        for (int k = 0; k < N; ++k)
            if (X(j, k) != cd(0)) out.segment(size_t(j) * N, N) += X(j, k) * A.mul(A.e(k), y);
    return out;
}

inline GaloisData galois_map(const RegularYDAlgebra& A, double tol = 1e-9) {
    const int N = A.dim, n = A.ncg();
    GaloisData g;
    g.gamma = Mat(size_t(n) * N, size_t(N) * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) g.gamma.col(size_t(a) * N + b) = galois_apply(A, A.e(a), A.e(b));
    g.rank = matrix_rank(g.gamma, 1e-10);
    g.invertible = n == N && g.rank == N * N;
    if (!g.invertible) {
        g.report.notes.push_back("not Hopf-Galois: rank " + std::to_string(g.rank) + " for a map from dimension " +
                                 std::to_string(N * N) + " to dimension " + std::to_string(n * N));
        return g;
    }
    g.gamma_inv = g.gamma.inverse();
    MaxAcc inv, agree;
    inv(max_abs(Mat(g.gamma_inv * g.gamma - Mat::Identity(N * N, N * N))));
    const HopfAlgebraData& H = A.G->cg;
    for (int p = 0; p < n; ++p) {
        Vec v = g.gamma_inv * kron(H.e(p), A.unit);
        Mat M = Mat::Zero(N, N);
        for (int x = 0; x < N; ++x) {
            Vec r = Vec::Zero(N);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    cd c = v(size_t(a) * N + b);
                    if (std::abs(c) < 1e-15) continue;
                    r += c * A.mul(A.mul(A.e(a), A.e(x)), A.e(b));
                }
            M.col(x) = r;
            if (A.act_known(p, x)) agree(max_abs(Vec(r - A.act_op[p].col(x))));
        }
        g.mu_action.push_back(M);
    }
    g.report.add("inverse", inv.v, tol);
    g.report.add("mu_action_matches", agree.v, tol);
    return g;
}

/** \brief sum_l Gamma(pi(conj xi_i (x) T_l) (x) pi(conj conj xi_j (x) S_l)) against rho_j^{1/2} u_ij (x) 1 for
 *  Rbar_U = sum_l T_l (x) S_l, on the fiber-functor realization of C[G]. */
inline ValidationReport galois_rbar_identity(QG G, double tol = 1e-9) {
    ValidationReport rep;
    CategoricalYD C = build_yd_from_category(provider_fiber(G));
    const RegularYDAlgebra& B = C.alg;
    const RegularYDAlgebra& K = *C.P.K;
    const auto& T = G->table;
    MaxAcc acc;
    long ev = 0;
    for (int s = 0; s < T.size(); ++s) {
        const int d = T.dim(s);
        const auto& cj = T.conj[s];
        Mat rh = hermitian_power(cj.rho, 0.5);
        double offdiag = max_abs(Mat(cj.rho - Mat(cj.rho.diagonal().asDiagonal())));
        if (offdiag > 1e-12) throw Error("galois_rbar_identity expects rho diagonal in the table basis");
        Fusion fc = decompose_in_table(T, cj.conj_rep);
        Fusion fs = decompose_in_table(T, T.irreps[s]);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Vec lhs = Vec::Zero(size_t(G->cg.dim) * B.dim);
                for (int l = 0; l < d; ++l) {
                    Morph Tl = morph_scalar(K, Mat(rh.col(l)));
                    Morph Sl = morph_scalar(K, Mat(unit_vec(d, l)));
                    Vec x = C.project_piece(piece_from(T.irreps[s], unit_vec(d, i), Tl, K), fs);
                    Vec y = C.project_piece(piece_from(cj.conj_rep, unit_vec(d, j), Sl, K), fc);
                    lhs += galois_apply(B, x, y);
                }
                Vec rhs = std::sqrt(cj.rho(j, j).real()) * kron(Vec(T.irreps[s].at(i, j)), B.unit);
                acc(max_abs(Vec(lhs - rhs)));
                ++ev;
            }
    }
    Check& c = rep.add("rbar_identity", acc.v, tol);
    c.evaluated = ev;
    return rep;
}

/** \brief E(U_s) = C_B(1, U_s) with inner product S^* T = (T,S) 1, and the maps
 *  E_2: E(U) (x) E(V) -> E(U (x) V), T (x) S -> (T (x) id) S. */
struct SpectralFunctorData {
    std::vector<int> dims;
    bool full_multiplicity = false;
    std::vector<std::array<int, 2>> pair_dims;  // (dim E(U_s) dim E(U_t), dim E(U_s (x) U_t)) per pair s*size+t
    ValidationReport report;
};

inline SpectralFunctorData spectral_functor(const RegularYDAlgebra& A, double tol = 1e-9) {
    if (fixed_points(A).cols() != 1) throw StructureError("spectral functor needs an ergodic action (dim B^G = 1)");
    const auto& G = *A.G;
    const auto& T = G.table;
    const HopfAlgebraData& H = G.cg;
    SpectralFunctorData S;
    Representation one = trivial_rep(H);
    std::vector<std::vector<Morph>> E;
    MaxAcc scal;
    for (int s = 0; s < T.size(); ++s) {
        auto basis = cb_hom(A, one, T.irreps[s]);
        const int m = int(basis.size());
        Mat g(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                Morph x = morph_compose(A, morph_adjoint(A, basis[a]), basis[b]);
                Vec v(A.dim);
                for (int k = 0; k < A.dim; ++k) v(k) = x.c[k](0, 0);
                cd c = (A.unit.adjoint() * v)(0) / A.unit.squaredNorm();
                scal(max_abs(Vec(v - c * A.unit)));
                g(a, b) = c;
            }
        std::vector<Morph> on;
        if (m) {
            Mat w = hermitian_power(g, -0.5);
            for (int a = 0; a < m; ++a) {
                Morph t = morph_zero(A, T.dim(s), 1);
                for (int b = 0; b < m; ++b) t = morph_add(t, basis[b], w(b, a));
                on.push_back(t);
            }
        }
        E.push_back(on);
        S.dims.push_back(m);
    }
    S.report.add("inner_product_scalar", scal.v, tol);
    MaxAcc iso, memb;
    bool all_unitary = true;
    for (int s = 0; s < T.size(); ++s)
        for (int t = 0; t < T.size(); ++t) {
            Representation st = G.tensor_irreps(s, t);
            int target = int(cb_hom(A, one, st).size());
            S.pair_dims.push_back({S.dims[s] * S.dims[t], target});
            if (S.dims[s] * S.dims[t] != target) all_unitary = false;
            std::vector<Morph> X;
            for (const auto& a : E[s])
                for (const auto& b : E[t]) {
                    X.push_back(morph_compose(A, morph_tensor_right(a, T.dim(t)), b));
                    memb(cb_residual(A, one, st, X.back()));
                }
            for (size_t a = 0; a < X.size(); ++a)
                for (size_t b = 0; b < X.size(); ++b) {
                    Morph x = morph_compose(A, morph_adjoint(A, X[a]), X[b]);
                    Vec v(A.dim);
                    for (int k = 0; k < A.dim; ++k) v(k) = x.c[k](0, 0);
                    iso(max_abs(Vec(v - (a == b ? 1.0 : 0.0) * A.unit)));
                }
        }
    S.report.add("e2_lands_in_target", memb.v, tol);
    S.report.add("e2_isometric", iso.v, tol);
    S.full_multiplicity = all_unitary;
    return S;
}

}  // namespace ydcat

#endif
