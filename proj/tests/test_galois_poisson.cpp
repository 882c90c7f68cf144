#include "ydcat/poisson.hpp"
#include "ydcat/galois.hpp"
#include "ydcat/suq2.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ydcat;

namespace {

QG z2() {
    static QG G = make_finite_group(function_algebra(cyclic_group(2)), "z2");
    return G;
}
QG s3() {
    static QG G = make_finite_group(function_algebra(symmetric_group3()), "s3");
    return G;
}
QG kp() {
    static QG G = make_finite_group(kac_paljutkin(), "kac_paljutkin");
    return G;
}

SubgroupData sub(std::vector<int> elems, const std::string& name) {
    return restriction_to_subgroup(symmetric_group3(), std::move(elems), name);
}

/** Central element sum_s f(s) 1_s of a dual algebra. */
Vec central(const QuantumGroup& G, const DualLayout& L, const std::vector<double>& f) {
    Vec v = Vec::Zero(L.dim);
    for (int s : L.blocks)
        for (int i = 0; i < G.table.dim(s); ++i) v(L.index(G.table, s, i, i)) = f[s];
    return v;
}

}  // namespace

TEST_CASE("quotient coideal dimensions are the index of the subgroup", "[galois]") {
    CHECK(quotient_coideal(s3(), sub({0, 1, 2, 3, 4, 5}, "s3")).basis.cols() == 1);
    CHECK(quotient_coideal(s3(), sub({0}, "e")).basis.cols() == 6);
    CHECK(quotient_coideal(s3(), sub({0, 3}, "z2")).basis.cols() == 3);
    CHECK(quotient_coideal(s3(), sub({0, 1, 2}, "a3")).basis.cols() == 2);
}

TEST_CASE("a subset that is not a subgroup is rejected", "[galois]") {
    CHECK_THROWS(sub({0, 3, 4}, "bad"));
}

TEST_CASE("reconstruction recovers the functions vanishing on the subgroup", "[galois]") {
    const std::vector<std::vector<int>> groups = {{0, 3}, {0, 1, 2}, {0}, {0, 1, 2, 3, 4, 5}};
    for (const auto& h : groups) {
        SubgroupData S = sub(h, "h");
        CoidealSubalgebra C = quotient_coideal(s3(), S);
        ReconstructionData R = reconstruct_subgroup(s3(), C.basis, 1e-10);
        CHECK(R.report.passed());
        const int k = 6 - int(h.size());
        REQUIRE(R.kernel.cols() == k);
        if (k == 0) continue;
        Mat expected(6, k);
        int c = 0;
        for (int g = 0; g < 6; ++g)
            if (std::find(h.begin(), h.end(), g) == h.end()) expected.col(c++) = s3()->cg.e(g);
        CHECK(span_defect(R.kernel, expected) < 1e-10);
        CHECK(hopf_ideal_check(s3()->cg, R.kernel, 1e-10).passed());
    }
}

TEST_CASE("coideal enumeration is exhaustive and self-consistent", "[galois]") {
    auto z = enumerate_coideals(z2());
    CHECK(z.exhaustive);
    CHECK(z.coideals.size() == 2);
    auto k = enumerate_coideals(kp());
    CHECK(k.exhaustive);
    CHECK(k.coideals.size() == 6);
    for (const auto& c : k.coideals) {
        CHECK(c.certificate.passed());
        CHECK(c.reconstruction_distance < 1e-9);
    }
}

TEST_CASE("Galois map of the adjoint algebra is bijective", "[galois]") {
    for (QG G : {z2(), s3()}) {
        RegularYDAlgebra A = adjoint_yd_on_CG(G);
        GaloisData g = galois_map(A, 1e-9);
        CHECK(g.invertible);
        CHECK(g.rank == A.dim * A.dim);
        CHECK(g.report.passed());
        REQUIRE(g.mu_action.size() == A.act_op.size());
        for (size_t p = 0; p < A.act_op.size(); ++p) CHECK(max_abs(Mat(g.mu_action[p] - A.act_op[p])) < 1e-9);
    }
}

TEST_CASE("Galois map of a proper quotient is not bijective", "[galois]") {
    CoidealSubalgebra C = quotient_coideal(s3(), sub({0, 3}, "z2"));
    GaloisData g = galois_map(*C.yd, 1e-9);
    CHECK_FALSE(g.invertible);
    // injective, but B (x) B is smaller than C[G] (x) B
    CHECK(g.rank == C.yd->dim * C.yd->dim);
    CHECK(g.rank < C.yd->ncg() * C.yd->dim);
}

TEST_CASE("conjugate-equation identity in the fiber algebra", "[galois]") {
    CHECK(galois_rbar_identity(s3(), 1e-9).passed());
    CHECK(galois_rbar_identity(kp(), 1e-9).passed());
}

TEST_CASE("spectral functor: full multiplicity only for the adjoint algebra", "[galois]") {
    SpectralFunctorData a = spectral_functor(adjoint_yd_on_CG(s3()), 1e-9);
    CHECK(a.full_multiplicity);
    CHECK(a.dims == std::vector<int>{1, 1, 2});
    CHECK(a.report.passed());
    // restriction to {e, (12)}: trivial -> 1, sign -> 0, standard -> 1 fixed vector
    CoidealSubalgebra C = quotient_coideal(s3(), sub({0, 3}, "z2"));
    SpectralFunctorData q = spectral_functor(*C.yd, 1e-9);
    CHECK_FALSE(q.full_multiplicity);
    CHECK(q.dims == std::vector<int>{1, 0, 1});
    CHECK(q.report.passed());
}

TEST_CASE("the state phi_U is normalized and invariant", "[poisson]") {
    for (QG G : {s3(), kp()}) {
        const auto& T = G->table;
        Rng rng(5);
        for (int s = 0; s < T.size(); ++s) {
            CHECK(std::abs(phi_state(T.conj[s], Mat::Identity(T.dim(s), T.dim(s))) - 1.0) < 1e-12);
            Mat X = random_matrix(T.dim(s), T.dim(s), rng);
            CHECK(phi_invariance_residual(G->cg, T.irreps[s], T.conj[s], X) < 1e-10);
        }
    }
}

TEST_CASE("Markov operators: delta at the trivial rep and the Z2 translation", "[poisson]") {
    RegularYDAlgebra D = dual_yd(z2());
    MarkovOperator M0 = markov_operator(D, delta_measure(z2()->table, 0));
    CHECK(max_abs(Mat(M0.P - Mat::Identity(2, 2))) < 1e-12);
    MarkovOperator M1 = markov_operator(D, delta_measure(z2()->table, 1));
    Mat swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(max_abs(Mat(M1.P - swap)) < 1e-12);
    CHECK(harmonic_space(D, M0).basis.cols() == 2);
    CHECK(harmonic_space(D, M1).basis.cols() == 1);
}

TEST_CASE("Markov operator on the center of the S3 dual matches the fusion walk", "[poisson]") {
    RegularYDAlgebra D = dual_yd(s3());
    MarkovOperator M = markov_operator(D, delta_measure(s3()->table, 2));
    REQUIRE(M.complete());
    CHECK(markov_report(D, M, 1e-10).passed());
    Rng rng(3);
    for (int k = 0; k < 5; ++k) {
        Vec r = random_vec(3, rng);
        std::vector<double> f = {r(0).real(), r(1).real(), r(2).real()};
        // U_2 (x) U_0 = U_2 (x) U_1 = U_2 and U_2 (x) U_2 = U_0 + U_1 + U_2, weighted by dims
        std::vector<double> g = {f[2], f[2], 0.25 * (f[0] + f[1] + 2.0 * f[2])};
        CHECK(max_abs(Vec(M.apply(central(*s3(), M.layout, f)) - central(*s3(), M.layout, g))) < 1e-12);
    }
    CHECK(max_abs(Vec(M.apply(D.unit) - D.unit)) < 1e-12);
    CHECK(harmonic_space(D, M).basis.cols() == 1);
}

TEST_CASE("Markov operators compose by convolution", "[poisson][property]") {
    for (QG G : {s3(), kp()}) {
        RegularYDAlgebra D = dual_yd(G);
        const auto& T = G->table;
        Measure mu = make_measure(T, {{T.labels[1], 0.3}, {T.labels.back(), 0.7}});
        Measure nu = delta_measure(T, int(T.size()) - 1);
        Measure conv = convolve(*G, mu, nu);
        double total = 0;
        for (double w : conv.w) total += w;
        CHECK(std::abs(total - 1.0) < 1e-12);
        Mat lhs = markov_operator(D, mu).P * markov_operator(D, nu).P;
        CHECK(max_abs(Mat(lhs - markov_operator(D, conv).P)) < 1e-10);
    }
    Measure c = convolve(*s3(), delta_measure(s3()->table, 2), delta_measure(s3()->table, 2));
    CHECK(std::abs(c.w[0] - 0.25) < 1e-12);
    CHECK(std::abs(c.w[1] - 0.25) < 1e-12);
    CHECK(std::abs(c.w[2] - 0.5) < 1e-12);
}

TEST_CASE("Cesaro projection with peripheral spectrum", "[poisson]") {
    RegularYDAlgebra D = dual_yd(z2());
    MarkovOperator M = markov_operator(D, delta_measure(z2()->table, 1));
    CesaroData C = cesaro_projection(M, 1e-10);
    CHECK(C.report.passed());
    REQUIRE(C.peripheral.size() == 1);
    CHECK(std::abs(C.peripheral[0] + 1.0) < 1e-10);
    CHECK(max_abs(Mat(C.E1 - Mat::Constant(2, 2, 0.5))) < 1e-12);
    Vec z(2);
    z << 1.0, 0.0;
    CHECK(max_abs(Vec(cesaro_mean(M, z, 2000) - C.E1 * z)) < 1e-3);
    HarmonicSpace H = harmonic_space(D, M);
    CHECK(cesaro_algebra_report(D, C, H.basis, 1e-10).passed());
}

TEST_CASE("Cesaro product on the harmonic space of Kac-Paljutkin", "[poisson]") {
    RegularYDAlgebra D = dual_yd(kp());
    MarkovOperator M = markov_operator(D, delta_measure(kp()->table, 4));
    CesaroData C = cesaro_projection(M, 1e-9);
    CHECK(C.report.passed());
    HarmonicSpace H = harmonic_space(D, M, 1e-9);
    CHECK(H.exact);
    CHECK(H.report.passed());
    CHECK(cesaro_algebra_report(D, C, H.basis, 1e-9).passed());
}

TEST_CASE("categorical Markov operator fixes constant transformations", "[poisson]") {
    const auto& T = s3()->table;
    std::vector<int> blocks = {0, 1, 2};
    Measure mu = delta_measure(T, 2);
    const Representation& V = T.irreps[2];
    auto homs = intertwiner_space(V, V);
    REQUIRE(homs.size() == 1);
    NatTransBlocks e = constant_transformation(*s3(), V, V, homs[0], blocks);
    CHECK(naturality_residual(*s3(), e) < 1e-12);
    NatTransBlocks img = categorical_markov(*s3(), mu, e);
    CHECK(img.blocks == blocks);
    CHECK(naturality_residual(*s3(), img) < 1e-10);
    for (size_t k = 0; k < blocks.size(); ++k) CHECK(max_abs(Mat(img.eta[k] - e.eta[k])) < 1e-10);
    Representation one = trivial_rep(s3()->cg);
    NatHarmonic h = nat_harmonic(*s3(), mu, one, one, blocks);
    CHECK(h.exact);
    CHECK(h.data_dimension == 3);
    CHECK(h.dimension == 1);
}

TEST_CASE("the two Markov pictures agree", "[poisson]") {
    for (QG G : {z2(), s3(), kp()}) {
        RegularYDAlgebra D = dual_yd(G);
        const auto& T = G->table;
        Measure mu = delta_measure(T, int(T.size()) - 1);
        MarkovOperator M = markov_operator(D, mu);
        for (int v = 0; v < T.size(); ++v) CHECK(picture_report(D, M, mu, T.irreps[v], 1e-8).passed());
    }
}

TEST_CASE("truncated SU_q(2): certified prefix, outer approximation, truncation errors", "[poisson][suq2]") {
    QG G = make_suq2(0.5, 4);
    RegularYDAlgebra D = dual_yd(G, 4);
    Measure mu = make_measure(G->table, {{"1/2", 1.0}});
    MarkovOperator M = markov_operator(D, mu);
    CHECK_FALSE(M.complete());
    CHECK(M.certified_dim > 0);
    CHECK(M.certified_dim < M.layout.dim);
    CHECK_THROWS_AS(M.apply(D.unit), TruncationExceeded);
    CHECK_THROWS_AS(cesaro_projection(M), TruncationExceeded);
    CHECK(max_abs(Vec(M.apply_certified(D.unit) - D.unit.head(M.certified_dim))) < 1e-9);
    HarmonicSpace H = harmonic_space(D, M, 1e-7);
    CHECK_FALSE(H.exact);
    CHECK(H.report.passed());
}
