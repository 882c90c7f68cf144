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

YD share(RegularYDAlgebra A) { return std::make_shared<const RegularYDAlgebra>(std::move(A)); }

Morph random_in(const std::vector<Morph>& basis, Rng& rng) {
    REQUIRE_FALSE(basis.empty());
    Vec c = random_vec(int(basis.size()), rng);
    Morph m = morph_scale(basis[0], c(0));
    for (size_t i = 1; i < basis.size(); ++i) m = morph_add(m, basis[i], c(int(i)));
    return m;
}

/** Dimension of {a : x |> a = eps(x) a for all x}. */
int action_invariants(const RegularYDAlgebra& A) {
    const HopfAlgebraData& H = A.G->cg;
    Mat M(size_t(H.dim) * A.dim, A.dim);
    for (int p = 0; p < H.dim; ++p) M.middleRows(size_t(p) * A.dim, A.dim) = A.act_op[p] - H.counit(p) * Mat::Identity(A.dim, A.dim);
    return int(null_space(M).cols());
}

}  // namespace

TEST_CASE("adjoint YD algebras of the finite fixtures satisfy every axiom", "[ydalg]") {
    auto rz = check_yd_axioms(adjoint_yd_on_CG(z2()), 0.0);
    CHECK(rz.passed());
    CHECK(rz.max_residual() == 0.0);
    CHECK(check_yd_axioms(adjoint_yd_on_CG(s3()), 1e-10).passed());
    CHECK(check_yd_axioms(adjoint_yd_on_CG(kp()), 1e-9).passed());
}

TEST_CASE("adjoint action on the abelian fixture is trivial", "[ydalg]") {
    RegularYDAlgebra A = adjoint_yd_on_CG(z2());
    for (int p = 0; p < 2; ++p) CHECK(max_abs(Mat(A.act_op[p] - A.G->cg.counit(p) * Mat::Identity(2, 2))) == 0.0);
}

TEST_CASE("adjoint C(S3): coaction fixed points and action invariants", "[ydalg]") {
    RegularYDAlgebra A = adjoint_yd_on_CG(s3());
    CHECK(fixed_points(A).cols() == 1);
    // C(S3) is commutative, so the adjoint action is the counit action
    CHECK(action_invariants(A) == 6);
}

TEST_CASE("counit action breaks braided commutativity only for noncommutative algebras", "[ydalg]") {
    auto commutative = check_yd_axioms(counit_action_control(adjoint_yd_on_CG(s3())), 1e-9);
    CHECK(commutative.residual("braided_commutative") <= 1e-12);
    auto dual = check_yd_axioms(counit_action_control(dual_yd(s3())), 1e-9);
    CHECK(dual.residual("braided_commutative") > 0.1);
    auto k = check_yd_axioms(counit_action_control(dual_yd(kp())), 1e-9);
    CHECK(k.residual("braided_commutative") > 0.1);
}

TEST_CASE("dual algebras: block sizes, axioms, translation action on Z2", "[ydalg]") {
    RegularYDAlgebra Dz = dual_yd(z2());
    CHECK(Dz.dim == 2);
    CHECK(check_yd_axioms(Dz, 1e-12).passed());
    // the sign character translates the two one-point blocks
    PeterWeyl pw = peter_weyl(*z2());
    Mat act = Mat::Zero(2, 2);
    for (int p = 0; p < 2; ++p) act += pw.basis(p, 1) * Dz.act_op[p];
    Mat swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(max_abs(Mat(act - swap)) < 1e-12);

    RegularYDAlgebra Ds = dual_yd(s3());
    CHECK(Ds.dim == 1 + 1 + 4);
    CHECK(check_yd_axioms(Ds, 1e-9).passed());
    CHECK(check_yd_axioms(dual_yd(kp()), 1e-9).passed());
}

TEST_CASE("dual of SU_q(2) at level 1 passes on certified triples", "[ydalg][suq2]") {
    QG G = make_suq2(0.5, 2);
    RegularYDAlgebra D = dual_yd(G, 2);
    CHECK(D.dim == 1 + 4 + 9);
    auto rep = check_yd_axioms(D, 1e-7);
    CHECK(rep.passed());
}

TEST_CASE("induced module actions", "[ydalg]") {
    RegularYDAlgebra A = adjoint_yd_on_CG(s3());
    InducedAction t = induced_module_action(A, trivial_rep(A.G->cg));
    for (int a = 0; a < A.dim; ++a) CHECK(max_abs(Mat(t.pi[a] - A.left_mul(A.e(a)))) < 1e-12);
    InducedAction two = induced_module_action(A, A.G->table.irreps[2], 1e-10);
    CHECK(two.report.residual("homomorphism") <= 1e-10);
    CHECK(two.report.residual("equivariant") <= 1e-10);
    InducedAction broken = induced_module_action(counit_action_control(dual_yd(s3())), s3()->table.irreps[2]);
    CHECK(broken.report.residual("homomorphism") > 1e-6);
}

TEST_CASE("induced actions are natural in the representation", "[ydalg][property]") {
    RegularYDAlgebra A = adjoint_yd_on_CG(s3());
    const auto& T = s3()->table;
    Representation W = tensor(A.G->cg, T.irreps[2], T.irreps[2]);
    InducedAction pw = induced_module_action(A, W), p2 = induced_module_action(A, T.irreps[2]);
    const Fusion& f = s3()->fusion(2, 2);
    Rng rng(13);
    const Mat I = Mat::Identity(A.dim, A.dim);
    for (size_t w = 0; w < f.labels.size(); ++w) {
        if (f.labels[w] != 2) continue;
        Mat X = kron(Mat(f.isometries[w].adjoint()), I);
        for (int k = 0; k < 20; ++k) {
            Vec a = random_vec(A.dim, rng);
            Mat big = Mat::Zero(pw.pi[0].rows(), pw.pi[0].cols()), small = Mat::Zero(p2.pi[0].rows(), p2.pi[0].cols());
            for (int b = 0; b < A.dim; ++b) {
                big += a(b) * pw.pi[b];
                small += a(b) * p2.pi[b];
            }
            CHECK(max_abs(Mat(X * big - small * X)) < 1e-10);
        }
    }
}

TEST_CASE("YD residuals are invariant under a unitary change of basis", "[ydalg][property]") {
    RegularYDAlgebra A = adjoint_yd_on_CG(s3());
    Rng rng(21);
    RegularYDAlgebra B = change_basis(A, random_unitary(A.dim, rng));
    auto ra = check_yd_axioms(A, 1e-9), rb = check_yd_axioms(B, 1e-9);
    CHECK(rb.passed());
    for (const auto& c : ra.checks) CHECK(std::abs(rb.residual(c.name) - c.residual) <= 1e-9);
}

TEST_CASE("hom spaces of the trivial YD algebra are the intertwiner spaces", "[duality]") {
    RegularYDAlgebra K = trivial_yd(s3());
    const auto& T = s3()->table;
    for (int s = 0; s < T.size(); ++s)
        for (int t = 0; t < T.size(); ++t)
            CHECK(cb_hom(K, T.irreps[s], T.irreps[t]).size() == intertwiner_space(T.irreps[s], T.irreps[t]).size());
}

TEST_CASE("hom spaces of adjoint C[G] are all linear maps", "[duality]") {
    for (QG G : {z2(), s3()}) {
        RegularYDAlgebra K = adjoint_yd_on_CG(G);
        const auto& T = G->table;
        for (int s = 0; s < T.size(); ++s) {
            CHECK(int(cb_hom(K, trivial_rep(G->cg), T.irreps[s]).size()) == T.dim(s));
            CHECK(int(cb_hom(K, T.irreps[s], T.irreps[s]).size()) == T.dim(s) * T.dim(s));
        }
    }
}

TEST_CASE("End(1) is the coaction fixed-point algebra", "[duality][property]") {
    for (QG G : {z2(), s3(), kp()})
        for (const RegularYDAlgebra& K : {adjoint_yd_on_CG(G), dual_yd(G)}) {
            INFO(K.name);
            auto E = cb_hom(K, trivial_rep(G->cg), trivial_rep(G->cg));
            Mat F = fixed_points(K);
            REQUIRE(int(E.size()) == F.cols());
            Mat Q = range_basis(F);
            Mat X(K.dim, E.size());
            for (size_t i = 0; i < E.size(); ++i) X.col(int(i)) = morph_flatten(E[i]);
            CHECK(span_defect(Q, X) < 1e-10);
        }
}

TEST_CASE("tensor operations on C_B: membership, interchange, strictness", "[duality][property]") {
    RegularYDAlgebra K = adjoint_yd_on_CG(s3());
    const auto& T = s3()->table;
    const HopfAlgebraData& H = s3()->cg;
    Rng rng(17);
    const Representation &U = T.irreps[2], &V = T.irreps[1], &W = T.irreps[2], &Z = T.irreps[0];
    Morph S = random_in(cb_hom(K, U, V), rng), R = random_in(cb_hom(K, W, Z), rng);
    Morph ST = cb_tensor(K, U, S, R);
    CHECK(cb_residual(K, tensor(H, U, W), tensor(H, V, Z), ST) < 1e-9);
    Morph other = morph_compose(K, morph_tensor_left(K, V, R), morph_tensor_right(S, W.d));
    CHECK(morph_dist(ST, other) < 1e-9);
    Morph nested = morph_tensor_left(K, U, morph_tensor_left(K, V, R));
    Morph flat = morph_tensor_left(K, tensor(H, U, V), R);
    CHECK(morph_dist(nested, flat) < 1e-9);
    // scalar coefficients are invariant, so the action collapses to the counit
    Mat M = random_matrix(1, 2, rng);
    Morph left = morph_tensor_left(K, U, morph_scalar(K, M));
    CHECK(morph_dist(left, morph_scalar(K, kron(Mat::Identity(2, 2), M))) < 1e-12);
}

TEST_CASE("module tensor unitaries over adjoint C[S3]", "[duality]") {
    RegularYDAlgebra A = adjoint_yd_on_CG(s3());
    const auto& T = s3()->table;
    auto two = module_tensor_unitary(A, T.irreps[2], T.irreps[2], &T.irreps[2], 1e-9);
    CHECK(two.report.passed());
    CHECK(two.report.find("coherence") != nullptr);
    auto one = module_tensor_unitary(A, trivial_rep(A.G->cg), T.irreps[2], nullptr, 1e-9);
    CHECK(one.report.passed());
}

TEST_CASE("categories built from providers", "[duality]") {
    CategoricalYD rep = build_yd_from_category(provider_rep(s3()));
    CHECK(rep.alg.dim == 1);
    CategoricalYD fib = build_yd_from_category(provider_fiber(s3()));
    CHECK(fib.alg.dim == 6);
    CHECK(check_yd_axioms(fib.alg, 1e-9).passed());
    SubgroupData sub = restriction_to_subgroup(symmetric_group3(), {0, 3}, "z2");
    CategoricalYD h = build_yd_from_category(provider_sub(s3(), sub.p, "z2"));
    CHECK(h.alg.dim == quotient_coideal(s3(), sub).basis.cols());
    CHECK(h.alg.dim == 3);
    CHECK(check_yd_axioms(h.alg, 1e-9).passed());
}

TEST_CASE("fiber category over C(S3) is C[S3] with the adjoint structure", "[duality]") {
    CategoricalYD C = build_yd_from_category(provider_fiber(s3()));
    RegularYDAlgebra A = adjoint_yd_on_CG(s3());
    const HopfAlgebraData& H = s3()->cg;
    const Mat& J = C.pw.basis;
    double mul = 0, star = 0, coact = 0, act = 0;
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) mul = std::max(mul, max_abs(Vec(J * C.alg.mul(C.alg.e(a), C.alg.e(b)) - H.mul(J.col(a), J.col(b)))));
        star = std::max(star, max_abs(Vec(J * C.alg.adj(C.alg.e(a)) - H.adj(J.col(a)))));
        Mat M = C.alg.coaction(C.alg.e(a));
        coact = std::max(coact, max_abs(Mat(M * J.transpose() - H.coproduct(J.col(a)))));
        for (int p = 0; p < 6; ++p)
            act = std::max(act, max_abs(Vec(J * C.alg.act(H.e(p), C.alg.e(a)) - A.act(H.e(p), J.col(a)))));
    }
    CHECK(mul < 1e-10);
    CHECK(star < 1e-10);
    CHECK(coact < 1e-10);
    CHECK(act < 1e-10);
}

TEST_CASE("universal algebra: unit, product, star, choice independence", "[duality][property]") {
    CategoricalYD C = build_yd_from_category(provider_fiber(s3()));
    const CategoryProvider& P = C.P;
    Vec one = C.project_pi(C.basis_element(0, 0, 0));
    CHECK(max_abs(Vec(one - C.alg.unit)) < 1e-12);
    double prod = 0, choice = 0, star = 0, twice = 0;
    for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l)
            for (int j = 0; j < 2; ++j)
                for (int m = 0; m < 2; ++m) {
                    UniversalElement x = C.basis_element(2, i, l), y = C.basis_element(2, j, m);
                    UniversalElement xy = universal_product(x, y, P);
                    Vec p0 = C.project_pi(xy);
                    prod = std::max(prod, max_abs(Vec(p0 - C.alg.mul(C.project_pi(x), C.project_pi(y)))));
                    for (uint64_t seed : {3u, 11u}) choice = std::max(choice, max_abs(Vec(C.project_pi(xy, seed) - p0)));
                    star = std::max(star, max_abs(Vec(C.alg.adj(p0) - C.project_pi(star_bullet(xy, P)))));
                    twice = std::max(twice, max_abs(Vec(C.project_pi(star_bullet(star_bullet(xy, P), P)) - p0)));
                }
    CHECK(prod < 1e-9);
    CHECK(choice < 1e-9);
    CHECK(star < 1e-9);
    CHECK(twice < 1e-9);
}

TEST_CASE("action of the unit coefficient is the identity", "[duality]") {
    CategoricalYD C = build_yd_from_category(provider_fiber(s3()));
    const Vec one = s3()->cg.unit;
    for (int a = 0; a < C.alg.dim; ++a) CHECK(max_abs(Vec(module_action_rhd(C, one, C.alg.e(a)) - C.alg.e(a))) < 1e-12);
}

TEST_CASE("equivalence map on the fiber category", "[duality]") {
    CategoricalYD C = build_yd_from_category(provider_fiber(s3()));
    const auto& T = s3()->table;
    EquivalenceData e = equivalence_hom_map(C, T.irreps[2], T.irreps[2]);
    CHECK(e.dim_source == 4);
    CHECK(e.dim_target == 4);
    CHECK(e.bijective());
    CHECK(e.membership < 1e-9);
    EquivalenceData u = equivalence_hom_map(C, T.irreps[0], T.irreps[0]);
    REQUIRE(u.images.size() == 1);
    CHECK(morph_dist(u.images[0], morph_scalar(C.alg, Mat::Identity(1, 1))) < 1e-12);
    auto rep = check_equivalence(C, T.irreps, 1e-9);
    CHECK(rep.passed());
    CHECK(rep.residual("strict_tensor_left") < 1e-9);
}

TEST_CASE("roundtrip isomorphisms", "[duality]") {
    auto t = roundtrip_lambda(share(trivial_yd(s3())), 1e-9);
    CHECK(t.report.passed());
    CHECK(t.cat->alg.dim == 1);
    auto z = roundtrip_lambda(share(adjoint_yd_on_CG(z2())), 1e-12);
    CHECK(z.report.passed());
    CHECK(z.cat->alg.dim == 2);
    auto s = roundtrip_lambda(share(adjoint_yd_on_CG(s3())), 1e-9);
    CHECK(s.report.passed());
    CHECK(s.report.residual("rank_deficiency") == 0.0);
    // End(1) of the dual is its fixed-point algebra, which is larger than C
    RegularYDAlgebra D = dual_yd(s3());
    REQUIRE(fixed_points(D).cols() > 1);
    auto d = roundtrip_lambda(share(D), 1e-9);
    CHECK(d.report.passed());
    bool flagged = false;
    for (const auto& n : d.report.notes) flagged = flagged || n.rfind("non-simple unit", 0) == 0;
    CHECK(flagged);
}

TEST_CASE("pushforward along equivariant maps", "[duality]") {
    RegularYDAlgebra A = adjoint_yd_on_CG(s3());
    const auto& objs = s3()->table.irreps;
    auto id = pushforward(A, A, Mat::Identity(6, 6), objs, 1e-9);
    CHECK(id.accepted);
    CHECK(id.all_injective);
    CHECK(id.all_surjective);

    SubgroupData sub = restriction_to_subgroup(symmetric_group3(), {0, 3}, "z2");
    CoidealSubalgebra C = quotient_coideal(s3(), sub);
    auto inc = pushforward(*C.yd, A, C.basis, objs, 1e-9);
    CHECK(inc.accepted);
    CHECK(inc.f_injective);
    CHECK(inc.all_injective);
    CHECK_FALSE(inc.all_surjective);
    CHECK(inc.report.passed());

    // swapping two point masses is an algebra automorphism that ignores the coaction
    Mat f = Mat::Identity(6, 6);
    f.col(0).swap(f.col(1));
    auto bad = pushforward(A, A, f, objs, 1e-9);
    CHECK_FALSE(bad.accepted);
    CHECK_FALSE(bad.equivariance.passed());

    // evaluation at the identity: a quotient onto C whose kernel is not translation invariant
    Mat ev = Mat::Zero(1, 6);
    ev(0, 0) = 1.0;
    auto quotient = pushforward(A, trivial_yd(s3()), ev, objs, 1e-9);
    CHECK_FALSE(quotient.accepted);
    CHECK_FALSE(quotient.equivariance.passed());
}
