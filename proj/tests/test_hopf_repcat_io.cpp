#include "ydcat/io.hpp"
#include "ydcat/poisson.hpp"
#include "ydcat/suq2.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ydcat;
using Catch::Approx;

namespace {

HopfAlgebraData z2() { return function_algebra(cyclic_group(2)); }
HopfAlgebraData s3() { return function_algebra(symmetric_group3()); }

QG finite(const HopfAlgebraData& A, const std::string& name) { return make_finite_group(A, name); }

QG suq2_half() {
    static QG G = make_suq2(0.5, 4);
    return G;
}

std::string fixture(const std::string& f) { return std::string(YDCAT_FIXTURE_DIR) + "/" + f; }

/** U' = V U V^* entrywise on coefficients. */
Representation rotate(const Representation& U, const Mat& V) {
    Representation R = U;
    for (int i = 0; i < U.d; ++i)
        for (int j = 0; j < U.d; ++j) {
            Vec c = Vec::Zero(U.u[0].size());
            for (int a = 0; a < U.d; ++a)
                for (int b = 0; b < U.d; ++b) c += V(i, a) * std::conj(V(j, b)) * U.at(a, b);
            R.u[size_t(i) * U.d + j] = c;
        }
    return R;
}

int count_label(const Fusion& f, int r) { return int(std::count(f.labels.begin(), f.labels.end(), r)); }

}  // namespace

TEST_CASE("function algebra of Z2 satisfies every Hopf axiom exactly", "[hopf]") {
    auto rep = validate_hopf(z2(), 0.0);
    CHECK(rep.passed());
    CHECK(rep.max_residual() == 0.0);
}

TEST_CASE("shipped fixtures validate at 1e-10", "[hopf]") {
    for (const char* f : {"z2.json", "s3.json", "kac_paljutkin.json"}) {
        INFO(f);
        auto rep = validate_hopf(load_hopf(fixture(f)), 1e-10);
        CHECK(rep.passed());
    }
    CHECK(validate_hopf(s3(), 1e-12).passed());
}

TEST_CASE("zero antipode breaks the antipode axiom with residual 1", "[hopf]") {
    HopfAlgebraData A = z2();
    A.antipode.setZero();
    auto rep = validate_hopf(A, 1e-10);
    CHECK_FALSE(rep.passed());
    CHECK(rep.residual("antipode") == Approx(1.0));
}

TEST_CASE("shape errors name the offending tensor", "[hopf]") {
    HopfAlgebraData A = z2();
    A.star = Mat::Identity(3, 3);
    CHECK_THROWS_WITH(validate_hopf(A, 1e-9), Catch::Matchers::ContainsSubstring("star"));
}

TEST_CASE("Haar functional on finite fixtures", "[hopf]") {
    auto hz = haar(z2());
    CHECK(hz.h(0).real() == Approx(0.5));
    CHECK(hz.h(1).real() == Approx(0.5));
    auto hs = haar(s3());
    for (int i = 0; i < 6; ++i) CHECK(std::abs(hs.h(i) - 1.0 / 6.0) < 1e-12);

    HopfAlgebraData K = kac_paljutkin();
    auto hk = haar(K);
    CHECK(std::abs(hk(K.unit) - 1.0) < 1e-12);
    double inv = 0.0, idem = 0.0;
    for (int i = 0; i < K.dim; ++i) {
        Mat D = K.coproduct(K.e(i));
        Vec left = D.transpose() * hk.h, right = D * hk.h;
        inv = std::max(inv, max_abs(Vec(left - hk.h(i) * K.unit)));
        inv = std::max(inv, max_abs(Vec(right - hk.h(i) * K.unit)));
        idem = std::max(idem, std::abs((hk.h.transpose() * D * hk.h)(0) - hk.h(i)));
    }
    CHECK(inv <= 1e-10);
    CHECK(idem <= 1e-10);
}

TEST_CASE("dual of C(S3) is noncommutative and cocommutative", "[hopf]") {
    HopfAlgebraData D = dual_hopf(s3());
    CHECK(validate_hopf(D, 1e-10).passed());
    Tensor3 m = dense_mult(D), d = dense_comult(D);
    double noncomm = 0.0, cocomm = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) {
                noncomm = std::max(noncomm, std::abs(m(i, j, k) - m(j, i, k)));
                cocomm = std::max(cocomm, std::abs(d(i, j, k) - d(i, k, j)));
            }
    CHECK(noncomm > 0.5);
    CHECK(cocomm == 0.0);
}

TEST_CASE("dual of C(Z2) is isomorphic to C(Z2)", "[hopf]") {
    HopfAlgebraData D = dual_hopf(z2());
    // characters of Z2 are the orthogonal idempotents (f0 +- f1)/2
    Mat P(2, 2);
    P << 0.5, 0.5, 0.5, -0.5;
    HopfAlgebraData A = z2();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Vec lhs = D.mul(P.col(i), P.col(j));
            Vec rhs = A.mul(A.e(i), A.e(j));
            CHECK(max_abs(Vec(lhs - P * rhs)) < 1e-14);
        }
}

TEST_CASE("double dual of Kac-Paljutkin equals the input", "[hopf][property]") {
    HopfAlgebraData K = kac_paljutkin();
    HopfAlgebraData DD = dual_hopf(dual_hopf(K));
    Tensor3 m1 = dense_mult(K), m2 = dense_mult(DD), d1 = dense_comult(K), d2 = dense_comult(DD);
    double r = 0.0;
    for (size_t i = 0; i < m1.v.size(); ++i) r = std::max({r, std::abs(m1.v[i] - m2.v[i]), std::abs(d1.v[i] - d2.v[i])});
    r = std::max({r, max_abs(Mat(K.antipode - DD.antipode)), max_abs(Mat(K.star - DD.star)),
                  max_abs(Vec(K.unit - DD.unit)), max_abs(Vec(K.counit - DD.counit))});
    CHECK(r <= 1e-10);
}

TEST_CASE("irreducible tables of the finite fixtures", "[repcat]") {
    auto dims = [](const IrrepTable& T) {
        std::vector<int> d;
        for (int s = 0; s < T.size(); ++s) d.push_back(T.dim(s));
        return d;
    };
    CHECK(dims(finite(z2(), "z2")->table) == std::vector<int>{1, 1});
    CHECK(dims(finite(s3(), "s3")->table) == std::vector<int>{1, 1, 2});
    CHECK(dims(finite(kac_paljutkin(), "kp")->table) == std::vector<int>{1, 1, 1, 1, 2});
}

TEST_CASE("intertwiner spaces and decompositions on S3", "[repcat]") {
    QG G = finite(s3(), "s3");
    const auto& T = G->table;
    Representation one = trivial_rep(G->cg);
    CHECK(intertwiner_space(one, one).size() == 1);
    CHECK(intertwiner_space(T.irreps[2], T.irreps[2]).size() == 1);
    Representation W = G->tensor_irreps(2, 2);
    CHECK(intertwiner_space(W, one).size() == 1);

    // character oracle: chi_2 = (2, -1, 0) on classes {e}, {r, r2}, {transpositions}
    const double chi2[3] = {2, -1, 0}, chi_sign[3] = {1, 1, -1}, sizes[3] = {1, 2, 3};
    auto inner = [&](auto f, auto g) {
        double s = 0;
        for (int c = 0; c < 3; ++c) s += sizes[c] * f(c) * g(c);
        return s / 6.0;
    };
    auto sq = [&](int c) { return chi2[c] * chi2[c]; };
    const Fusion& f = G->fusion(2, 2);
    CHECK(count_label(f, 0) == int(std::lround(inner(sq, [](int) { return 1.0; }))));
    CHECK(count_label(f, 1) == int(std::lround(inner(sq, [&](int c) { return chi_sign[c]; }))));
    CHECK(count_label(f, 2) == int(std::lround(inner(sq, [&](int c) { return chi2[c]; }))));
    CHECK(completeness_residual(f, 4) <= 1e-12);
    for (size_t w = 0; w < f.isometries.size(); ++w)
        CHECK(intertwiner_residual(T.irreps[f.labels[w]], W, f.isometries[w]) <= 1e-10);
}

TEST_CASE("trivial tensor U decomposes as U with identity isometry", "[repcat]") {
    QG G = finite(s3(), "s3");
    const Fusion& f = G->fusion(0, 2);
    REQUIRE(f.labels == std::vector<int>{2});
    CHECK(max_abs(Mat(f.isometries[0] * f.isometries[0].adjoint() - Mat::Identity(2, 2))) < 1e-12);
}

TEST_CASE("conjugate data on finite fixtures is of Kac type", "[repcat][property]") {
    for (auto [A, name] : {std::pair{z2(), "z2"}, std::pair{s3(), "s3"}, std::pair{kac_paljutkin(), "kp"}}) {
        QG G = finite(A, name);
        for (int s = 0; s < G->table.size(); ++s) {
            const auto& c = G->table.conj[s];
            const int d = G->table.dim(s);
            CHECK(c.qdim == Approx(d));
            CHECK(max_abs(Mat(c.rho - Mat::Identity(d, d))) < 1e-9);
            CHECK(conjugate_equation_residual(c.R, c.Rbar, d) < 1e-9);
        }
    }
}

TEST_CASE("Frobenius reciprocity and completeness over all table pairs", "[repcat][property]") {
    for (auto [A, name] : {std::pair{s3(), "s3"}, std::pair{kac_paljutkin(), "kp"}}) {
        QG G = finite(A, name);
        const auto& T = G->table;
        Representation one = trivial_rep(G->cg);
        for (int s = 0; s < T.size(); ++s)
            for (int t = 0; t < T.size(); ++t) {
                Representation W = tensor(G->cg, T.irreps[s], T.conj[t].conj_rep);
                CHECK(intertwiner_space(one, W).size() == intertwiner_space(T.irreps[t], T.irreps[s]).size());
                CHECK(completeness_residual(G->fusion(s, t), T.dim(s) * T.dim(t)) < 1e-10);
            }
    }
}

TEST_CASE("conjugate data survives a random unitary change of basis", "[repcat][property]") {
    QG G = finite(s3(), "s3");
    Rng rng(5);
    Mat V = random_unitary(2, rng);
    Representation U = rotate(G->table.irreps[2], V);
    CHECK(unitarity_residual(G->cg, U) < 1e-12);
    CHECK(corep_residual(G->cg, U) < 1e-12);
    ConjugateData c = conjugate_data(G->cg, U);
    CHECK(conjugate_equation_residual(c.R, c.Rbar, 2) < 1e-9);
    CHECK(c.qdim == Approx(2.0));
}

TEST_CASE("SU_q(2) at q = 1/2: quantum dimensions, rho convention, fusion", "[repcat][suq2]") {
    QG G = suq2_half();
    const auto& T = G->table;
    const double q = 0.5;
    // [n]_q = sum_{k} q^{n-1-2k}
    for (int s = 0; s < T.size(); ++s) {
        double qn = 0;
        for (int k = 0; k <= s; ++k) qn += std::pow(q, s - 2 * k);
        CHECK(T.conj[s].qdim == Approx(qn).epsilon(1e-9));
        CHECK(T.conj[s].rho.trace().real() == Approx(qn).epsilon(1e-9));
        CHECK(conjugate_equation_residual(T.conj[s].R, T.conj[s].Rbar, T.dim(s)) < 1e-7);
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(T.conj[1].rho);
    CHECK(es.eigenvalues()(0) == Approx(q));
    CHECK(es.eigenvalues()(1) == Approx(1 / q));

    const Fusion& f = G->fusion(1, 1);
    CHECK(f.labels == std::vector<int>{0, 2});
    CHECK(completeness_residual(f, 4) < 1e-8);
    Representation W = G->tensor_irreps(1, 1);
    for (size_t w = 0; w < f.isometries.size(); ++w)
        CHECK(intertwiner_residual(T.irreps[f.labels[w]], W, f.isometries[w]) < 1e-8);
}

TEST_CASE("SU_q(2) quantum dimensions are multiplicative", "[repcat][suq2][property]") {
    QG G = suq2_half();
    const auto& T = G->table;
    for (int s = 0; s <= 2; ++s)
        for (int t = 0; s + t <= 4; ++t) {
            double sum = 0;
            for (int r : G->fusion(s, t).labels) sum += T.conj[r].qdim;
            CHECK(sum == Approx(T.conj[s].qdim * T.conj[t].qdim).epsilon(1e-6));
        }
}

TEST_CASE("fusion above the truncation level fails loudly", "[repcat][suq2]") {
    QG G = suq2_half();
    try {
        (void)G->fusion(2, 4);
        FAIL("expected TruncationExceeded");
    } catch (const TruncationExceeded& e) {
        CHECK(e.required2 == 6);
        CHECK(e.available2 == 4);
    }
}

TEST_CASE("phi states are invariant; normalized trace in the Kac case", "[repcat][poisson]") {
    Rng rng(3);
    QG S = finite(s3(), "s3");
    for (int s = 0; s < S->table.size(); ++s)
        for (int k = 0; k < 20; ++k) {
            Mat X = random_matrix(S->table.dim(s), S->table.dim(s), rng);
            CHECK(phi_invariance_residual(S->cg, S->table.irreps[s], S->table.conj[s], X) < 1e-9);
            CHECK(std::abs(phi_state(S->table.conj[s], X) - X.trace() / double(S->table.dim(s))) < 1e-12);
        }
    QG G = suq2_half();
    for (int s = 0; s < 3; ++s)
        for (int k = 0; k < 20; ++k) {
            Mat X = random_matrix(s + 1, s + 1, rng);
            CHECK(phi_invariance_residual(G->cg, G->table.irreps[s], G->table.conj[s], X) < 1e-9);
        }
    Eigen::SelfAdjointEigenSolver<Mat> es(phi_density(G->table.conj[1]));
    CHECK(es.eigenvalues()(0) == Approx(0.2));
    CHECK(es.eigenvalues()(1) == Approx(0.8));
}

TEST_CASE("phi of a tensor product factorizes", "[repcat][poisson][property]") {
    QG G = suq2_half();
    const auto& T = G->table;
    Rng rng(9);
    Mat X = random_matrix(2, 2, rng), Y = random_matrix(3, 3, rng);
    Mat rho = kron(T.conj[1].rho, T.conj[2].rho);
    cd lhs = (kron(X, Y) * hermitian_power(rho, -1.0)).trace() / (T.conj[1].qdim * T.conj[2].qdim);
    CHECK(std::abs(lhs - phi_state(T.conj[1], X) * phi_state(T.conj[2], Y)) < 1e-12);
}

TEST_CASE("fixture JSON round trips bit-exactly", "[io]") {
    for (auto [A, name] : {std::pair{z2(), "z2"}, std::pair{s3(), "s3"}, std::pair{kac_paljutkin(), "kac_paljutkin"}}) {
        HopfAlgebraData B = decode_hopf(json::parse(encode_hopf(A, name).dump()));
        CHECK(hopf_identical(A, B));
        CHECK(hopf_identical(A, load_hopf(fixture(std::string(name) + ".json"))));
    }
    SubgroupFixture f{"s3", restriction_to_subgroup(symmetric_group3(), {0, 3}, "z2")};
    SubgroupFixture g = decode_subgroup(json::parse(encode_subgroup(f).dump()));
    CHECK(g.group == "s3");
    CHECK(g.sub.name == "z2");
    CHECK(g.sub.p == f.sub.p);
    CHECK(hopf_identical(g.sub.H, f.sub.H));
    SubgroupFixture h = load_subgroup(fixture("s3_sub_z2.json"));
    CHECK(h.sub.p == f.sub.p);
}

TEST_CASE("reports refuse NaN and carry infinities as strings", "[io]") {
    ValidationReport r;
    r.add("finite", 1e-12, 1e-9);
    r.add("blown", std::numeric_limits<double>::infinity(), 1e-9);
    json j = encode_report(r);
    CHECK(j["checks"][1]["residual"] == "inf");
    ValidationReport back = decode_report(json::parse(j.dump()));
    CHECK(std::isinf(back.checks[1].residual));
    CHECK(back.checks[0].residual == r.checks[0].residual);
    r.add("broken", std::nan(""), 1e-9);
    CHECK_THROWS_AS(encode_report(r), EncodeError);
}

TEST_CASE("malformed fixtures produce parse errors with a path", "[io]") {
    json j = encode_hopf(z2(), "z2");
    j["mult"][1][0][1] = "oops";
    CHECK_THROWS_WITH(decode_hopf(j), Catch::Matchers::ContainsSubstring("/mult/1/0/1"));
    json k = encode_hopf(z2(), "z2");
    k.erase("counit");
    CHECK_THROWS_WITH(decode_hopf(k), Catch::Matchers::ContainsSubstring("counit"));
    CHECK_THROWS_AS(load_hopf(fixture("does_not_exist.json")), ParseError);
}
