#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace tatecoh;
using namespace testsupport;

namespace {

mpq_class scalar(const Coeff& c) { return c.empty() ? mpq_class(0) : c[0].value; }

} // namespace

TEST_CASE("multiplicative n-series with a general beta is ((1 + beta u)^n - 1) / beta") {
    const int N = 24;
    const auto C = pascal(N);
    const RingPtr Z = make_ring(RingDescriptor::integers());
    const RingPtr Q = make_ring(RingDescriptor::rationals());
    for (long beta : {1L, -1L, 2L, -3L}) {
        const RingPtr R = (beta == 1 || beta == -1) ? Z : Q;
        const FglPtr F = multiplicative_fgl(R, N, R->from_int(beta), "m");
        for (long n = 1; n <= 20; ++n) {
            const Series s = F->n_series(n);
            for (int j = 1; j <= N; ++j) {
                mpz_class want = 0;
                if (j <= n) {
                    mpz_class bp;
                    mpz_pow_ui(bp.get_mpz_t(), mpz_class(beta).get_mpz_t(), static_cast<unsigned long>(j - 1));
                    want = C[n][j] * bp;
                }
                CHECK(scalar(s[j]) == want);
            }
        }
    }
}

TEST_CASE("non-unit beta is rejected") {
    const RingPtr Z = make_ring(RingDescriptor::integers());
    try {
        multiplicative_fgl(Z, 8, Z->from_int(0));
        FAIL("expected NonUnitBeta");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonUnitBeta);
    }
}

TEST_CASE("formal inverse of the multiplicative law is -u + u^2 - u^3 + ...") {
    const FglPtr F = fgl_by_name("multiplicative", 16);
    const Series i = F->formal_inverse();
    for (int j = 1; j <= 16; ++j)
        CHECK(scalar(i[j]) == (j % 2 ? -1 : 1));
    const Series m3 = F->n_series(-3);
    const Series p3 = F->n_series(3);
    CHECK(equal_up_to_truncation(F->apply(m3, p3), Series::zero(F->ring(), 16)));
}

TEST_CASE("Honda logarithm coefficients") {
    const LogData L = honda_log(3, 1, 30);
    std::vector<std::pair<int, mpq_class>> want = {{1, 1}, {3, mpq_class(1, 3)}, {9, mpq_class(1, 9)},
                                                   {27, mpq_class(1, 27)}};
    CHECK(L.terms == want);
}

TEST_CASE("Lubin-Tate logarithm matches its recursive definition") {
    // log(f(x)) = pi log(x) with f = -2x + x^2, pi = -2, computed here by direct substitution over Q
    const int N = 20;
    const LogData L = lubin_tate_log({{1, -2}, {2, 1}}, -2, 2, 1, N);
    const RingPtr Q = make_ring(RingDescriptor::rationals());
    std::vector<Coeff> lc(N + 1), fc(N + 1);
    for (const auto& [e, c] : L.terms)
        lc[e] = Q->from_rational(c);
    fc[1] = Q->from_int(-2);
    fc[2] = Q->one();
    const Series log(Q, N, lc), f(Q, N, fc);
    const Series lhs = substitute(log, f);
    const Series rhs = scalar_mul(Element::from_int(Q, -2), log);
    CHECK(equal_up_to_truncation(lhs, rhs));
}

TEST_CASE("property: [m]([n](u)) = [mn](u) and F([m], [n]) = [m + n]") {
    Gen g(6);
    for (const auto& name : builtin_fgl_names()) {
        const FglPtr F = fgl_by_name(name, 20);
        for (int t = 0; t < 4; ++t) {
            const long m = g.range(-6, 6), n = g.range(-6, 6);
            const Series sm = F->n_series(m), sn = F->n_series(n);
            CHECK_MESSAGE(equal_up_to_truncation(substitute(sm, sn), F->n_series(m * n)), name);
            CHECK_MESSAGE(equal_up_to_truncation(F->apply(sm, sn), F->n_series(m + n)), name);
        }
    }
}

TEST_CASE("built-in laws satisfy the axioms at moderate precision") {
    for (const auto& name : builtin_fgl_names())
        CHECK_MESSAGE(fgl_axiom_check(*fgl_by_name(name, 14)).ok, name);
}

TEST_CASE("the axiom check reports the first violation") {
    const RingPtr Z = make_ring(RingDescriptor::integers());
    MultiSeries F = add(MultiSeries::variable(Z, 2, 6, 0), MultiSeries::variable(Z, 2, 6, 1));
    F.set(2, 1, 0, Z->one()); // x^2 y breaks commutativity
    AxiomReport r = fgl_axiom_check(F);
    CHECK_FALSE(r.ok);
    CHECK(r.axiom == "commutativity");

    MultiSeries G = add(MultiSeries::variable(Z, 2, 6, 0), MultiSeries::variable(Z, 2, 6, 1));
    G.set(2, 0, 0, Z->one());
    r = fgl_axiom_check(G);
    CHECK(r.axiom == "unitality");

    MultiSeries H = add(MultiSeries::variable(Z, 2, 6, 0), MultiSeries::variable(Z, 2, 6, 1));
    H.set(1, 1, 0, Z->one());
    H.set(2, 2, 0, Z->one()); // x + y + xy + x^2y^2 is commutative and unital but not associative
    r = fgl_axiom_check(H);
    CHECK(r.axiom == "associativity");
}

TEST_CASE("names are parsed strictly") {
    for (const char* bad : {"honda", "honda:4:1", "honda:2:0", "honda:2:9", "ku:6", "integral-morava:2", "hfp:8",
                            "hzmod:1", "", "additive:2"}) {
        try {
            fgl_by_name(bad, 8);
            FAIL_CHECK("accepted " << bad);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
    }
    CHECK(fgl_by_name("hz", 8) == fgl_by_name("hz", 8));
    CHECK(fgl_by_name("honda:2:1", 8)->ring()->period() == 2);
    CHECK(fgl_by_name("honda:3:2", 8)->ring()->period() == 16);
    CHECK(fgl_by_name("integral-morava:2:1", 8, 5)->ring()->characteristic() == 32);
}

TEST_CASE("the Lubin-Tate law reduces to a height n law mod p") {
    for (auto [p, n] : std::vector<std::pair<long, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const FglPtr F = lubin_tate_fgl(p, n, 6, 20);
        const RingPtr Fp = morava_ring(p, n);
        const Series r = F->n_series(p).mapped(Fp);
        const auto v = r.valuation();
        REQUIRE(v.has_value());
        CHECK(*v == ipow(p, n));
        CHECK(Fp->is_unit(r[*v]));
    }
}

TEST_CASE("integrality failures are reported") {
    // log x = x + x^3/2 gives x + y - 3/2 (x^2 y + x y^2) + ..., not integral at 2.
    const LogData L{2, 1, 8, {{1, mpq_class(1)}, {3, mpq_class(1, 2)}}};
    try {
        fgl_from_log(L, make_ring(RingDescriptor::zmod(4)), 8, "bad", {});
        FAIL("expected a failure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonIntegralCoefficient);
    }
}
