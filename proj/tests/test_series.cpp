#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace tatecoh;
using testsupport::Gen;

namespace {

Series random_series(Gen& g, const RingPtr& R, int N, int start = 0) {
    std::vector<Coeff> c(static_cast<std::size_t>(N + 1));
    for (int j = start; j <= N; ++j)
        if (g.coin(0.7))
            c[static_cast<std::size_t>(j)] = R->from_int(g.range(-20, 20));
    return Series(R, N, std::move(c));
}

/// Schoolbook convolution written against the raw coefficient vectors.
std::vector<mpq_class> naive_product(const Series& f, const Series& g) {
    const int N = std::min(f.N(), g.N());
    std::vector<mpq_class> out(static_cast<std::size_t>(N + 1), 0);
    auto val = [](const Coeff& c) { return c.empty() ? mpq_class(0) : c[0].value; };
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j)
            out[static_cast<std::size_t>(i + j)] += val(f[i]) * val(g[j]);
    return out;
}

} // namespace

TEST_CASE("multiplication matches a naive convolution over Q") {
    Gen g(3);
    const RingPtr Q = make_ring(RingDescriptor::rationals());
    for (int t = 0; t < 50; ++t) {
        const Series a = random_series(g, Q, 20), b = random_series(g, Q, 20);
        const Series p = mul(a, b);
        const auto want = naive_product(a, b);
        for (int j = 0; j <= 20; ++j)
            CHECK((p[j].empty() ? mpq_class(0) : p[j][0].value) == want[static_cast<std::size_t>(j)]);
    }
}

TEST_CASE("property: serial and parallel kernels agree") {
    Gen g(4);
    const RingPtr R = make_ring(RingDescriptor::laurent(RingDescriptor::padic(3, 6), "v", 4));
    for (int t = 0; t < 20; ++t) {
        const int N = static_cast<int>(g.range(1, 90));
        kernels::Coeffs a(static_cast<std::size_t>(N + 1)), b(static_cast<std::size_t>(N + 1));
        for (int j = 0; j <= N; ++j) {
            if (g.coin())
                a[j] = R->monomial(g.range(-40, 40), static_cast<int>(g.range(-3, 3)));
            if (g.coin())
                b[j] = R->monomial(g.range(-40, 40), static_cast<int>(g.range(-3, 3)));
        }
        const auto s = kernels::series_mul_serial(*R, a, b, N);
        const auto p = kernels::series_mul_parallel(*R, a, b, N);
        for (int j = 0; j <= N; ++j)
            CHECK(coeff_equal(s[j], p[j]));

        const int M = static_cast<int>(g.range(1, 14));
        for (int nv : {2, 3}) {
            kernels::MultiCoeffs x(nv, M), y(nv, M);
            for (auto& c : x.data)
                if (g.coin(0.3))
                    c = R->from_int(g.range(-9, 9));
            for (auto& c : y.data)
                if (g.coin(0.3))
                    c = R->from_int(g.range(-9, 9));
            const auto ms = kernels::multi_mul_serial(*R, x, y);
            const auto mp = kernels::multi_mul_parallel(*R, x, y);
            for (std::size_t i = 0; i < ms.data.size(); ++i)
                CHECK(coeff_equal(ms.data[i], mp.data[i]));
        }
    }
}

TEST_CASE("multiplicative and compositional inverses") {
    Gen g(5);
    const RingPtr R = make_ring(RingDescriptor::zmod(25));
    for (int t = 0; t < 30; ++t) {
        Series f = random_series(g, R, 16, 1);
        std::vector<Coeff> c = f.coeffs();
        c[0] = R->one();
        c[1] = R->from_int(2 + 5 * g.range(0, 4));
        const Series unit(R, 16, c);
        const Series inv = invert_series(unit);
        const Series one = mul(unit, inv);
        CHECK(R->is_one(one[0]));
        for (int j = 1; j <= 16; ++j)
            CHECK(one[j].empty());

        c[0].clear();
        const Series h(R, 16, c);
        const Series hinv = compositional_inverse(h);
        const Series id = substitute(h, hinv);
        for (int j = 0; j <= id.N(); ++j)
            CHECK(coeff_equal(id[j], j == 1 ? R->one() : Coeff{}));
    }
}

TEST_CASE("exact division reports its precision loss") {
    const RingPtr Z = make_ring(RingDescriptor::integers());
    // (u^2 + u^3) / u^2 = 1 + u
    Series f = add(Series::monomial(Z, 10, 2, Z->one()), Series::monomial(Z, 10, 3, Z->one()));
    const Series q = exact_divide(f, Series::monomial(Z, 10, 2, Z->one()));
    CHECK(q.N() == 8);
    CHECK(Z->is_one(q[0]));
    CHECK(Z->is_one(q[1]));
    CHECK(q[2].empty());
    try {
        exact_divide(Series::monomial(Z, 10, 1, Z->one()), Series::monomial(Z, 10, 2, Z->one()));
        FAIL("expected NotDivisible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDivisible);
    }
    try {
        exact_divide(Series::monomial(Z, 10, 1, Z->one()), Series::monomial(Z, 10, 1, Z->from_int(2)));
        FAIL("expected NotDivisible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotDivisible);
    }
    const RingPtr Z4 = make_ring(RingDescriptor::zmod(4));
    try {
        exact_divide(Series::monomial(Z4, 10, 1, Z4->one()), Series::monomial(Z4, 10, 1, Z4->from_int(2)));
        FAIL("expected a pivot error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroDivisorPivot);
    }
}

TEST_CASE("unit profiles") {
    const RingPtr Z9 = make_ring(RingDescriptor::zmod(9));
    // 3u + u^2 + ...: 3 is nilpotent, u^2 carries a unit
    Series f = add(Series::monomial(Z9, 8, 1, Z9->from_int(3)), Series::monomial(Z9, 8, 2, Z9->one()));
    UnitProfile p = unit_profile(f);
    CHECK(p.certified());
    CHECK(p.valuation == 2);

    const RingPtr Z = make_ring(RingDescriptor::integers());
    Series h = add(Series::monomial(Z, 8, 1, Z->from_int(2)), Series::monomial(Z, 8, 2, Z->one()));
    p = unit_profile(h);
    CHECK(p.valuation == 2);
    CHECK_FALSE(p.below_all_nilpotent);
    CHECK_FALSE(p.certified());
}

TEST_CASE("homogeneity is tracked") {
    const RingPtr R = make_ring(RingDescriptor::laurent(RingDescriptor::zmod(2), "v", 2));
    const Series u = Series::variable(R, 6);
    CHECK(u.homogeneous_degree() == -2);
    Series f = add(u, Series::monomial(R, 6, 2, R->generator_power(1)));
    CHECK_NOTHROW(f.with_degree(-2));
    Series bad = add(u, Series::monomial(R, 6, 2, R->one()));
    CHECK_THROWS_AS(bad.with_degree(-2), Error);
}
