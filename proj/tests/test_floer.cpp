#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace tatecoh;
using namespace testsupport;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Unsupported;
}

ManifoldModel sample() {
    ManifoldModel m;
    m.dim = 4;
    m.homology[0].free = 1;
    add_torsion(m.homology[1], 2, 1);
    m.homology[2].free = 2;
    add_torsion(m.homology[2], 3, 2);
    m.homology[4].free = 1;
    return m;
}

} // namespace

TEST_CASE("manifold validation") {
    ManifoldModel m = sample();
    CHECK_NOTHROW(validate_manifold(m));
    m.dim = 3;
    CHECK(code_of([&] { validate_manifold(m); }) == ErrorCode::SchemaViolation);
    m = sample();
    m.homology[6].free = 1;
    CHECK(code_of([&] { validate_manifold(m); }) == ErrorCode::SchemaViolation);
    m = sample();
    add_torsion(m.homology[1], 4, 1);
    CHECK(code_of([&] { validate_manifold(m); }) == ErrorCode::SchemaViolation);
}

TEST_CASE("orbit action and the degeneration inequality") {
    CHECK(orbit_action(2) == 4);
    CHECK(orbit_action(mpq_class(1, 2)) == mpq_class(5, 8));
    CHECK(code_of([] { orbit_action(0); }) == ErrorCode::NonpositiveLength);
    CHECK(degeneration_holds(2, 2, 4, false));
    CHECK_FALSE(degeneration_holds(2, 2, 6, false));
    CHECK(degeneration_holds(2, 2, 10, true));
    CHECK(smallest_height(2, 6, false) == 3);
    CHECK(smallest_height(5, 6, false) == 1);
}

TEST_CASE("property: constant block agrees with universal coefficients") {
    Gen g(21);
    const RingPtr Z = make_ring(RingDescriptor::integers());
    const RingPtr F3 = make_ring(RingDescriptor::zmod(3));
    for (int t = 0; t < 200; ++t) {
        const ManifoldModel m = random_manifold(g);
        auto a = constant_block_coefficients(m, *Z);
        auto b = constant_block_coefficients(m, *F3);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == uct_reference(m, false));
        CHECK(b == uct_reference(m, true));
    }
}

TEST_CASE("regrading for K(n)-type coefficients") {
    const ManifoldModel m = sample();
    // p = 2, height 2: period 6, Z/2^k coefficients.
    auto r = regrade_poincare(m, 2, 3, 2);
    std::sort(r.begin(), r.end());
    // free: degrees 4, 2, 2, 0 -> Z/8; Z/2 in H_1: degrees 3 and 2; Z/9 dies at p = 2.
    CHECK(r == std::vector<CoefficientSummand>{{8, 0}, {2, 2}, {8, 2}, {8, 2}, {2, 3}, {8, 4}});
    CHECK(code_of([&] { regrade_poincare(m, 2, 1, 1); }) == ErrorCode::DegenerationHypothesisFails);
}

TEST_CASE("tower construction errors") {
    const ManifoldModel m = sample();
    const FglPtr F = fgl_by_name("hq", 16);
    OrbitDatum o;
    o.length = 2;
    CHECK(code_of([&] { build_sh_tower(m, {o}, {}, F); }) == ErrorCode::InvalidTower);
    CHECK(code_of([&] { build_sh_tower(m, {o}, {3, 1}, F); }) == ErrorCode::InvalidTower);
    CHECK(code_of([&] { build_sh_tower(m, {o}, {2}, F); }) == ErrorCode::SlopeHitsOrbitLength);
    CHECK(code_of([&] { build_sh_tower(m, {o, o}, {3}, F); }) == ErrorCode::SchemaViolation);
    OrbitDatum bad = o;
    bad.parity = OrbitParity::Bad;
    CHECK(code_of([&] { build_sh_tower(m, {bad}, {3}, F); }) == ErrorCode::BadOrbitOddMultiplicity);

    OrbitDatum late;
    late.length = 5;
    const SymplecticTower t = build_sh_tower(m, {late, o}, {1, 3, 6}, F);
    CHECK(t.members == std::vector<std::vector<std::size_t>>{{}, {0}, {0, 1}});
    CHECK(t.realized.levels[2].summands.size() == 3);
    CHECK(sh_tate(t, 24).theorem_holds);
}

TEST_CASE("property: Morava towers agree between the serial and parallel paths") {
    Gen g(22);
    for (int t = 0; t < 10; ++t) {
        const ManifoldModel m = random_manifold(g, 6, 3, 3);
        const long p = g.pick(std::vector<long>{2, 3, 5});
        const int h = smallest_height(p, m.dim, false);
        const MoravaSeries a = morava_tate_tower(m, p, h, {1, 2, 3}, 24, 24);
        const MoravaSeries b = morava_tate_tower_serial(m, p, h, {1, 2, 3}, 24, 24);
        REQUIRE(a.levels.size() == b.levels.size());
        for (std::size_t i = 0; i < a.levels.size(); ++i)
            CHECK(a.levels[i].value == b.levels[i].value);
    }
}

TEST_CASE("p-local recovery of the sample") {
    const ManifoldModel m = sample();
    const MoravaSeries s = morava_tate_tower(m, 2, 2, {1, 2, 3}, 24, 24);
    GradedGroup want;
    want[0].free = 1;
    add_torsion(want[1], 2, 1);
    want[2].free = 2;
    want[4].free = 1;
    CHECK(recover_p_local(s, 4) == want);
}

TEST_CASE("recovery rejects corrupted or thin data") {
    const ManifoldModel m = sample();
    MoravaSeries s = morava_tate_tower(m, 3, 2, {1, 2, 3, 4}, 24, 24);

    MoravaSeries one = s;
    one.levels.resize(1);
    CHECK(code_of([&] { recover_p_local(one, 4); }) == ErrorCode::NonStabilizingTower);

    MoravaSeries dup = s;
    dup.levels[1].k = dup.levels[0].k;
    CHECK(code_of([&] { recover_p_local(dup, 4); }) == ErrorCode::SchemaViolation);

    MoravaSeries lost = s;
    lost.levels[0].value.summands.pop_back();
    CHECK(code_of([&] { recover_p_local(lost, 4); }) == ErrorCode::InconsistentPattern);

    MoravaSeries odd_order = s;
    odd_order.levels.back().value.summands.front().order = 5;
    CHECK(code_of([&] { recover_p_local(odd_order, 4); }) == ErrorCode::InconsistentPattern);

    // torsion of exponent kmax looks free at the top level
    ManifoldModel deep = sample();
    deep.homology[1].torsion.clear();
    add_torsion(deep.homology[1], 3, 3);
    const BlindedData b = blind_manifold(deep, {3}, 3, 24, 24);
    CHECK(code_of([&] { recover_integral_homology(b.rational, b.morava, 4); }) == ErrorCode::NonStabilizingTower);

    const BlindedData ok = blind_manifold(m, {2, 3}, 4, 24, 24);
    std::vector<MoravaSeries> twice = {ok.morava[0], ok.morava[0]};
    CHECK(code_of([&] { recover_integral_homology(ok.rational, twice, 4); }) == ErrorCode::SchemaViolation);

    MoravaSeries wide = s;
    wide.height = 1;
    wide.p = 2; // period 2 cannot separate degrees of a 4-manifold
    CHECK(code_of([&] { recover_p_local(wide, 4); }) == ErrorCode::DegenerationHypothesisFails);
}

TEST_CASE("integral recovery of the sample") {
    ManifoldModel m = sample();
    const BlindedData b = blind_manifold(m, {2, 3}, 4, 24, 24);
    normalize(m.homology);
    CHECK(recover_integral_homology(b.rational, b.morava, 4) == m.homology);
    // without p = 3 the Z/9 is invisible
    const BlindedData b2 = blind_manifold(m, {2}, 4, 24, 24);
    CHECK_FALSE(recover_integral_homology(b2.rational, b2.morava, 4) == m.homology);
}

TEST_CASE("completion and KU recovery") {
    Group g;
    g.free = 3;
    add_torsion(g, 2, 2, 1);
    add_torsion(g, 7, 1, 2);
    const CompletedPart c = completion_of_fg_group(g, 1);
    CHECK(c.parity == 1);
    CHECK(c.completed_free == 3);
    CHECK(c.torsion == g.torsion);

    Gen gen(23);
    for (int t = 0; t < 200; ++t) {
        const KuGroups k = random_ku(gen);
        CHECK(recover_ku(ku_forward(k)) == k);
    }

    CompletedModule bad;
    bad.parts = {CompletedPart{0, 1, {}}, CompletedPart{0, 2, {}}};
    CHECK(code_of([&] { recover_ku(bad); }) == ErrorCode::MalformedCompletedModule);
    bad.parts = {CompletedPart{2, 1, {}}};
    CHECK(code_of([&] { recover_ku(bad); }) == ErrorCode::MalformedCompletedModule);
}
