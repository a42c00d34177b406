#include "tatecoh/floer.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <set>

#include "tatecoh/kernels.hpp"

namespace tatecoh {

void add_torsion(Group& g, long p, int l, int mult) {
    if (mult == 0)
        return;
    int& m = g.torsion[{p, l}];
    m += mult;
    if (m == 0)
        g.torsion.erase({p, l});
}

void normalize(GradedGroup& g) {
    for (auto it = g.begin(); it != g.end();) {
        for (auto t = it->second.torsion.begin(); t != it->second.torsion.end();)
            t = t->second == 0 ? it->second.torsion.erase(t) : std::next(t);
        it = it->second.trivial() ? g.erase(it) : std::next(it);
    }
}

namespace {

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

void validate_group(const Group& g, ErrorCode code, const std::string& where) {
    if (g.free < 0)
        fail(code, where + ": negative free rank");
    for (const auto& [pl, mult] : g.torsion) {
        if (!is_prime(pl.first))
            fail(code, where + ": " + std::to_string(pl.first) + " is not prime");
        if (pl.second < 1 || pl.second > 60)
            fail(code, where + ": torsion exponent out of range");
        if (mult < 1)
            fail(code, where + ": multiplicities are positive");
        long order = 1;
        for (int i = 0; i < pl.second; ++i) {
            if (order > (1L << 40) / pl.first)
                fail(code, where + ": torsion order too large");
            order *= pl.first;
        }
    }
}

} // namespace

void validate_manifold(const ManifoldModel& m) {
    if (m.dim < 0 || m.dim % 2 != 0)
        fail(ErrorCode::SchemaViolation, "dim must be even and nonnegative");
    for (const auto& [d, g] : m.homology) {
        if (d < 0 || d > m.dim)
            fail(ErrorCode::SchemaViolation, "homology degree " + std::to_string(d) + " outside [0, dim]");
        validate_group(g, ErrorCode::SchemaViolation, "degree " + std::to_string(d));
    }
}

mpq_class orbit_action(const mpq_class& length) {
    if (length <= 0)
        fail(ErrorCode::NonpositiveLength, "orbit length must be positive, got " + length.get_str());
    mpq_class a = length * length / 2 + length;
    a.canonicalize();
    return a;
}

bool degeneration_holds(long p, int height, int dim, bool weinstein) {
    const long q = ipow(p, height);
    return (weinstein ? 4 : 2) * (q - 1) > dim;
}

std::vector<CoefficientSummand> constant_block_coefficients(const ManifoldModel& m, const Ring& R) {
    validate_manifold(m);
    const bool tor = R.characteristic() != 0;
    std::vector<CoefficientSummand> out;
    for (const auto& [d, g] : m.homology) {
        const int deg = m.dim - d;
        for (long i = 0; i < g.free; ++i)
            out.push_back({0, deg});
        for (const auto& [pl, mult] : g.torsion) {
            const long order = ipow(pl.first, pl.second);
            for (int i = 0; i < mult; ++i) {
                out.push_back({order, deg});
                if (tor)
                    out.push_back({order, deg - 1});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CoefficientSummand> regrade_poincare(const ManifoldModel& m, long p, int k, int height) {
    validate_manifold(m);
    if (!is_prime(p) || k < 1 || height < 1)
        fail(ErrorCode::InvalidDescriptor, "regrading needs a prime, k >= 1 and height >= 1");
    if (!degeneration_holds(p, height, m.dim, m.weinstein))
        fail(ErrorCode::DegenerationHypothesisFails,
             std::string(m.weinstein ? "4" : "2") + "(p^m - 1) > dim fails for p = " + std::to_string(p) +
                 ", m = " + std::to_string(height) + ", dim = " + std::to_string(m.dim));
    const long c = ipow(p, k);
    const int period = static_cast<int>(2 * (ipow(p, height) - 1));
    const RingPtr R = make_ring(RingDescriptor::padic(p, k));
    std::vector<CoefficientSummand> out;
    for (auto s : constant_block_coefficients(m, *R)) {
        const long order = std::gcd(s.order == 0 ? c : s.order, c);
        if (order == 1)
            continue;
        out.push_back({order, ((s.degree % period) + period) % period});
    }
    std::sort(out.begin(), out.end());
    return out;
}

SymplecticTower build_sh_tower(const ManifoldModel& m, std::vector<OrbitDatum> orbits, std::vector<mpq_class> slopes,
                               const FglPtr& F) {
    validate_manifold(m);
    if (slopes.empty())
        fail(ErrorCode::InvalidTower, "at least one slope is needed");
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (slopes[i] <= 0 || (i > 0 && slopes[i] <= slopes[i - 1]))
            fail(ErrorCode::InvalidTower, "slopes must be positive and strictly increasing");
    }
    for (const auto& o : orbits) {
        (void)orbit_action(o.length);
        if (o.multiplicity < 1)
            fail(ErrorCode::SchemaViolation, "orbit multiplicity must be positive");
    }
    std::sort(orbits.begin(), orbits.end(), [](const OrbitDatum& a, const OrbitDatum& b) { return a.length < b.length; });
    for (std::size_t i = 1; i < orbits.size(); ++i)
        if (orbits[i].length == orbits[i - 1].length)
            fail(ErrorCode::SchemaViolation, "orbit lengths must be pairwise distinct");
    for (const auto& a : slopes)
        for (const auto& o : orbits)
            if (a == o.length)
                fail(ErrorCode::SlopeHitsOrbitLength, "slope " + a.get_str() + " equals an orbit length");

    SymplecticTower t;
    t.manifold = m;
    t.slopes = slopes;
    t.orbits = orbits;
    std::vector<ModuleSummand> blocks;
    blocks.reserve(orbits.size());
    for (const auto& o : orbits)
        blocks.push_back(orbit_summand(*F, o.multiplicity, o.parity, o.shift));
    const ModuleSummand constant =
        ModuleSummand::free(constant_block_coefficients(m, *F->ring()), 0, true);

    for (std::size_t i = 0; i < slopes.size(); ++i) {
        FglModule level{F, {constant}};
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < orbits.size(); ++j) {
            if (orbits[j].length < slopes[i]) {
                members.push_back(j);
                level.summands.push_back(blocks[j]);
            }
        }
        if (i > 0) {
            std::vector<std::optional<std::size_t>> map(t.realized.levels.back().summands.size());
            for (std::size_t s = 0; s < map.size(); ++s)
                map[s] = s;
            t.realized.maps.push_back(std::move(map));
        }
        t.realized.levels.push_back(std::move(level));
        t.members.push_back(std::move(members));
    }
    return t;
}

ShTateResult sh_tate(const SymplecticTower& t, int m_max) {
    ShTateResult r;
    r.tower = tate_of_tower(t.realized, m_max);
    const FglModule& first = t.realized.levels.front();
    FglModule alone{first.fgl, {}};
    for (const auto& s : first.summands)
        if (s.constant)
            alone.summands.push_back(s);
    r.constant_only = tate_of_module(alone, m_max);
    r.theorem_holds = r.tower.value == r.constant_only;
    return r;
}

int smallest_height(long p, int dim, bool weinstein) {
    for (int h = 1; h <= 40; ++h)
        if (degeneration_holds(p, h, dim, weinstein))
            return h;
    fail(ErrorCode::DegenerationHypothesisFails, "no height satisfies the degeneration hypothesis");
}

namespace {

MoravaLevel morava_level(const ManifoldModel& m, long p, int height, int k, int N, int m_max) {
    const FglPtr F = fgl_by_name("integral-morava:" + std::to_string(p) + ":" + std::to_string(height) + ":" +
                                     std::to_string(k),
                                 N, k);
    FglModule module{F, {ModuleSummand::free(constant_block_coefficients(m, *F->ring()), 0, true)}};
    return MoravaLevel{k, tate_of_module(module, m_max)};
}

void check_morava_inputs(const ManifoldModel& m, long p, int height, const std::vector<int>& ks) {
    validate_manifold(m);
    if (!is_prime(p) || height < 1)
        fail(ErrorCode::InvalidDescriptor, "Morava data needs a prime and a positive height");
    if (!degeneration_holds(p, height, m.dim, m.weinstein))
        fail(ErrorCode::DegenerationHypothesisFails, "degeneration hypothesis fails for p = " + std::to_string(p) +
                                                         ", m = " + std::to_string(height));
    for (int k : ks)
        if (k < 1)
            fail(ErrorCode::InvalidDescriptor, "k must be positive");
}

} // namespace

MoravaSeries morava_tate_tower_serial(const ManifoldModel& m, long p, int height, const std::vector<int>& ks, int N,
                                      int m_max) {
    check_morava_inputs(m, p, height, ks);
    MoravaSeries out{p, height, {}};
    for (int k : ks)
        out.levels.push_back(morava_level(m, p, height, k, N, m_max));
    return out;
}

MoravaSeries morava_tate_tower(const ManifoldModel& m, long p, int height, const std::vector<int>& ks, int N,
                               int m_max) {
    if (ks.size() < 2 || kernels::max_threads() < 2 || kernels::in_parallel())
        return morava_tate_tower_serial(m, p, height, ks, N, m_max);
    check_morava_inputs(m, p, height, ks);
    MoravaSeries out{p, height, std::vector<MoravaLevel>(ks.size())};
    std::vector<std::exception_ptr> errors(ks.size());
    const auto n = static_cast<long>(ks.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            out.levels[idx] = morava_level(m, p, height, ks[idx], N, m_max);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

namespace {

// multiset of (order, degree) expected at level k from a candidate p-local group
std::vector<CoefficientSummand> forward_level(const GradedGroup& g, long p, int k, int dim, int period) {
    std::vector<CoefficientSummand> out;
    auto deg = [&](int d) { return ((dim - d) % period + period) % period; };
    for (const auto& [d, grp] : g) {
        for (long i = 0; i < grp.free; ++i)
            out.push_back({ipow(p, k), deg(d)});
        for (const auto& [pl, mult] : grp.torsion) {
            const long order = ipow(p, std::min(pl.second, k));
            for (int i = 0; i < mult; ++i) {
                out.push_back({order, deg(d)});
                out.push_back({order, deg(d + 1)});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

GradedGroup recover_p_local(const MoravaSeries& series, int dim) {
    const long p = series.p;
    if (!is_prime(p) || series.height < 1)
        fail(ErrorCode::InvalidDescriptor, "Morava data needs a prime and a positive height");
    if (dim < 0 || dim % 2 != 0)
        fail(ErrorCode::SchemaViolation, "dim must be even and nonnegative");
    std::vector<MoravaLevel> levels = series.levels;
    std::sort(levels.begin(), levels.end(), [](const MoravaLevel& a, const MoravaLevel& b) { return a.k < b.k; });
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].k < 1 || (i > 0 && levels[i].k == levels[i - 1].k))
            fail(ErrorCode::SchemaViolation, "levels must have distinct positive k");
    }
    if (levels.size() < 2)
        fail(ErrorCode::NonStabilizingTower, "at least two values of k are needed to separate free from torsion");
    const long q = ipow(p, series.height);
    const int period = static_cast<int>(2 * (q - 1));
    if (period <= dim)
        fail(ErrorCode::DegenerationHypothesisFails, "the period " + std::to_string(period) +
                                                         " does not exceed dim; degrees would collide");

    // homological degree of a graded summand: g = dim - d, with g = period - 1 standing for d = dim + 1
    auto homological = [&](int g) -> int {
        if (g >= 0 && g <= dim)
            return dim - g;
        if (g == period - 1)
            return dim + 1;
        fail(ErrorCode::InconsistentPattern, "summand in degree " + std::to_string(g) + " cannot come from homology");
    };
    auto exponent_of = [&](long order, int k) -> int {
        long v = 1;
        for (int e = 1; e <= k; ++e) {
            v *= p;
            if (v == order)
                return e;
        }
        fail(ErrorCode::InconsistentPattern,
             "order " + std::to_string(order) + " is not a power p^j with 1 <= j <= " + std::to_string(k));
    };

    const MoravaLevel& top = levels.back();
    const int kmax = top.k;
    // counts[l][d] at the top level, l = 1..kmax, d = 0..dim+1
    std::vector<std::vector<long>> counts(static_cast<std::size_t>(kmax + 1),
                                          std::vector<long>(static_cast<std::size_t>(dim + 2), 0));
    if (!top.value.zero) {
        if (top.value.period != 0 && top.value.period != period)
            fail(ErrorCode::InconsistentPattern, "value graded with the wrong period");
        for (const auto& s : top.value.summands)
            ++counts[static_cast<std::size_t>(exponent_of(s.order, kmax))][static_cast<std::size_t>(homological(s.degree))];
    }
    GradedGroup g;
    for (int d = 0; d <= dim + 1; ++d) {
        const long f = counts[static_cast<std::size_t>(kmax)][static_cast<std::size_t>(d)];
        if (f == 0)
            continue;
        if (d == dim + 1)
            fail(ErrorCode::NonStabilizingTower,
                 "top-order summand in the Tor slot: torsion of exponent >= " + std::to_string(kmax) + " at the top");
        g[d].free = f;
    }
    for (int l = 1; l < kmax; ++l) {
        const auto& a = counts[static_cast<std::size_t>(l)];
        long carry = 0; // t_l(d - 1)
        for (int d = 0; d <= dim + 1; ++d) {
            const long t = a[static_cast<std::size_t>(d)] - carry;
            if (t < 0 || (d == dim + 1 && t != 0))
                fail(ErrorCode::InconsistentPattern, "order p^" + std::to_string(l) + " summand in degree " +
                                                         std::to_string(d) + " has no universal-coefficients partner");
            if (t > 0)
                add_torsion(g[d], p, l, static_cast<int>(t));
            carry = t;
        }
    }
    normalize(g);
    for (const auto& lv : levels) {
        std::vector<CoefficientSummand> seen = lv.value.zero ? std::vector<CoefficientSummand>{} : lv.value.summands;
        std::sort(seen.begin(), seen.end());
        if (seen != forward_level(g, p, lv.k, dim, period))
            fail(ErrorCode::InconsistentPattern, "level k = " + std::to_string(lv.k) +
                                                     " does not match any abelian group consistent with k = " +
                                                     std::to_string(kmax));
    }
    return g;
}

GradedGroup recover_integral_homology(const TateValue& rational, const std::vector<MoravaSeries>& morava, int dim) {
    if (dim < 0 || dim % 2 != 0)
        fail(ErrorCode::SchemaViolation, "dim must be even and nonnegative");
    GradedGroup out;
    if (!rational.zero) {
        for (const auto& s : rational.summands) {
            if (s.order != 0)
                fail(ErrorCode::InconsistentPattern, "rational value carries torsion");
            if (s.degree < 0 || s.degree > dim)
                fail(ErrorCode::InconsistentPattern, "rational summand outside [0, dim]");
            ++out[dim - s.degree].free;
        }
    }
    std::set<long> seen;
    for (const auto& ms : morava) {
        if (!seen.insert(ms.p).second)
            fail(ErrorCode::SchemaViolation, "prime " + std::to_string(ms.p) + " listed twice");
        GradedGroup local = recover_p_local(ms, dim);
        std::set<int> degrees;
        for (const auto& [d, grp] : local)
            degrees.insert(d);
        for (const auto& [d, grp] : out)
            degrees.insert(d);
        for (int d : degrees) {
            const long lf = local.count(d) ? local[d].free : 0;
            const long rf = out.count(d) ? out[d].free : 0;
            if (lf > rf)
                fail(ErrorCode::NonStabilizingTower, "p = " + std::to_string(ms.p) + " sees more free summands in degree " +
                                                         std::to_string(d) + " than the rational value; raise kmax");
            if (lf < rf)
                fail(ErrorCode::InconsistentPattern, "p = " + std::to_string(ms.p) + " sees fewer free summands in degree " +
                                                         std::to_string(d) + " than the rational value");
        }
        for (const auto& [d, grp] : local)
            for (const auto& [pl, mult] : grp.torsion)
                add_torsion(out[d], pl.first, pl.second, mult);
    }
    normalize(out);
    return out;
}

BlindedData blind_manifold(const ManifoldModel& m, const std::vector<long>& primes, int kmax, int N, int m_max) {
    validate_manifold(m);
    if (kmax < 2)
        fail(ErrorCode::InvalidDescriptor, "kmax must be at least 2");
    BlindedData b;
    const FglPtr hq = fgl_by_name("hq", N);
    FglModule rational{hq, {ModuleSummand::free(constant_block_coefficients(m, *hq->ring()), 0, true)}};
    b.rational = tate_of_module(rational, m_max);
    std::vector<int> ks;
    for (int k = 1; k <= kmax; ++k)
        ks.push_back(k);
    for (long p : primes)
        b.morava.push_back(morava_tate_tower(m, p, smallest_height(p, m.dim, false), ks, N, m_max));
    return b;
}

CompletedPart completion_of_fg_group(const Group& g, int parity) {
    validate_group(g, ErrorCode::SchemaViolation, "group");
    return CompletedPart{parity, g.free, g.torsion};
}

CompletedModule ku_forward(const KuGroups& g) {
    return CompletedModule{{completion_of_fg_group(g.ku0, 0), completion_of_fg_group(g.ku1, 1)}};
}

KuGroups recover_ku(const CompletedModule& m) {
    KuGroups out;
    bool have[2] = {false, false};
    for (const auto& part : m.parts) {
        if (part.parity != 0 && part.parity != 1)
            fail(ErrorCode::MalformedCompletedModule, "parity must be 0 or 1");
        if (have[part.parity])
            fail(ErrorCode::MalformedCompletedModule, "parity " + std::to_string(part.parity) + " given twice");
        have[part.parity] = true;
        Group g{part.completed_free, part.torsion};
        validate_group(g, ErrorCode::MalformedCompletedModule, "parity " + std::to_string(part.parity));
        (part.parity == 0 ? out.ku0 : out.ku1) = std::move(g);
    }
    return out;
}

} // namespace tatecoh
