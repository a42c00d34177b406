#include "tatecoh/tate.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <sstream>

#include "tatecoh/kernels.hpp"

namespace tatecoh {

ModuleSummand ModuleSummand::free(std::vector<CoefficientSummand> coefficients, int shift, bool constant) {
    ModuleSummand s;
    s.kind = SummandKind::Free;
    s.coefficients = std::move(coefficients);
    s.shift = shift;
    s.constant = constant;
    return s;
}

ModuleSummand ModuleSummand::cyclic(Series relator, int shift) {
    ModuleSummand s;
    s.kind = SummandKind::Cyclic;
    s.relator = std::move(relator);
    s.shift = shift;
    return s;
}

std::string to_string(LocalizationKind k) {
    switch (k) {
    case LocalizationKind::UnitAfterU: return "UnitAfterU";
    case LocalizationKind::NeedsCoefficientInversion: return "NeedsCoefficientInversion";
    case LocalizationKind::Zero: return "Zero";
    case LocalizationKind::Unknown: return "Unknown";
    }
    return "?";
}

std::vector<Series> mult_set(const FormalGroupLaw& F, int m_max) {
    if (m_max < 1)
        fail(ErrorCode::InvalidDescriptor, "m_max must be at least 1");
    std::vector<Series> out;
    out.reserve(static_cast<std::size_t>(m_max));
    for (long m = 1; m <= m_max; ++m)
        out.push_back(F.n_series(m));
    return out;
}

namespace {

RingPtr rationalized(const Ring& R) {
    if (R.is_laurent())
        return make_ring(RingDescriptor::laurent(RingDescriptor::rationals(), R.descriptor().symbol, R.period()));
    return make_ring(RingDescriptor::rationals());
}

Localization classify(const FormalGroupLaw& F, long m, const Series& s, const std::vector<Localization>& earlier) {
    Localization out;
    out.m = m;
    const Ring& R = *F.ring();
    if (s.is_zero() && s.exact()) {
        out.kind = LocalizationKind::Zero;
        return out;
    }
    const UnitProfile prof = unit_profile(s);
    if (prof.certified()) {
        out.kind = LocalizationKind::UnitAfterU;
        out.valuation = prof.valuation;
        return out;
    }
    if (R.scalar_kind() == RingKind::Integers) {
        const Series sq = s.mapped(rationalized(R));
        if (unit_profile(sq).certified()) {
            out.kind = LocalizationKind::NeedsCoefficientInversion;
            for (int j = 0; j <= s.N(); ++j) {
                if (!s[j].empty() && !R.is_unit(s[j])) {
                    out.coefficient = R.format(s[j]);
                    break;
                }
            }
            return out;
        }
    }
    // [a b](u) = [a]([b](u)); a composite of certified units is one.
    for (long a = 2; a * a <= m; ++a) {
        if (m % a != 0)
            continue;
        const Localization& la = earlier[static_cast<std::size_t>(a - 1)];
        const Localization& lb = earlier[static_cast<std::size_t>(m / a - 1)];
        if (la.kind == LocalizationKind::UnitAfterU && lb.kind == LocalizationKind::UnitAfterU) {
            out.kind = LocalizationKind::UnitAfterU;
            out.valuation = *la.valuation * *lb.valuation;
            out.via_factors = true;
            return out;
        }
    }
    out.kind = LocalizationKind::Unknown;
    return out;
}

struct LocalizationSummary {
    bool zero_ring = false;
    bool rationalize = false;
    std::vector<long> unknown;
    std::string base;
    TatePrecision precision;
    int period = 0;
    mpz_class characteristic;
};

std::optional<int> padic_precision(const Ring& R) {
    if (R.scalar_kind() == RingKind::PAdicTruncated)
        return R.scalar_descriptor().precision;
    return std::nullopt;
}

LocalizationSummary summarize(const FormalGroupLaw& F, int m_max) {
    LocalizationSummary s;
    const Ring& R = *F.ring();
    for (const auto& l : localization_behavior(F, m_max)) {
        if (l.kind == LocalizationKind::Zero)
            s.zero_ring = true;
        else if (l.kind == LocalizationKind::NeedsCoefficientInversion)
            s.rationalize = true;
        else if (l.kind == LocalizationKind::Unknown)
            s.unknown.push_back(l.m);
    }
    s.precision = TatePrecision{F.N(), padic_precision(R), m_max};
    s.period = R.period();
    s.characteristic = R.characteristic();
    s.base = (s.rationalize ? rationalized(R)->name() : R.name()) + "((u))^";
    return s;
}

int reduce_degree(long d, int period) {
    if (period == 0)
        return static_cast<int>(d);
    long r = d % period;
    if (r < 0)
        r += period;
    return static_cast<int>(r);
}

bool relator_kills(const FormalGroupLaw& F, const Series& r, std::optional<long> hint, int m_max) {
    const Ring& R = *F.ring();
    if (R.is_unit(r[0]))
        return true;
    if (auto v = r.valuation(); v && R.is_unit(r[*v]))
        return true;
    // [hint] lies in the ideal (r) and annihilates the summand, so inverting it kills the summand.
    if (hint && *hint >= 1 && *hint <= m_max)
        return true;
    for (long m = 1; m <= m_max; ++m) {
        const Series nm = F.n_series(m);
        if (equal_up_to_truncation(nm, r))
            return true;
        if (r.is_zero())
            continue;
        try {
            (void)exact_divide(nm, r);
            return true;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotDivisible && e.code() != ErrorCode::ZeroDivisorPivot &&
                e.code() != ErrorCode::Unsupported)
                throw;
        }
    }
    return false;
}

std::string list_ms(const std::vector<long>& ms) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ms.size(); ++i)
        os << (i ? ", " : "") << "[" << ms[i] << "]";
    return os.str();
}

std::vector<CoefficientSummand> contribution(const FormalGroupLaw& F, const ModuleSummand& s, int m_max,
                                             const LocalizationSummary& L) {
    if (L.zero_ring)
        return {};
    if (s.kind == SummandKind::Cyclic) {
        if (!s.relator)
            fail(ErrorCode::InvalidDescriptor, "cyclic summand without relator");
        if (relator_kills(F, *s.relator, s.divides_hint, m_max))
            return {};
        fail(ErrorCode::UnknownLocalization, "cannot decide whether " + s.relator->str() +
                                                 " becomes trivial after inverting [1..." + std::to_string(m_max) +
                                                 "] at N = " + std::to_string(F.N()));
    }
    if (!L.unknown.empty())
        fail(ErrorCode::UnknownLocalization, "no unit certificate for " + list_ms(L.unknown) + " at N = " +
                                                 std::to_string(F.N()) + ", m_max = " + std::to_string(m_max));
    std::vector<CoefficientSummand> out;
    for (const auto& c : s.coefficients) {
        if (c.order < 0)
            fail(ErrorCode::InvalidDescriptor, "negative torsion order");
        long order = c.order;
        if (L.rationalize || (L.characteristic == 0 && F.ring()->scalar_kind() == RingKind::Rationals)) {
            if (order != 0)
                continue;
        } else if (L.characteristic != 0) {
            const long ch = L.characteristic.get_si();
            order = std::gcd(order == 0 ? ch : order, ch);
            if (order == 1)
                continue;
        }
        out.push_back({order, reduce_degree(static_cast<long>(c.degree) + s.shift, L.period)});
    }
    return out;
}

TateValue assemble(std::vector<CoefficientSummand> pieces, const LocalizationSummary& L) {
    if (pieces.empty())
        return TateValue::zero_value(L.precision);
    std::sort(pieces.begin(), pieces.end());
    TateValue v;
    v.zero = false;
    v.base = L.base;
    v.summands = std::move(pieces);
    v.period = L.period;
    v.precision = L.precision;
    return v;
}

} // namespace

std::vector<Localization> localization_behavior(const FormalGroupLaw& F, int m_max) {
    const auto set = mult_set(F, m_max);
    std::vector<Localization> out;
    out.reserve(set.size());
    for (long m = 1; m <= m_max; ++m)
        out.push_back(classify(F, m, set[static_cast<std::size_t>(m - 1)], out));
    return out;
}

TateValue TateValue::zero_value(TatePrecision precision) {
    TateValue v;
    v.precision = precision;
    return v;
}

std::string TateValue::str() const {
    if (zero)
        return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < summands.size(); ++i) {
        const auto& s = summands[i];
        os << (i ? " + " : "") << (s.order == 0 ? std::string("F") : "Z/" + std::to_string(s.order)) << "[" << s.degree
           << "]";
    }
    os << " over " << base;
    return os.str();
}

FglModule bc_k_presentation(const FglPtr& F, long k) {
    if (k < 1)
        fail(ErrorCode::InvalidDescriptor, "k must be at least 1");
    Series r = F->n_series(k);
    ModuleSummand s = ModuleSummand::cyclic(r);
    s.divides_hint = k;
    const auto v = r.valuation();
    s.zero_divisor = !v || F->ring()->is_zero_divisor(r[*v]);
    return FglModule{F, {s}};
}

ModuleSummand orbit_summand(const FormalGroupLaw& F, long k, OrbitParity parity, int shift) {
    if (k < 1)
        fail(ErrorCode::InvalidDescriptor, "orbit multiplicity must be positive");
    ModuleSummand s;
    if (parity == OrbitParity::Good) {
        s = ModuleSummand::cyclic(F.n_series(k), shift);
    } else {
        if (k % 2 != 0)
            fail(ErrorCode::BadOrbitOddMultiplicity, "bad orbits have even multiplicity, got " + std::to_string(k));
        const Series top = F.n_series(k);
        const Series half = F.n_series(k / 2);
        try {
            s = ModuleSummand::cyclic(exact_divide(top, half), shift);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ZeroDivisorPivot)
                throw;
            // [k] = [2]([k/2]), so [k]/[k/2] = ([2](x)/x) evaluated at x = [k/2].
            const Series two = F.n_series(2);
            std::vector<Coeff> shifted(two.coeffs().begin() + 1, two.coeffs().end());
            const Series ratio(F.ring(), two.N() - 1, std::move(shifted), two.exact());
            s = ModuleSummand::cyclic(substitute(ratio, half), shift);
            s.zero_divisor = true;
        }
    }
    s.divides_hint = k;
    return s;
}

FglModule orbit_local_module(const FglPtr& F, long k, OrbitParity parity, int shift) {
    return FglModule{F, {orbit_summand(*F, k, parity, shift)}};
}

std::vector<CoefficientSummand> tate_contribution(const FormalGroupLaw& F, const ModuleSummand& s, int m_max) {
    return contribution(F, s, m_max, summarize(F, m_max));
}

TateValue tate_of_module(const FglModule& m, int m_max) {
    if (!m.fgl)
        fail(ErrorCode::InvalidDescriptor, "module without formal group law");
    const LocalizationSummary L = summarize(*m.fgl, m_max);
    std::vector<CoefficientSummand> pieces;
    for (const auto& s : m.summands) {
        auto c = contribution(*m.fgl, s, m_max, L);
        pieces.insert(pieces.end(), c.begin(), c.end());
    }
    return assemble(std::move(pieces), L);
}

void validate_tower(const ModuleTower& t) {
    if (t.levels.empty())
        fail(ErrorCode::InvalidTower, "tower has no levels");
    if (t.maps.size() + 1 != t.levels.size())
        fail(ErrorCode::InvalidTower, "expected one structure map per adjacent pair of levels");
    for (const auto& level : t.levels)
        if (level.fgl != t.levels.front().fgl)
            fail(ErrorCode::InvalidTower, "levels use different formal group laws");
    for (std::size_t i = 0; i < t.maps.size(); ++i) {
        const auto& map = t.maps[i];
        const auto& src = t.levels[i].summands;
        const auto& dst = t.levels[i + 1].summands;
        if (map.size() != src.size())
            fail(ErrorCode::InvalidTower, "structure map " + std::to_string(i + 1) + " has the wrong length");
        std::vector<bool> hit(dst.size(), false);
        for (std::size_t s = 0; s < map.size(); ++s) {
            if (!map[s]) {
                if (src[s].constant)
                    fail(ErrorCode::InvalidTower, "constant block is not carried by map " + std::to_string(i + 1));
                continue;
            }
            const std::size_t d = *map[s];
            if (d >= dst.size())
                fail(ErrorCode::InvalidTower, "structure map " + std::to_string(i + 1) + " points past the next level");
            if (hit[d])
                fail(ErrorCode::InvalidTower, "structure map " + std::to_string(i + 1) + " is not injective");
            hit[d] = true;
            if (src[s].constant != dst[d].constant)
                fail(ErrorCode::InvalidTower, "constant block matched to an orbit block");
        }
    }
}

namespace {

using Contributions = std::vector<std::vector<CoefficientSummand>>;

Contributions level_contributions(const FglModule& level, int m_max, const LocalizationSummary& L) {
    Contributions c;
    c.reserve(level.summands.size());
    for (const auto& s : level.summands)
        c.push_back(contribution(*level.fgl, s, m_max, L));
    return c;
}

bool map_is_iso(const Contributions& src, const Contributions& dst, const std::vector<std::optional<std::size_t>>& map) {
    std::vector<bool> hit(dst.size(), false);
    for (std::size_t s = 0; s < src.size(); ++s) {
        if (!map[s]) {
            if (!src[s].empty())
                return false;
            continue;
        }
        hit[*map[s]] = true;
        if (src[s] != dst[*map[s]])
            return false;
    }
    for (std::size_t d = 0; d < dst.size(); ++d)
        if (!hit[d] && !dst[d].empty())
            return false;
    return true;
}

TowerResult finish_tower(const ModuleTower& t, const std::vector<Contributions>& contrib, const LocalizationSummary& L) {
    TowerResult r;
    for (const auto& c : contrib) {
        std::vector<CoefficientSummand> pieces;
        for (const auto& x : c)
            pieces.insert(pieces.end(), x.begin(), x.end());
        r.per_level.push_back(assemble(std::move(pieces), L));
    }
    std::size_t last_break = 0; // 1-based index of the last level whose outgoing map is not an iso
    for (std::size_t i = 0; i < t.maps.size(); ++i)
        if (!map_is_iso(contrib[i], contrib[i + 1], t.maps[i]))
            last_break = i + 1;
    if (last_break != 0 && last_break == t.maps.size())
        fail(ErrorCode::NonStabilizingTower, "the map from level " + std::to_string(last_break) + " to level " +
                                                 std::to_string(last_break + 1) +
                                                 " still changes the Tate contributions");
    r.stabilization_level = last_break + 1;
    r.value = r.per_level.back();
    return r;
}

} // namespace

TowerResult tate_of_tower_serial(const ModuleTower& t, int m_max) {
    validate_tower(t);
    const LocalizationSummary L = summarize(*t.levels.front().fgl, m_max);
    std::vector<Contributions> contrib;
    for (const auto& level : t.levels)
        contrib.push_back(level_contributions(level, m_max, L));
    return finish_tower(t, contrib, L);
}

TowerResult tate_of_tower(const ModuleTower& t, int m_max) {
    validate_tower(t);
    if (t.levels.size() < 2 || kernels::max_threads() < 2 || kernels::in_parallel())
        return tate_of_tower_serial(t, m_max);
    const LocalizationSummary L = summarize(*t.levels.front().fgl, m_max);
    const auto n = static_cast<long>(t.levels.size());
    std::vector<Contributions> contrib(t.levels.size());
    std::vector<std::exception_ptr> errors(t.levels.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            contrib[static_cast<std::size_t>(i)] = level_contributions(t.levels[static_cast<std::size_t>(i)], m_max, L);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return finish_tower(t, contrib, L);
}

ModuleTower subtower(const ModuleTower& t, const std::vector<std::size_t>& keep) {
    validate_tower(t);
    if (keep.empty())
        fail(ErrorCode::InvalidTower, "a subtower keeps at least one level");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= t.levels.size() || (i > 0 && keep[i] <= keep[i - 1]))
            fail(ErrorCode::InvalidTower, "subtower levels must be increasing and in range");
    }
    ModuleTower out;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        out.levels.push_back(t.levels[keep[i]]);
        if (i == 0)
            continue;
        const std::size_t from = keep[i - 1], to = keep[i];
        std::vector<std::optional<std::size_t>> composed(t.levels[from].summands.size());
        for (std::size_t s = 0; s < composed.size(); ++s) {
            std::optional<std::size_t> cur = s;
            for (std::size_t j = from; j < to && cur; ++j)
                cur = t.maps[j][*cur];
            composed[s] = cur;
        }
        out.maps.push_back(std::move(composed));
    }
    return out;
}

ModuleTower constant_tower(const FglModule& m, std::size_t levels) {
    ModuleTower t;
    for (std::size_t i = 0; i < levels; ++i) {
        t.levels.push_back(m);
        if (i > 0) {
            std::vector<std::optional<std::size_t>> id(m.summands.size());
            for (std::size_t s = 0; s < id.size(); ++s)
                id[s] = s;
            t.maps.push_back(std::move(id));
        }
    }
    return t;
}

} // namespace tatecoh
