#pragma once

// Random generators and reference computations shared by the test binaries.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "tatecoh/floer.hpp"

namespace testsupport {

using namespace tatecoh;

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(range(0, static_cast<long>(v.size()) - 1))];
    }
    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

inline Group random_group(Gen& g, int max_rank, int max_exp, const std::vector<long>& primes, double torsion_p) {
    Group out;
    out.free = g.range(0, max_rank);
    while (g.coin(torsion_p)) {
        add_torsion(out, g.pick(primes), static_cast<int>(g.range(1, max_exp)), static_cast<int>(g.range(1, 2)));
        torsion_p /= 2;
    }
    return out;
}

inline ManifoldModel random_manifold(Gen& g, int max_dim = 8, int max_rank = 4, int max_exp = 3,
                                     const std::vector<long>& primes = {2, 3, 5}) {
    ManifoldModel m;
    m.dim = 2 * static_cast<int>(g.range(0, max_dim / 2));
    for (int d = 0; d <= m.dim; ++d) {
        Group grp = random_group(g, max_rank, max_exp, primes, 0.4);
        if (d == 0 && grp.free == 0)
            grp.free = 1;
        if (!grp.trivial())
            m.homology[d] = grp;
    }
    return m;
}

/// Distinct positive rational lengths with denominators up to 4.
inline std::vector<OrbitDatum> random_orbits(Gen& g, int max_count) {
    std::vector<OrbitDatum> out;
    const long count = g.range(0, max_count);
    std::vector<mpq_class> used;
    while (static_cast<long>(out.size()) < count) {
        mpq_class len(g.range(1, 40), g.range(1, 4));
        len.canonicalize();
        if (std::find(used.begin(), used.end(), len) != used.end())
            continue;
        used.push_back(len);
        OrbitDatum o;
        o.length = len;
        o.parity = g.coin(0.3) ? OrbitParity::Bad : OrbitParity::Good;
        o.multiplicity = o.parity == OrbitParity::Bad ? 2 * g.range(1, 5) : g.range(1, 12);
        o.shift = static_cast<int>(g.range(-3, 3));
        out.push_back(o);
    }
    return out;
}

/// Increasing slopes with exact denominator 5, so they never meet an orbit length.
inline std::vector<mpq_class> random_slopes(Gen& g, int max_count) {
    std::vector<mpq_class> out;
    const long count = g.range(1, max_count);
    long cur = 0;
    for (long i = 0; i < count; ++i) {
        cur += g.range(1, 60);
        if (cur % 5 == 0)
            ++cur;
        mpq_class s(cur, 5);
        s.canonicalize();
        out.push_back(s);
    }
    return out;
}

/// Binomial coefficients by Pascal's rule.
inline std::vector<std::vector<mpz_class>> pascal(int n) {
    std::vector<std::vector<mpz_class>> c(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        c[i].assign(static_cast<std::size_t>(i + 1), 1);
        for (int j = 1; j < i; ++j)
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

inline long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

/// Universal coefficients on a single group: free ranks and torsion orders in cohomological degrees,
/// computed without the library. Tor terms shift down by one.
inline std::vector<CoefficientSummand> uct_reference(const ManifoldModel& m, bool torsion_coefficients) {
    std::vector<CoefficientSummand> out;
    for (const auto& [d, grp] : m.homology) {
        for (long i = 0; i < grp.free; ++i)
            out.push_back({0, m.dim - d});
        for (const auto& [pl, mult] : grp.torsion)
            for (int i = 0; i < mult; ++i) {
                out.push_back({ipow(pl.first, pl.second), m.dim - d});
                if (torsion_coefficients)
                    out.push_back({ipow(pl.first, pl.second), m.dim - d - 1});
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline KuGroups random_ku(Gen& g) {
    const std::vector<long> primes = {2, 3, 5, 7, 11};
    return {random_group(g, 5, 4, primes, 0.6), random_group(g, 5, 4, primes, 0.6)};
}

} // namespace testsupport
