#pragma once

// Product kernels for truncated series.
//
// Every kernel exists twice: a serial reference that scatters input pairs into
// the output, and an OpenMP version that partitions the output so each thread
// writes disjoint coefficients. Both compute exact results, so they must agree
// bit for bit; tests and the benchmark compare them.

#include <vector>

#include "tatecoh/ring.hpp"

namespace tatecoh::kernels {

using Coeffs = std::vector<Coeff>;

/// Dense storage for series in 2 or 3 variables truncated at total degree N.
struct MultiCoeffs {
    int nvars = 2;
    int N = 0;
    Coeffs data;

    MultiCoeffs() = default;
    MultiCoeffs(int nvars_, int N_);

    std::size_t index(int i, int j, int k = 0) const {
        const auto s = static_cast<std::size_t>(N + 1);
        return (static_cast<std::size_t>(i) * s + static_cast<std::size_t>(j)) * (nvars == 3 ? s : 1) +
               (nvars == 3 ? static_cast<std::size_t>(k) : 0);
    }
};

/// Nonzero monomials grouped by exponent of the first variable.
struct MonomialRef {
    int e[3];
    std::size_t idx;
};
std::vector<std::vector<MonomialRef>> nonzero_rows(const MultiCoeffs& a);

Coeffs series_mul_serial(const Ring& ring, const Coeffs& a, const Coeffs& b, int N);
Coeffs series_mul_parallel(const Ring& ring, const Coeffs& a, const Coeffs& b, int N);
/// Picks the parallel kernel for large truncations outside an active parallel region.
Coeffs series_mul(const Ring& ring, const Coeffs& a, const Coeffs& b, int N);

MultiCoeffs multi_mul_serial(const Ring& ring, const MultiCoeffs& a, const MultiCoeffs& b);
MultiCoeffs multi_mul_parallel(const Ring& ring, const MultiCoeffs& a, const MultiCoeffs& b);
MultiCoeffs multi_mul(const Ring& ring, const MultiCoeffs& a, const MultiCoeffs& b);

/// Number of worker threads OpenMP would use (1 when built without OpenMP).
int max_threads();
bool in_parallel();

} // namespace tatecoh::kernels
