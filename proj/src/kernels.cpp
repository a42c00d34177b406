#include "tatecoh/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tatecoh::kernels {

namespace {
constexpr int kParallelSeriesThreshold = 48;
constexpr int kParallelMultiThreshold = 12;
} // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool in_parallel() {
#ifdef _OPENMP
    return omp_in_parallel() != 0;
#else
    return false;
#endif
}

MultiCoeffs::MultiCoeffs(int nvars_, int N_) : nvars(nvars_), N(N_) {
    const auto s = static_cast<std::size_t>(N + 1);
    data.resize(nvars == 3 ? s * s * s : s * s);
}

std::vector<std::vector<MonomialRef>> nonzero_rows(const MultiCoeffs& a) {
    std::vector<std::vector<MonomialRef>> rows(static_cast<std::size_t>(a.N + 1));
    for (int i = 0; i <= a.N; ++i) {
        for (int j = 0; i + j <= a.N; ++j) {
            if (a.nvars == 2) {
                const auto idx = a.index(i, j);
                if (!a.data[idx].empty())
                    rows[static_cast<std::size_t>(i)].push_back({{i, j, 0}, idx});
                continue;
            }
            for (int k = 0; i + j + k <= a.N; ++k) {
                const auto idx = a.index(i, j, k);
                if (!a.data[idx].empty())
                    rows[static_cast<std::size_t>(i)].push_back({{i, j, k}, idx});
            }
        }
    }
    return rows;
}

Coeffs series_mul_serial(const Ring& ring, const Coeffs& a, const Coeffs& b, int N) {
    Coeffs out(static_cast<std::size_t>(N + 1));
    const int na = std::min<int>(N, static_cast<int>(a.size()) - 1);
    const int nb = std::min<int>(N, static_cast<int>(b.size()) - 1);
    for (int i = 0; i <= na; ++i) {
        if (a[static_cast<std::size_t>(i)].empty())
            continue;
        for (int j = 0; j <= nb && i + j <= N; ++j)
            ring.add_product(out[static_cast<std::size_t>(i + j)], a[static_cast<std::size_t>(i)],
                             b[static_cast<std::size_t>(j)]);
    }
    return out;
}

Coeffs series_mul_parallel(const Ring& ring, const Coeffs& a, const Coeffs& b, int N) {
    Coeffs out(static_cast<std::size_t>(N + 1));
    const int na = std::min<int>(N, static_cast<int>(a.size()) - 1);
    const int nb = std::min<int>(N, static_cast<int>(b.size()) - 1);
#pragma omp parallel for schedule(dynamic, 4)
    for (int k = 0; k <= N; ++k) {
        Coeff acc;
        const int lo = std::max(0, k - nb);
        const int hi = std::min(k, na);
        for (int i = lo; i <= hi; ++i)
            ring.add_product(acc, a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(k - i)]);
        out[static_cast<std::size_t>(k)] = std::move(acc);
    }
    return out;
}

Coeffs series_mul(const Ring& ring, const Coeffs& a, const Coeffs& b, int N) {
    if (N >= kParallelSeriesThreshold && max_threads() > 1 && !in_parallel())
        return series_mul_parallel(ring, a, b, N);
    return series_mul_serial(ring, a, b, N);
}

MultiCoeffs multi_mul_serial(const Ring& ring, const MultiCoeffs& a, const MultiCoeffs& b) {
    const int N = std::min(a.N, b.N);
    MultiCoeffs out(a.nvars, N);
    const auto ra = nonzero_rows(a);
    const auto rb = nonzero_rows(b);
    for (const auto& row_a : ra) {
        for (const auto& x : row_a) {
            for (const auto& row_b : rb) {
                for (const auto& y : row_b) {
                    const int e0 = x.e[0] + y.e[0], e1 = x.e[1] + y.e[1], e2 = x.e[2] + y.e[2];
                    if (e0 + e1 + e2 > N)
                        continue;
                    ring.add_product(out.data[out.index(e0, e1, e2)], a.data[x.idx], b.data[y.idx]);
                }
            }
        }
    }
    return out;
}

MultiCoeffs multi_mul_parallel(const Ring& ring, const MultiCoeffs& a, const MultiCoeffs& b) {
    const int N = std::min(a.N, b.N);
    MultiCoeffs out(a.nvars, N);
    const auto ra = nonzero_rows(a);
    const auto rb = nonzero_rows(b);
    // Output row r (first exponent r) only receives pairs with row_a + row_b == r.
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r <= N; ++r) {
        for (int i = 0; i <= r; ++i) {
            if (i > a.N || r - i > b.N)
                continue;
            for (const auto& x : ra[static_cast<std::size_t>(i)]) {
                for (const auto& y : rb[static_cast<std::size_t>(r - i)]) {
                    const int e1 = x.e[1] + y.e[1], e2 = x.e[2] + y.e[2];
                    if (r + e1 + e2 > N)
                        continue;
                    ring.add_product(out.data[out.index(r, e1, e2)], a.data[x.idx], b.data[y.idx]);
                }
            }
        }
    }
    return out;
}

MultiCoeffs multi_mul(const Ring& ring, const MultiCoeffs& a, const MultiCoeffs& b) {
    if (std::min(a.N, b.N) >= kParallelMultiThreshold && max_threads() > 1 && !in_parallel())
        return multi_mul_parallel(ring, a, b);
    return multi_mul_serial(ring, a, b);
}

} // namespace tatecoh::kernels
