#include "tatecoh/multiseries.hpp"

#include <algorithm>

namespace tatecoh {

MultiSeries::MultiSeries(RingPtr ring, int nvars, int N) : ring_(std::move(ring)), data_(nvars, N) {
    if (nvars != 2 && nvars != 3)
        fail(ErrorCode::Unsupported, "multivariate series support 2 or 3 variables");
}

MultiSeries MultiSeries::variable(const RingPtr& ring, int nvars, int N, int which) {
    MultiSeries s(ring, nvars, N);
    std::array<int, 3> e{};
    e[static_cast<std::size_t>(which)] = 1;
    if (N >= 1)
        s.set(e[0], e[1], e[2], ring->one());
    else
        s.exact_ = false;
    return s;
}

MultiSeries MultiSeries::from_univariate(const Series& f, int nvars, int which) {
    MultiSeries s(f.ring(), nvars, f.N());
    for (int j = 0; j <= f.N(); ++j) {
        if (f[j].empty())
            continue;
        std::array<int, 3> e{};
        e[static_cast<std::size_t>(which)] = j;
        s.set(e[0], e[1], e[2], f[j]);
    }
    s.exact_ = f.exact();
    return s;
}

void MultiSeries::accumulate(int i, int j, int k, const Coeff& c) { ring_->add_to(data_.data[data_.index(i, j, k)], c); }

std::vector<Monomial> MultiSeries::terms() const {
    std::vector<Monomial> out;
    for (const auto& row : kernels::nonzero_rows(data_))
        for (const auto& m : row)
            out.push_back(Monomial{{m.e[0], m.e[1], m.e[2]}, data_.data[m.idx]});
    return out;
}

int MultiSeries::total_degree() const {
    int d = -1;
    for (const auto& row : kernels::nonzero_rows(data_))
        for (const auto& m : row)
            d = std::max(d, m.e[0] + m.e[1] + m.e[2]);
    return d;
}

MultiSeries MultiSeries::truncated(int N) const {
    if (N >= this->N())
        return *this;
    MultiSeries s(ring_, nvars(), N);
    for (const auto& t : terms())
        if (t.exps[0] + t.exps[1] + t.exps[2] <= N)
            s.set(t.exps[0], t.exps[1], t.exps[2], t.coeff);
    s.exact_ = exact_ && total_degree() <= N;
    return s;
}

MultiSeries MultiSeries::mapped(const RingPtr& target) const {
    MultiSeries s(target, nvars(), N());
    for (const auto& t : terms())
        s.set(t.exps[0], t.exps[1], t.exps[2], map_coeff(*ring_, *target, t.coeff));
    s.exact_ = exact_;
    return s;
}

MultiSeries MultiSeries::embedded(int nvars_target, std::array<int, 2> var_of) const {
    if (nvars() != 2)
        fail(ErrorCode::Unsupported, "only bivariate series can be embedded");
    MultiSeries s(ring_, nvars_target, N());
    for (const auto& t : terms()) {
        std::array<int, 3> e{};
        e[static_cast<std::size_t>(var_of[0])] += t.exps[0];
        e[static_cast<std::size_t>(var_of[1])] += t.exps[1];
        s.set(e[0], e[1], e[2], t.coeff);
    }
    s.exact_ = exact_;
    return s;
}

namespace {

void require_compatible(const MultiSeries& a, const MultiSeries& b) {
    require_same_ring(*a.ring(), *b.ring());
    if (a.nvars() != b.nvars())
        fail(ErrorCode::Unsupported, "mixing series in different numbers of variables");
}

bool fits(const MultiSeries& a, int N) { return a.exact() && a.total_degree() <= N; }

int degree_sum(const std::array<int, 3>& e) { return e[0] + e[1] + e[2]; }

} // namespace

MultiSeries add(const MultiSeries& a, const MultiSeries& b) {
    require_compatible(a, b);
    const int N = std::min(a.N(), b.N());
    MultiSeries out = a.truncated(N);
    for (const auto& t : b.terms())
        if (degree_sum(t.exps) <= N)
            out.accumulate(t.exps[0], t.exps[1], t.exps[2], t.coeff);
    out.mark_exact(fits(a, N) && fits(b, N));
    return out;
}

MultiSeries scalar_mul(const Coeff& c, const MultiSeries& a) {
    MultiSeries out(a.ring(), a.nvars(), a.N());
    for (const auto& t : a.terms())
        out.set(t.exps[0], t.exps[1], t.exps[2], a.ring()->mul(c, t.coeff));
    out.mark_exact(a.exact());
    return out;
}

MultiSeries sub(const MultiSeries& a, const MultiSeries& b) { return add(a, scalar_mul(a.ring()->from_int(-1), b)); }

MultiSeries mul(const MultiSeries& a, const MultiSeries& b) {
    require_compatible(a, b);
    const int N = std::min(a.N(), b.N());
    MultiSeries out(a.ring(), a.nvars(), N);
    out.raw() = kernels::multi_mul(*a.ring(), a.raw(), b.raw());
    const int da = a.total_degree(), db = b.total_degree();
    out.mark_exact((a.exact() && da < 0) || (b.exact() && db < 0) || (a.exact() && b.exact() && da + db <= N));
    return out;
}

MultiSeries pow(const MultiSeries& a, unsigned e) {
    MultiSeries result(a.ring(), a.nvars(), a.N());
    result.set(0, 0, 0, a.ring()->one());
    MultiSeries base = a;
    while (e > 0) {
        if (e & 1U)
            result = mul(result, base);
        e >>= 1U;
        if (e > 0)
            base = mul(base, base);
    }
    return result;
}

bool equal_up_to_truncation(const MultiSeries& a, const MultiSeries& b) {
    require_compatible(a, b);
    const int N = std::min(a.N(), b.N());
    return a.truncated(N).terms().size() == b.truncated(N).terms().size() && [&] {
        for (const auto& t : a.truncated(N).terms())
            if (!coeff_equal(t.coeff, b.coeff(t.exps[0], t.exps[1], t.exps[2])))
                return false;
        return true;
    }();
}

Series evaluate(const MultiSeries& F, const Series& a, const Series& b) {
    if (F.nvars() != 2)
        fail(ErrorCode::Unsupported, "evaluate expects a bivariate series");
    require_same_ring(*F.ring(), *a.ring());
    require_same_ring(*F.ring(), *b.ring());
    if (!a[0].empty() || !b[0].empty())
        fail(ErrorCode::NonzeroConstantTerm, "evaluating at series with nonzero constant term");
    const int N = std::min({F.N(), a.N(), b.N()});
    const Ring& R = *F.ring();
    const auto terms = F.terms();
    int maxi = 0, maxj = 0;
    for (const auto& t : terms) {
        maxi = std::max(maxi, t.exps[0]);
        maxj = std::max(maxj, t.exps[1]);
    }
    const Series at = a.truncated(N);
    std::vector<Series> apow;
    apow.push_back(Series::constant(a.ring(), N, R.one()));
    for (int i = 1; i <= maxi; ++i)
        apow.push_back(mul(apow.back(), at));

    std::vector<std::vector<Coeff>> inner(static_cast<std::size_t>(maxj + 1),
                                          std::vector<Coeff>(static_cast<std::size_t>(N + 1)));
    for (const auto& t : terms) {
        const Series& ai = apow[static_cast<std::size_t>(t.exps[0])];
        auto& dst = inner[static_cast<std::size_t>(t.exps[1])];
        for (int k = 0; k + t.exps[1] <= N; ++k)
            R.add_product(dst[static_cast<std::size_t>(k)], t.coeff, ai[k]);
    }
    const Series bt = b.truncated(N);
    Series acc(a.ring(), N, inner[static_cast<std::size_t>(maxj)]);
    for (int j = maxj - 1; j >= 0; --j) {
        acc = mul(acc, bt);
        std::vector<Coeff> c = acc.coeffs();
        const auto& add_in = inner[static_cast<std::size_t>(j)];
        for (int k = 0; k <= N; ++k)
            R.add_to(c[static_cast<std::size_t>(k)], add_in[static_cast<std::size_t>(k)]);
        acc = Series(a.ring(), N, std::move(c));
    }
    bool exact = F.exact() && a.exact() && b.exact();
    if (exact) {
        for (const auto& t : terms)
            if (static_cast<long>(t.exps[0]) * a.top() + static_cast<long>(t.exps[1]) * b.top() > N)
                exact = false;
    }
    acc.mark_exact(exact);
    return acc;
}

MultiSeries compose(const MultiSeries& F, const MultiSeries& A, const MultiSeries& B) {
    if (F.nvars() != 2)
        fail(ErrorCode::Unsupported, "compose expects a bivariate outer series");
    require_compatible(A, B);
    require_same_ring(*F.ring(), *A.ring());
    if (!A.coeff(0, 0, 0).empty() || !B.coeff(0, 0, 0).empty())
        fail(ErrorCode::NonzeroConstantTerm, "composing with series with nonzero constant term");
    const int N = std::min({F.N(), A.N(), B.N()});
    const Ring& R = *F.ring();
    const auto terms = F.terms();
    int maxi = 0, maxj = 0;
    for (const auto& t : terms) {
        maxi = std::max(maxi, t.exps[0]);
        maxj = std::max(maxj, t.exps[1]);
    }
    const MultiSeries At = A.truncated(N);
    std::vector<MultiSeries> apow;
    MultiSeries one(A.ring(), A.nvars(), N);
    one.set(0, 0, 0, R.one());
    apow.push_back(one);
    for (int i = 1; i <= maxi; ++i)
        apow.push_back(mul(apow.back(), At));

    std::vector<MultiSeries> inner(static_cast<std::size_t>(maxj + 1), MultiSeries(A.ring(), A.nvars(), N));
    for (const auto& t : terms) {
        auto& dst = inner[static_cast<std::size_t>(t.exps[1])];
        for (const auto& m : apow[static_cast<std::size_t>(t.exps[0])].terms()) {
            if (degree_sum(m.exps) + t.exps[1] > N)
                continue;
            Coeff c = R.mul(t.coeff, m.coeff);
            dst.accumulate(m.exps[0], m.exps[1], m.exps[2], c);
        }
    }
    const MultiSeries Bt = B.truncated(N);
    MultiSeries acc = inner[static_cast<std::size_t>(maxj)];
    for (int j = maxj - 1; j >= 0; --j)
        acc = add(mul(acc, Bt), inner[static_cast<std::size_t>(j)]);
    bool exact = F.exact() && A.exact() && B.exact();
    if (exact) {
        const int da = A.total_degree(), db = B.total_degree();
        for (const auto& t : terms)
            if (static_cast<long>(t.exps[0]) * da + static_cast<long>(t.exps[1]) * db > N)
                exact = false;
    }
    acc.mark_exact(exact);
    return acc;
}

MultiSeries compose(const Series& f, const MultiSeries& A) {
    require_same_ring(*f.ring(), *A.ring());
    if (!A.coeff(0, 0, 0).empty())
        fail(ErrorCode::NonzeroConstantTerm, "composing with a series with nonzero constant term");
    const int N = std::min(f.N(), A.N());
    const MultiSeries At = A.truncated(N);
    int nonzero = 0;
    for (int k = 0; k <= N; ++k)
        nonzero += f[k].empty() ? 0 : 1;
    MultiSeries acc(A.ring(), A.nvars(), N);
    if (nonzero <= 4) {
        for (int k = 0; k <= N; ++k) {
            if (f[k].empty())
                continue;
            acc = add(acc, scalar_mul(f[k], pow(At, static_cast<unsigned>(k))));
        }
    } else {
        const int top = std::min(f.top(), N);
        acc.set(0, 0, 0, f[top]);
        for (int k = top - 1; k >= 0; --k) {
            acc = mul(acc, At);
            acc.accumulate(0, 0, 0, f[k]);
        }
    }
    const bool exact = f.exact() && f.top() <= N && A.exact() &&
                       static_cast<long>(std::max(f.top(), 0)) * A.total_degree() <= N;
    acc.mark_exact(exact);
    return acc;
}

} // namespace tatecoh
