#include "tatecoh/series.hpp"

#include <algorithm>
#include <sstream>

namespace tatecoh {

bool coeff_equal(const Coeff& a, const Coeff& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].exp != b[i].exp || a[i].value != b[i].value)
            return false;
    return true;
}

Series::Series(RingPtr ring, int N) : ring_(std::move(ring)), N_(N), a_(static_cast<std::size_t>(N + 1)) {
    if (N < 0)
        fail(ErrorCode::PrecisionExhausted, "negative truncation order");
    exact_ = true;
}

Series::Series(RingPtr ring, int N, std::vector<Coeff> coeffs, bool exact)
    : ring_(std::move(ring)), N_(N), a_(std::move(coeffs)), exact_(exact) {
    if (N < 0)
        fail(ErrorCode::PrecisionExhausted, "negative truncation order");
    if (a_.size() > static_cast<std::size_t>(N + 1)) {
        for (std::size_t j = static_cast<std::size_t>(N + 1); j < a_.size(); ++j)
            if (!a_[j].empty())
                exact_ = false;
    }
    a_.resize(static_cast<std::size_t>(N + 1));
}

Series Series::zero(const RingPtr& ring, int N) { return Series(ring, N); }

Series Series::constant(const RingPtr& ring, int N, Coeff c) {
    Series s(ring, N);
    s.a_[0] = std::move(c);
    return s;
}

Series Series::variable(const RingPtr& ring, int N) {
    Series s = monomial(ring, N, 1, ring->one());
    s.hom_degree_ = -2;
    return s;
}

Series Series::monomial(const RingPtr& ring, int N, int k, Coeff c) {
    Series s(ring, N);
    if (k <= N)
        s.a_[static_cast<std::size_t>(k)] = std::move(c);
    else if (!c.empty())
        s.exact_ = false;
    return s;
}

bool Series::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Coeff& c) { return c.empty(); });
}

std::optional<int> Series::valuation() const {
    for (int j = 0; j <= N_; ++j)
        if (!a_[static_cast<std::size_t>(j)].empty())
            return j;
    return std::nullopt;
}

int Series::top() const {
    for (int j = N_; j >= 0; --j)
        if (!a_[static_cast<std::size_t>(j)].empty())
            return j;
    return -1;
}

Series& Series::with_degree(int d) {
    for (int j = 0; j <= N_; ++j) {
        const Coeff& c = a_[static_cast<std::size_t>(j)];
        if (c.empty())
            continue;
        auto deg = ring_->degree(c);
        if (!deg || *deg != d - j * var_degree_)
            fail(ErrorCode::DegreeMismatch, "coefficient of u^" + std::to_string(j) + " is not of degree " +
                                                std::to_string(d - j * var_degree_));
    }
    hom_degree_ = d;
    return *this;
}

Series Series::truncated(int N) const {
    if (N >= N_)
        return *this;
    std::vector<Coeff> c(a_.begin(), a_.begin() + N + 1);
    Series s(ring_, N, std::move(c), exact_ && top() <= N);
    s.hom_degree_ = hom_degree_;
    return s;
}

Series Series::mapped(const RingPtr& target) const {
    std::vector<Coeff> c;
    c.reserve(a_.size());
    for (const auto& x : a_)
        c.push_back(map_coeff(*ring_, *target, x));
    Series s(target, N_, std::move(c), exact_);
    if (hom_degree_) {
        // degrees survive any canonical map; recheck in case the target is ungraded
        try {
            s.with_degree(*hom_degree_);
        } catch (const Error&) {
        }
    }
    return s;
}

std::string Series::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j <= N_; ++j) {
        const Coeff& c = a_[static_cast<std::size_t>(j)];
        if (c.empty())
            continue;
        std::string coef = ring_->format(c);
        bool negative = false;
        if (c.size() == 1 && coef.front() == '-') {
            negative = true;
            coef.erase(0, 1);
        } else if (c.size() > 1) {
            coef = "(" + coef + ")";
        }
        if (!first)
            os << (negative ? " - " : " + ");
        else if (negative)
            os << "-";
        first = false;
        if (j == 0) {
            os << coef;
            continue;
        }
        if (coef != "1")
            os << coef << (c.size() == 1 && c[0].exp != 0 ? "*" : "");
        os << var;
        if (j != 1)
            os << "^" << j;
    }
    if (first)
        os << "0";
    if (!exact_)
        os << " + O(" << var << "^" << N_ + 1 << ")";
    return os.str();
}

namespace {

void require_compatible(const Series& f, const Series& g) {
    require_same_ring(*f.ring(), *g.ring());
    if (f.variable_degree() != g.variable_degree())
        fail(ErrorCode::DegreeMismatch, "series in variables of different degree");
}

bool fits(const Series& f, int N) { return f.exact() && f.top() <= N; }

} // namespace

Series add(const Series& f, const Series& g) {
    require_compatible(f, g);
    const int N = std::min(f.N(), g.N());
    std::optional<int> deg;
    if (f.hom_degree_ && g.hom_degree_) {
        if (*f.hom_degree_ != *g.hom_degree_ && !f.is_zero() && !g.is_zero())
            fail(ErrorCode::DegreeMismatch, "adding series of degrees " + std::to_string(*f.hom_degree_) + " and " +
                                                std::to_string(*g.hom_degree_));
        deg = f.is_zero() ? g.hom_degree_ : f.hom_degree_;
    }
    std::vector<Coeff> c(static_cast<std::size_t>(N + 1));
    for (int j = 0; j <= N; ++j)
        c[static_cast<std::size_t>(j)] = f.ring()->add(f[j], g[j]);
    Series s(f.ring(), N, std::move(c), fits(f, N) && fits(g, N));
    s.hom_degree_ = deg;
    return s;
}

Series neg(const Series& f) {
    std::vector<Coeff> c;
    for (const auto& x : f.coeffs())
        c.push_back(f.ring()->neg(x));
    Series s(f.ring(), f.N(), std::move(c), f.exact());
    if (f.homogeneous_degree())
        s.with_degree(*f.homogeneous_degree());
    return s;
}

Series sub(const Series& f, const Series& g) { return add(f, neg(g)); }

Series mul(const Series& f, const Series& g) {
    require_compatible(f, g);
    const int N = std::min(f.N(), g.N());
    auto c = kernels::series_mul(*f.ring(), f.coeffs(), g.coeffs(), N);
    const bool exact = (f.exact() && f.is_zero()) || (g.exact() && g.is_zero()) ||
                       (f.exact() && g.exact() && f.top() + g.top() <= N);
    Series s(f.ring(), N, std::move(c), exact);
    if (f.hom_degree_ && g.hom_degree_)
        s.hom_degree_ = *f.hom_degree_ + *g.hom_degree_;
    return s;
}

Series scalar_mul(const Element& c, const Series& f) {
    require_same_ring(*c.ring(), *f.ring());
    std::vector<Coeff> out;
    out.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs())
        out.push_back(f.ring()->mul(c.raw(), x));
    Series s(f.ring(), f.N(), std::move(out), f.exact());
    if (f.homogeneous_degree() && c.degree())
        s.with_degree(*f.homogeneous_degree() + *c.degree());
    return s;
}

Series pow(const Series& f, unsigned e) {
    Series result = Series::constant(f.ring(), f.N(), f.ring()->one());
    if (f.homogeneous_degree())
        result.with_degree(0);
    Series base = f;
    while (e > 0) {
        if (e & 1U)
            result = mul(result, base);
        e >>= 1U;
        if (e > 0)
            base = mul(base, base);
    }
    return result;
}

Series substitute(const Series& f, const Series& g) {
    require_compatible(f, g);
    if (!g[0].empty())
        fail(ErrorCode::NonzeroConstantTerm, "substituting a series with nonzero constant term");
    const int N = std::min(f.N(), g.N());
    const int top = std::min(f.top(), N);
    Series acc = Series::zero(f.ring(), N);
    if (top >= 0) {
        acc = Series::constant(f.ring(), N, f[top]);
        for (int j = top - 1; j >= 0; --j) {
            acc = mul(acc, g.truncated(N));
            std::vector<Coeff> c = acc.coeffs();
            c[0] = f.ring()->add(c[0], f[j]);
            acc = Series(f.ring(), N, std::move(c));
        }
    }
    const bool exact = f.exact() && f.top() <= N &&
                       (f.top() <= 0 || (g.exact() && static_cast<long>(f.top()) * g.top() <= N));
    acc.mark_exact(exact);
    if (f.homogeneous_degree() && g.homogeneous_degree() && *g.homogeneous_degree() == f.variable_degree())
        acc.with_degree(*f.homogeneous_degree());
    return acc;
}

Series invert_series(const Series& f) {
    const Ring& R = *f.ring();
    auto inv0 = R.inverse(f[0]);
    if (!inv0)
        fail(ErrorCode::NonUnitConstantTerm, "constant term " + R.format(f[0]) + " is not a unit");
    const int N = f.N();
    std::vector<Coeff> b(static_cast<std::size_t>(N + 1));
    b[0] = *inv0;
    for (int j = 1; j <= N; ++j) {
        Coeff acc;
        for (int i = 1; i <= j; ++i)
            R.add_product(acc, f[i], b[static_cast<std::size_t>(j - i)]);
        b[static_cast<std::size_t>(j)] = R.neg(R.mul(*inv0, acc));
    }
    Series s(f.ring(), N, std::move(b), f.exact() && f.top() == 0);
    if (f.homogeneous_degree())
        s.with_degree(-*f.homogeneous_degree());
    return s;
}

Series exact_divide(const Series& f, const Series& g) {
    require_compatible(f, g);
    const Ring& R = *f.ring();
    const int N = std::min(f.N(), g.N());
    std::optional<int> shift;
    for (int j = 0; j <= N; ++j) {
        if (!g[j].empty()) {
            shift = j;
            break;
        }
    }
    if (!shift)
        fail(ErrorCode::ZeroDivisorPivot, "division by a series that vanishes to order " + std::to_string(N));
    const int s = *shift;
    const Coeff& pivot = g[s];
    if (R.is_zero_divisor(pivot))
        fail(ErrorCode::ZeroDivisorPivot, "lowest coefficient " + R.format(pivot) + " is a zero divisor");
    for (int j = 0; j < s; ++j)
        if (!f[j].empty())
            fail(ErrorCode::NotDivisible, "dividend has a term below u^" + std::to_string(s));
    const int M = N - s;
    std::vector<Coeff> q(static_cast<std::size_t>(M + 1));
    for (int j = 0; j <= M; ++j) {
        Coeff r = f[s + j];
        for (int i = 0; i < j; ++i) {
            if (!q[static_cast<std::size_t>(i)].empty() && !g[s + j - i].empty())
                r = R.sub(r, R.mul(g[s + j - i], q[static_cast<std::size_t>(i)]));
        }
        auto qj = R.divide(r, pivot);
        if (!qj)
            fail(ErrorCode::NotDivisible, "coefficient of u^" + std::to_string(j) + " does not divide");
        q[static_cast<std::size_t>(j)] = std::move(*qj);
    }
    Series out(f.ring(), M, std::move(q));
    out.mark_exact(f.exact() && g.exact() && f.top() <= N && g.top() <= N && out.top() + g.top() <= N);
    if (f.homogeneous_degree() && g.homogeneous_degree())
        out.with_degree(*f.homogeneous_degree() - *g.homogeneous_degree());
    return out;
}

Series compositional_inverse(const Series& f) {
    const Ring& R = *f.ring();
    if (!f[0].empty())
        fail(ErrorCode::NonzeroConstantTerm, "compositional inverse needs f(0) = 0");
    auto a1_inv = R.inverse(f[1]);
    if (!a1_inv)
        fail(ErrorCode::NotAUnit, "linear coefficient " + R.format(f[1]) + " is not a unit");
    const int N = f.N();
    std::vector<Coeff> g(static_cast<std::size_t>(N + 1));
    g[1] = *a1_inv;
    for (int j = 2; j <= N; ++j) {
        Series gj(f.ring(), j, std::vector<Coeff>(g.begin(), g.begin() + j + 1));
        Series comp = substitute(f.truncated(j), gj);
        g[static_cast<std::size_t>(j)] = R.neg(R.mul(*a1_inv, comp[j]));
    }
    Series out(f.ring(), N, std::move(g));
    out.mark_exact(f.exact() && f.top() <= 1);
    if (f.homogeneous_degree() && *f.homogeneous_degree() == f.variable_degree())
        out.with_degree(f.variable_degree());
    return out;
}

UnitProfile unit_profile(const Series& f) {
    UnitProfile p;
    const Ring& R = *f.ring();
    bool nilpotent_so_far = true;
    for (int i = 0; i <= f.N(); ++i) {
        if (R.is_unit(f[i])) {
            p.valuation = i;
            p.pivot_is_unit = true;
            p.below_all_nilpotent = nilpotent_so_far;
            return p;
        }
        nilpotent_so_far = nilpotent_so_far && R.is_nilpotent(f[i]);
    }
    return p;
}

bool equal_up_to_truncation(const Series& f, const Series& g) {
    require_same_ring(*f.ring(), *g.ring());
    const int N = std::min(f.N(), g.N());
    for (int j = 0; j <= N; ++j)
        if (!coeff_equal(f[j], g[j]))
            return false;
    return true;
}

} // namespace tatecoh
