#include "tatecoh/fgl.hpp"

#include <mutex>
#include <sstream>

namespace tatecoh {

FormalGroupLaw::FormalGroupLaw(std::string name, FglDefinition def, MultiSeries F)
    : name_(std::move(name)), def_(std::move(def)), F_(std::move(F)) {
    if (F_.nvars() != 2)
        fail(ErrorCode::InvalidDescriptor, "a formal group law is a series in two variables");
}

Series FormalGroupLaw::apply(const Series& a, const Series& b) const { return evaluate(F_, a, b); }

Series FormalGroupLaw::n_series(long n) const {
    {
        std::shared_lock lock(mu_);
        if (auto it = cache_.find(n); it != cache_.end())
            return it->second;
    }
    Series result = Series::zero(ring(), N());
    if (n == 0) {
        result = Series::zero(ring(), N());
    } else if (n == 1) {
        result = Series::variable(ring(), N());
    } else if (n < 0) {
        result = substitute(n_series(-n), formal_inverse());
    } else {
        long start = 1;
        Series prev = Series::variable(ring(), N());
        {
            std::shared_lock lock(mu_);
            auto it = cache_.lower_bound(n);
            if (it != cache_.begin()) {
                --it;
                if (it->first >= 1) {
                    start = it->first;
                    prev = it->second;
                }
            }
        }
        const Series u = Series::variable(ring(), N());
        for (long m = start + 1; m <= n; ++m) {
            prev = apply(prev, u);
            if (graded())
                prev.with_degree(-2);
            if (m < n) {
                std::unique_lock lock(mu_);
                cache_.try_emplace(m, prev);
            }
        }
        result = prev;
    }
    if (graded() && !result.is_zero())
        result.with_degree(-2);
    std::unique_lock lock(mu_);
    return cache_.try_emplace(n, std::move(result)).first->second;
}

Series FormalGroupLaw::formal_inverse() const {
    {
        std::shared_lock lock(mu_);
        if (inverse_)
            return *inverse_;
    }
    Series inv = compute_inverse();
    std::unique_lock lock(mu_);
    if (!inverse_)
        inverse_ = std::move(inv);
    return *inverse_;
}

Series FormalGroupLaw::compute_inverse() const {
    const Ring& R = *ring();
    const int N = this->N();
    std::vector<Coeff> c(static_cast<std::size_t>(N + 1));
    if (N >= 1)
        c[1] = R.from_int(-1);
    for (int k = 2; k <= N; ++k) {
        Series u = Series::variable(ring(), k);
        Series ik(ring(), k, std::vector<Coeff>(c.begin(), c.begin() + k + 1), true);
        Series val = evaluate(F_.truncated(k), u, ik);
        c[static_cast<std::size_t>(k)] = R.sub(c[static_cast<std::size_t>(k)], val[k]);
    }
    Series inv(ring(), N, c, true);
    // Exact only when F is a polynomial and the truncated inverse already kills it.
    bool exact = false;
    if (F_.exact()) {
        Series check = apply(Series::variable(ring(), N), inv);
        exact = check.exact() && check.is_zero();
    }
    inv.mark_exact(exact);
    if (graded())
        inv.with_degree(-2);
    return inv;
}

FglPtr additive_fgl(const RingPtr& ring, int N, std::string name) {
    MultiSeries F = add(MultiSeries::variable(ring, 2, N, 0), MultiSeries::variable(ring, 2, N, 1));
    return std::make_shared<FormalGroupLaw>(std::move(name), FglDefinition{"additive", 0, 0, 0, ""}, std::move(F));
}

FglPtr multiplicative_fgl(const RingPtr& ring, int N, std::optional<Coeff> beta, std::string name) {
    Coeff b = beta ? *beta : (ring->is_laurent() ? ring->generator_power(1) : ring->one());
    if (!ring->is_unit(b))
        fail(ErrorCode::NonUnitBeta, ring->format(b) + " is not a unit");
    if (ring->is_laurent() && ring->degree(b) != std::optional<int>(2))
        fail(ErrorCode::NonUnitBeta, "beta must have degree 2");
    MultiSeries F = add(MultiSeries::variable(ring, 2, N, 0), MultiSeries::variable(ring, 2, N, 1));
    if (N >= 2)
        F.set(1, 1, 0, b);
    else
        F.mark_exact(false);
    return std::make_shared<FormalGroupLaw>(std::move(name), FglDefinition{"multiplicative", 0, 0, 0, ring->format(b)},
                                            std::move(F));
}

namespace {

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

// q = p^n, saturating past N so callers can compare against truncation orders.
long orbit_q(long p, int n, int N) {
    long q = 1;
    for (int i = 0; i < n; ++i) {
        q *= p;
        if (q > 4L * (N + 1))
            return q;
    }
    return q;
}

RingPtr rationals() {
    static const RingPtr q = make_ring(RingDescriptor::rationals());
    return q;
}

} // namespace

LogData honda_log(long p, int height, int N) {
    if (!is_prime(p) || height < 1)
        fail(ErrorCode::InvalidDescriptor, "honda law needs a prime and a positive height");
    LogData log{p, height, N, {}};
    const long q = orbit_q(p, height, N);
    long e = 1;
    mpq_class c = 1;
    while (e <= N) {
        log.terms.emplace_back(static_cast<int>(e), c);
        e *= q;
        c /= p;
    }
    return log;
}

LogData lubin_tate_log(const std::vector<std::pair<int, mpq_class>>& f, const mpq_class& pi, long p, int height,
                       int N) {
    const RingPtr Q = rationals();
    std::vector<Coeff> fc(static_cast<std::size_t>(N + 1));
    for (const auto& [e, c] : f)
        if (e <= N)
            fc[static_cast<std::size_t>(e)] = Q->from_rational(c);
    if (!fc[0].empty() || N < 1 || fc[1].empty() || fc[1].front().value != pi)
        fail(ErrorCode::InvalidDescriptor, "endomorphism must be pi*u modulo higher terms");
    if (pi == 0 || pi == 1 || pi == -1)
        fail(ErrorCode::InvalidDescriptor, "pi must not be 0 or a root of unity");
    const Series fs(Q, N, fc);
    // powers f^j, j = 1..N
    std::vector<Series> fp;
    fp.push_back(Series::constant(Q, N, Q->one()));
    for (int j = 1; j <= N; ++j)
        fp.push_back(mul(fp.back(), fs));
    std::vector<mpq_class> a(static_cast<std::size_t>(N + 1), mpq_class(0));
    a[1] = 1;
    mpq_class pik = pi;
    for (int k = 2; k <= N; ++k) {
        pik *= pi;
        mpq_class ck = 0;
        for (int j = 1; j < k; ++j) {
            if (a[static_cast<std::size_t>(j)] == 0)
                continue;
            const Coeff& t = fp[static_cast<std::size_t>(j)][k];
            if (!t.empty())
                ck += a[static_cast<std::size_t>(j)] * t.front().value;
        }
        a[static_cast<std::size_t>(k)] = ck / (pi - pik);
    }
    LogData log{p, height, N, {}};
    for (int k = 1; k <= N; ++k)
        if (a[static_cast<std::size_t>(k)] != 0)
            log.terms.emplace_back(k, a[static_cast<std::size_t>(k)]);
    return log;
}

FglPtr fgl_from_log(const LogData& log, const RingPtr& target, int N, std::string name, FglDefinition def) {
    const long step = target->is_laurent() ? orbit_q(log.p, log.height, N) - 1 : 0;
    if (step > 0 && (N - 1) / step > target->descriptor().window)
        fail(ErrorCode::PrecisionExhausted, "truncation order " + std::to_string(N) + " needs v^" +
                                                std::to_string((N - 1) / step) + ", beyond the exponent window " +
                                                std::to_string(target->descriptor().window));
    const RingPtr Q = rationals();
    std::vector<Coeff> lc(static_cast<std::size_t>(N + 1));
    for (const auto& [e, c] : log.terms)
        if (e <= N)
            lc[static_cast<std::size_t>(e)] = Q->from_rational(c);
    const Series L(Q, N, lc);
    const Series E = compositional_inverse(L);
    const MultiSeries S = add(MultiSeries::from_univariate(L, 2, 0), MultiSeries::from_univariate(L, 2, 1));
    const MultiSeries FQ = compose(E, S);

    MultiSeries F(target, 2, N);
    for (const auto& t : FQ.terms()) {
        const int deg = t.exps[0] + t.exps[1];
        const mpq_class& c = t.coeff.front().value;
        if (step > 0 && (deg - 1) % step != 0)
            fail(ErrorCode::NonIntegralCoefficient,
                 "log law has a term of total degree " + std::to_string(deg) + " off the generator grid");
        const int e = step > 0 ? static_cast<int>((deg - 1) / step) : 0;
        Coeff value;
        try {
            Coeff scalar = target->from_rational(c);
            if (!scalar.empty())
                value = target->monomial(scalar.front().value, e);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::NonIntegralElement)
                fail(ErrorCode::NonIntegralCoefficient, "coefficient " + c.get_str() + " of x^" +
                                                            std::to_string(t.exps[0]) + " y^" +
                                                            std::to_string(t.exps[1]) + " is not p-integral");
            if (err.code() == ErrorCode::LaurentWindowOverflow)
                fail(ErrorCode::PrecisionExhausted, std::string("truncation order too large: ") + err.what());
            throw;
        }
        if (!value.empty())
            F.set(t.exps[0], t.exps[1], 0, std::move(value));
    }
    F.mark_exact(false);
    return std::make_shared<FormalGroupLaw>(std::move(name), std::move(def), std::move(F));
}

RingPtr morava_ring(long p, int height) {
    const long q = ipow(p, height);
    return make_ring(RingDescriptor::laurent(RingDescriptor::zmod(p), "v", static_cast<int>(2 * (q - 1))));
}

RingPtr integral_morava_ring(long p, int height, int K) {
    const long q = ipow(p, height);
    return make_ring(RingDescriptor::laurent(RingDescriptor::padic(p, K), "v", static_cast<int>(2 * (q - 1))));
}

FglPtr honda_fgl(long p, int height, int N) {
    if (!is_prime(p) || height < 1 || height > 6)
        fail(ErrorCode::InvalidDescriptor, "honda:p:n needs p prime and 1 <= n <= 6");
    const std::string name = "honda:" + std::to_string(p) + ":" + std::to_string(height);
    return fgl_from_log(honda_log(p, height, N), morava_ring(p, height), N, name, {"honda", p, height, 0, ""});
}

FglPtr lubin_tate_fgl(long p, int height, int K, int N) {
    if (!is_prime(p) || height < 1 || height > 6 || K < 1)
        fail(ErrorCode::InvalidDescriptor, "integral-morava:p:n:K needs p prime, 1 <= n <= 6, K >= 1");
    const long q = ipow(p, height);
    const mpq_class pi(-p);
    std::vector<std::pair<int, mpq_class>> f{{1, pi}};
    if (q <= N)
        f.emplace_back(static_cast<int>(q), mpq_class(1));
    const std::string name =
        "integral-morava:" + std::to_string(p) + ":" + std::to_string(height) + ":" + std::to_string(K);
    return fgl_from_log(lubin_tate_log(f, pi, p, height, N), integral_morava_ring(p, height, K), N, name,
                        {"integral-morava", p, height, K, ""});
}

std::string AxiomReport::str() const {
    if (ok)
        return "ok";
    std::ostringstream os;
    os << axiom << " fails at x^" << witness[0] << " y^" << witness[1];
    if (nvars == 3)
        os << " z^" << witness[2];
    return os.str();
}

namespace {

AxiomReport violation(std::string axiom, std::array<int, 3> w, int nvars = 2) {
    return AxiomReport{false, std::move(axiom), w, nvars};
}

std::optional<std::array<int, 3>> first_difference(const MultiSeries& a, const MultiSeries& b) {
    const int N = std::min(a.N(), b.N());
    std::optional<std::array<int, 3>> best;
    auto consider = [&](const std::array<int, 3>& e) {
        if (e[0] + e[1] + e[2] > N)
            return;
        if (coeff_equal(a.coeff(e[0], e[1], e[2]), b.coeff(e[0], e[1], e[2])))
            return;
        auto key = [](const std::array<int, 3>& x) { return std::array<int, 4>{x[0] + x[1] + x[2], x[0], x[1], x[2]}; };
        if (!best || key(e) < key(*best))
            best = e;
    };
    for (const auto& t : a.terms())
        consider(t.exps);
    for (const auto& t : b.terms())
        consider(t.exps);
    return best;
}

} // namespace

AxiomReport fgl_axiom_check(const MultiSeries& F) {
    if (F.nvars() != 2)
        fail(ErrorCode::Unsupported, "axiom check expects a bivariate series");
    const Ring& R = *F.ring();
    const int N = F.N();

    for (int d = 0; d <= N; ++d) {
        for (const auto& e : {std::array<int, 3>{d, 0, 0}, std::array<int, 3>{0, d, 0}}) {
            const Coeff& c = F.coeff(e[0], e[1]);
            const bool want_one = d == 1;
            if (want_one ? !R.is_one(c) : !c.empty())
                return violation("unitality", e);
        }
    }
    const auto terms = F.terms();
    for (const auto& t : terms)
        if (!coeff_equal(t.coeff, F.coeff(t.exps[1], t.exps[0])))
            return violation("commutativity", t.exps);
    if (R.is_laurent()) {
        for (const auto& t : terms) {
            const auto deg = R.degree(t.coeff);
            if (!deg || *deg != 2 * (t.exps[0] + t.exps[1]) - 2)
                return violation("homogeneity", t.exps);
        }
    }
    const MultiSeries X = MultiSeries::variable(F.ring(), 3, N, 0);
    const MultiSeries Z = MultiSeries::variable(F.ring(), 3, N, 2);
    const MultiSeries Fxy = F.embedded(3, {0, 1});
    const MultiSeries Fyz = F.embedded(3, {1, 2});
    const MultiSeries left = compose(F, Fxy, Z);
    const MultiSeries right = compose(F, X, Fyz);
    if (auto w = first_difference(left, right))
        return violation("associativity", *w, 3);
    return {};
}

AxiomReport fgl_axiom_check(const FormalGroupLaw& F) { return fgl_axiom_check(F.law()); }

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

long parse_long(const std::string& s, const std::string& whole) {
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos)
        fail(ErrorCode::ParseError, "bad integer '" + s + "' in formal group law name '" + whole + "'");
    return std::stol(s);
}

FglPtr build_by_name(const std::string& name, int N, int default_K) {
    const auto parts = split(name, ':');
    const std::string& head = parts[0];
    auto arg = [&](std::size_t i) { return parse_long(parts[i], name); };
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() < lo + 1 || parts.size() > hi + 1)
            fail(ErrorCode::ParseError, "wrong number of parameters in '" + name + "'");
    };
    auto need_prime = [&](long p) {
        if (!is_prime(p))
            fail(ErrorCode::ParseError, std::to_string(p) + " is not prime in '" + name + "'");
    };
    if (head == "additive" || head == "hz") {
        arity(0, 0);
        return additive_fgl(make_ring(RingDescriptor::integers()), N, name);
    }
    if (head == "hq") {
        arity(0, 0);
        return additive_fgl(make_ring(RingDescriptor::rationals()), N, name);
    }
    if (head == "hfp") {
        arity(1, 1);
        need_prime(arg(1));
        return additive_fgl(make_ring(RingDescriptor::zmod(arg(1))), N, name);
    }
    if (head == "hzmod") {
        arity(1, 1);
        if (arg(1) < 2)
            fail(ErrorCode::ParseError, "modulus must be at least 2 in '" + name + "'");
        return additive_fgl(make_ring(RingDescriptor::zmod(arg(1))), N, name);
    }
    if (head == "multiplicative") {
        arity(0, 0);
        return multiplicative_fgl(make_ring(RingDescriptor::integers()), N, std::nullopt, name);
    }
    if (head == "ku") {
        arity(0, 2);
        if (parts.size() == 1)
            return multiplicative_fgl(make_ring(RingDescriptor::laurent(RingDescriptor::integers(), "beta", 2)), N,
                                      std::nullopt, name);
        need_prime(arg(1));
        const int k = parts.size() == 3 ? static_cast<int>(arg(2)) : 1;
        if (k < 1)
            fail(ErrorCode::ParseError, "exponent must be positive in '" + name + "'");
        return multiplicative_fgl(make_ring(RingDescriptor::laurent(RingDescriptor::padic(arg(1), k), "beta", 2)), N,
                                  std::nullopt, name);
    }
    if (head == "honda") {
        arity(2, 2);
        need_prime(arg(1));
        if (arg(2) < 1 || arg(2) > 6)
            fail(ErrorCode::ParseError, "height must be between 1 and 6 in '" + name + "'");
        return honda_fgl(arg(1), static_cast<int>(arg(2)), N);
    }
    if (head == "integral-morava") {
        arity(2, 3);
        need_prime(arg(1));
        if (arg(2) < 1 || arg(2) > 6)
            fail(ErrorCode::ParseError, "height must be between 1 and 6 in '" + name + "'");
        const int K = parts.size() == 4 ? static_cast<int>(arg(3)) : default_K;
        if (K < 1)
            fail(ErrorCode::ParseError, "precision must be positive in '" + name + "'");
        return lubin_tate_fgl(arg(1), static_cast<int>(arg(2)), K, N);
    }
    fail(ErrorCode::ParseError, "unknown formal group law '" + name + "'");
}

} // namespace

FglPtr fgl_by_name(const std::string& name, int N, int default_K) {
    if (N < 1)
        fail(ErrorCode::ParseError, "truncation order must be positive");
    static std::mutex mu;
    static std::map<std::string, FglPtr> cache;
    const std::string key = name + "|" + std::to_string(N) + "|" + std::to_string(default_K);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    FglPtr F = build_by_name(name, N, default_K);
    std::lock_guard lock(mu);
    return cache.try_emplace(key, std::move(F)).first->second;
}

std::vector<std::string> builtin_fgl_names() {
    return {"additive",   "hq",         "hfp:2",      "hfp:3",          "hzmod:9",
            "multiplicative", "ku",     "ku:2:3",     "ku:3:2",         "honda:2:1",
            "honda:2:2",  "honda:3:1",  "honda:3:2",  "honda:5:1",      "integral-morava:2:1:8",
            "integral-morava:3:1:8"};
}

} // namespace tatecoh
