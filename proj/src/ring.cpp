#include "tatecoh/ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace tatecoh {

// ---------------------------------------------------------------------------
// descriptors

RingDescriptor RingDescriptor::integers() { return {}; }

RingDescriptor RingDescriptor::rationals() {
    RingDescriptor d;
    d.kind = RingKind::Rationals;
    return d;
}

RingDescriptor RingDescriptor::zmod(long n) {
    RingDescriptor d;
    d.kind = RingKind::IntegersMod;
    d.modulus = n;
    return d;
}

RingDescriptor RingDescriptor::padic(long p, int K) {
    RingDescriptor d;
    d.kind = RingKind::PAdicTruncated;
    d.prime = p;
    d.precision = K;
    return d;
}

RingDescriptor RingDescriptor::laurent(const RingDescriptor& base, std::string symbol, int degree) {
    RingDescriptor d;
    d.kind = RingKind::Laurent;
    d.base = std::make_shared<const RingDescriptor>(base);
    d.symbol = std::move(symbol);
    d.degree = degree;
    return d;
}

bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return true;
    case RingKind::IntegersMod: return a.modulus == b.modulus;
    case RingKind::PAdicTruncated: return a.prime == b.prime && a.precision == b.precision;
    case RingKind::Laurent:
        return a.symbol == b.symbol && a.degree == b.degree && a.window == b.window && a.base && b.base &&
               *a.base == *b.base;
    }
    return false;
}

bool is_prime(long n) {
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    n = std::labs(n);
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

RingPtr make_ring(const RingDescriptor& descriptor) { return std::make_shared<const Ring>(descriptor); }

// ---------------------------------------------------------------------------
// ring

namespace {

void validate_base(const RingDescriptor& d) {
    switch (d.kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return;
    case RingKind::IntegersMod:
        if (d.modulus < 2)
            fail(ErrorCode::InvalidDescriptor, "IntegersMod requires n >= 2, got " + std::to_string(d.modulus));
        return;
    case RingKind::PAdicTruncated:
        if (!is_prime(d.prime))
            fail(ErrorCode::InvalidDescriptor, "PAdicTruncated requires a prime, got " + std::to_string(d.prime));
        if (d.precision < 1)
            fail(ErrorCode::InvalidDescriptor, "PAdicTruncated requires K >= 1");
        return;
    case RingKind::Laurent: fail(ErrorCode::InvalidDescriptor, "nested Laurent extension");
    }
}

mpz_class scalar_modulus(const RingDescriptor& d) {
    if (d.kind == RingKind::IntegersMod)
        return d.modulus;
    if (d.kind == RingKind::PAdicTruncated) {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(d.prime), static_cast<unsigned long>(d.precision));
        return m;
    }
    return 0;
}

} // namespace

Ring::Ring(const RingDescriptor& d) : desc_(d) {
    if (d.kind == RingKind::Laurent) {
        if (!d.base)
            fail(ErrorCode::InvalidDescriptor, "Laurent extension without base ring");
        validate_base(*d.base);
        if (d.degree == 0 || d.degree % 2 != 0)
            fail(ErrorCode::InvalidDescriptor, "generator degree must be even and nonzero");
        if (d.symbol.empty())
            fail(ErrorCode::InvalidDescriptor, "empty generator symbol");
        if (d.window < 1)
            fail(ErrorCode::InvalidDescriptor, "Laurent window must be positive");
        scalar_ = *d.base;
    } else {
        validate_base(d);
        scalar_ = d;
    }
    modulus_ = scalar_modulus(scalar_);
    if (scalar_.kind == RingKind::IntegersMod)
        char_primes_ = prime_factors(scalar_.modulus);
    else if (scalar_.kind == RingKind::PAdicTruncated)
        char_primes_ = {scalar_.prime};
}

bool Ring::scalar_is_domain() const {
    switch (scalar_.kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return true;
    case RingKind::IntegersMod: return is_prime(scalar_.modulus);
    case RingKind::PAdicTruncated: return scalar_.precision == 1;
    default: return false;
    }
}

std::string Ring::name() const {
    auto scalar_name = [](const RingDescriptor& s) -> std::string {
        switch (s.kind) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::IntegersMod: return "Z/" + std::to_string(s.modulus);
        case RingKind::PAdicTruncated:
            return "Z/" + std::to_string(s.prime) + "^" + std::to_string(s.precision);
        default: return "?";
        }
    };
    if (!is_laurent())
        return scalar_name(scalar_);
    return scalar_name(scalar_) + "[" + desc_.symbol + "," + desc_.symbol + "^-1]";
}

void Ring::reduce_scalar(mpq_class& v) const {
    switch (scalar_.kind) {
    case RingKind::Rationals: v.canonicalize(); return;
    case RingKind::Integers:
        if (v.get_den() != 1)
            fail(ErrorCode::NonIntegralElement, v.get_str() + " is not an integer");
        return;
    default:
        if (v.get_den() != 1)
            fail(ErrorCode::NonIntegralElement, v.get_str() + " has a denominator in " + name());
        mpz_fdiv_r(v.get_num_mpz_t(), v.get_num_mpz_t(), modulus_.get_mpz_t());
        return;
    }
}

bool Ring::scalar_is_unit(const mpq_class& v) const {
    switch (scalar_.kind) {
    case RingKind::Integers: return v == 1 || v == -1;
    case RingKind::Rationals: return v != 0;
    default: {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), v.get_num_mpz_t(), modulus_.get_mpz_t());
        return g == 1;
    }
    }
}

bool Ring::scalar_is_nilpotent(const mpq_class& v) const {
    if (v == 0)
        return true;
    if (modulus_ == 0)
        return false;
    for (long p : char_primes_)
        if (!mpz_divisible_ui_p(v.get_num_mpz_t(), static_cast<unsigned long>(p)))
            return false;
    return true;
}

void Ring::check_exponent(long e) const {
    if (!is_laurent()) {
        if (e != 0)
            fail(ErrorCode::InvalidDescriptor, name() + " has no graded generator");
        return;
    }
    if (std::labs(e) > desc_.window)
        fail(ErrorCode::LaurentWindowOverflow,
             "exponent " + std::to_string(e) + " of " + desc_.symbol + " exceeds window " + std::to_string(desc_.window));
}

Coeff Ring::from_int(long v) const { return from_mpz(v); }

Coeff Ring::from_mpz(const mpz_class& v) const {
    mpq_class q(v);
    reduce_scalar(q);
    if (q == 0)
        return {};
    return {Term{0, std::move(q)}};
}

namespace {

std::optional<mpq_class> scalar_divide(const Ring& r, const mpq_class& num, const mpq_class& den) {
    if (den == 0)
        return std::nullopt;
    switch (r.scalar_kind()) {
    case RingKind::Rationals: return mpq_class(num / den);
    case RingKind::Integers: {
        if (!mpz_divisible_p(num.get_num_mpz_t(), den.get_num_mpz_t()))
            return std::nullopt;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_num_mpz_t(), den.get_num_mpz_t());
        return mpq_class(q);
    }
    default: {
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), den.get_num_mpz_t(), r.characteristic().get_mpz_t()))
            return std::nullopt;
        mpq_class out(num.get_num() * inv);
        r.reduce_scalar(out);
        return out;
    }
    }
}

} // namespace

Coeff Ring::from_rational(const mpq_class& v) const {
    if (scalar_.kind == RingKind::Rationals)
        return monomial(v, 0);
    auto q = scalar_divide(*this, mpq_class(v.get_num()), mpq_class(v.get_den()));
    if (!q)
        fail(ErrorCode::NonIntegralElement, v.get_str() + " has no image in " + name());
    if (*q == 0)
        return {};
    return {Term{0, std::move(*q)}};
}

Coeff Ring::monomial(const mpq_class& c, int e) const {
    check_exponent(e);
    mpq_class v(c);
    reduce_scalar(v);
    if (v == 0)
        return {};
    return {Term{e, std::move(v)}};
}

void Ring::add_to(Coeff& acc, const Coeff& a) const {
    if (a.empty())
        return;
    if (a.size() == 1) {
        const Term& t = a.front();
        auto it = std::lower_bound(acc.begin(), acc.end(), t.exp, [](const Term& x, int e) { return x.exp < e; });
        if (it != acc.end() && it->exp == t.exp) {
            it->value += t.value;
            reduce_scalar(it->value);
            if (it->value == 0)
                acc.erase(it);
        } else {
            acc.insert(it, t);
        }
        return;
    }
    acc = add(acc, a);
}

Coeff Ring::add(const Coeff& a, const Coeff& b) const {
    Coeff out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].exp < a[i].exp) {
            out.push_back(b[j++]);
        } else {
            mpq_class s = a[i].value + b[j].value;
            reduce_scalar(s);
            if (s != 0)
                out.push_back(Term{a[i].exp, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

Coeff Ring::neg(const Coeff& a) const {
    Coeff out;
    out.reserve(a.size());
    for (const auto& t : a) {
        mpq_class v = -t.value;
        reduce_scalar(v);
        out.push_back(Term{t.exp, std::move(v)});
    }
    return out;
}

Coeff Ring::sub(const Coeff& a, const Coeff& b) const { return add(a, neg(b)); }

Coeff Ring::mul(const Coeff& a, const Coeff& b) const {
    if (a.empty() || b.empty())
        return {};
    if (a.size() == 1 && b.size() == 1) {
        const long e = static_cast<long>(a[0].exp) + b[0].exp;
        check_exponent(e);
        mpq_class v = a[0].value * b[0].value;
        reduce_scalar(v);
        if (v == 0)
            return {};
        return {Term{static_cast<int>(e), std::move(v)}};
    }
    std::map<int, mpq_class> acc;
    for (const auto& x : a) {
        for (const auto& y : b) {
            const long e = static_cast<long>(x.exp) + y.exp;
            check_exponent(e);
            acc[static_cast<int>(e)] += x.value * y.value;
        }
    }
    Coeff out;
    for (auto& [e, v] : acc) {
        reduce_scalar(v);
        if (v != 0)
            out.push_back(Term{e, std::move(v)});
    }
    return out;
}

void Ring::add_product(Coeff& acc, const Coeff& a, const Coeff& b) const {
    if (a.empty() || b.empty())
        return;
    if (a.size() == 1 && b.size() == 1) {
        const long e = static_cast<long>(a[0].exp) + b[0].exp;
        check_exponent(e);
        auto it = std::lower_bound(acc.begin(), acc.end(), static_cast<int>(e),
                                   [](const Term& x, int k) { return x.exp < k; });
        if (it != acc.end() && it->exp == e) {
            it->value += a[0].value * b[0].value;
            reduce_scalar(it->value);
            if (it->value == 0)
                acc.erase(it);
        } else {
            mpq_class v = a[0].value * b[0].value;
            reduce_scalar(v);
            if (v != 0)
                acc.insert(it, Term{static_cast<int>(e), std::move(v)});
        }
        return;
    }
    add_to(acc, mul(a, b));
}

Coeff Ring::pow(Coeff a, unsigned e) const {
    Coeff result = one();
    while (e > 0) {
        if (e & 1U)
            result = mul(result, a);
        e >>= 1U;
        if (e > 0)
            a = mul(a, a);
    }
    return result;
}

bool Ring::is_one(const Coeff& a) const { return a.size() == 1 && a[0].exp == 0 && a[0].value == 1; }

bool Ring::is_unit(const Coeff& a) const {
    if (a.empty())
        return false;
    if (a.size() == 1)
        return scalar_is_unit(a[0].value);
    if (!is_laurent())
        return false;
    switch (scalar_.kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return false; // domains: only unit monomials
    default:
        // Unit iff its reduction mod each prime of the characteristic is a unit
        // of F_p[g, g^-1], i.e. exactly one coefficient survives mod p.
        for (long p : char_primes_) {
            int survivors = 0;
            for (const auto& t : a)
                if (!mpz_divisible_ui_p(t.value.get_num_mpz_t(), static_cast<unsigned long>(p)))
                    ++survivors;
            if (survivors != 1)
                return false;
        }
        return true;
    }
}

bool Ring::is_nilpotent(const Coeff& a) const {
    return std::all_of(a.begin(), a.end(), [&](const Term& t) { return scalar_is_nilpotent(t.value); });
}

bool Ring::is_zero_divisor(const Coeff& a) const {
    if (a.empty())
        return true;
    if (modulus_ == 0)
        return false;
    // McCoy: a zero divisor of A[g,g^-1] is killed by a nonzero scalar.
    mpz_class g = modulus_;
    for (const auto& t : a)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.value.get_num_mpz_t());
    return g != 1;
}

namespace {

using Sparse = std::map<int, mpz_class>;

Sparse sparse_mul_mod(const Sparse& a, const Sparse& b, const mpz_class& q, int window) {
    Sparse out;
    for (const auto& [ea, va] : a) {
        for (const auto& [eb, vb] : b) {
            const int e = ea + eb;
            if (std::abs(e) > window)
                fail(ErrorCode::LaurentWindowOverflow, "inverse leaves the Laurent window");
            mpz_class& slot = out[e];
            slot += va * vb;
            mpz_fdiv_r(slot.get_mpz_t(), slot.get_mpz_t(), q.get_mpz_t());
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

} // namespace

std::optional<Coeff> Ring::laurent_inverse(const Coeff& a) const {
    // Z/n[g,g^-1], n composite allowed: invert modulo each prime power and
    // glue the coefficients with the Chinese remainder theorem.
    const long n = modulus_.get_si();
    std::map<int, mpz_class> glued;
    mpz_class glued_mod = 1;
    for (long p : char_primes_) {
        mpz_class q = 1;
        long rest = n;
        while (rest % p == 0) {
            q *= p;
            rest /= p;
        }
        Sparse local;
        int lead_exp = 0;
        mpz_class lead;
        for (const auto& t : a) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), t.value.get_num_mpz_t(), q.get_mpz_t());
            if (r == 0)
                continue;
            if (!mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p))) {
                lead_exp = t.exp;
                lead = r;
            }
            local[t.exp] = r;
        }
        mpz_class lead_inv;
        if (lead == 0 || !mpz_invert(lead_inv.get_mpz_t(), lead.get_mpz_t(), q.get_mpz_t()))
            return std::nullopt;
        // local = lead * g^lead_exp * (1 + w) with w nilpotent
        Sparse w;
        for (const auto& [e, v] : local) {
            if (e == lead_exp)
                continue;
            mpz_class c = v * lead_inv;
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
            if (c != 0)
                w[e - lead_exp] = -c;
        }
        Sparse sum{{0, mpz_class(1)}};
        Sparse term{{0, mpz_class(1)}};
        for (int guard = 0; guard < 4096; ++guard) {
            term = sparse_mul_mod(term, w, q, desc_.window);
            if (term.empty())
                break;
            for (const auto& [e, v] : term) {
                mpz_class& s = sum[e];
                s += v;
                mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
            }
        }
        Sparse inv;
        for (const auto& [e, v] : sum) {
            mpz_class c = v * lead_inv;
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
            if (c != 0) {
                check_exponent(static_cast<long>(e) - lead_exp);
                inv[e - lead_exp] = c;
            }
        }
        // CRT: combine (glued mod glued_mod) with (inv mod q)
        std::map<int, mpz_class> next;
        mpz_class m1_inv;
        mpz_invert(m1_inv.get_mpz_t(), glued_mod.get_mpz_t(), q.get_mpz_t());
        std::vector<int> keys;
        for (const auto& kv : glued)
            keys.push_back(kv.first);
        for (const auto& kv : inv)
            keys.push_back(kv.first);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        const mpz_class new_mod = glued_mod * q;
        for (int e : keys) {
            const mpz_class r1 = glued.count(e) ? glued[e] : mpz_class(0);
            const mpz_class r2 = inv.count(e) ? inv[e] : mpz_class(0);
            mpz_class t = (r2 - r1) * m1_inv;
            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
            mpz_class x = r1 + glued_mod * t;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), new_mod.get_mpz_t());
            if (x != 0)
                next[e] = x;
        }
        glued = std::move(next);
        glued_mod = new_mod;
    }
    Coeff out;
    for (auto& [e, v] : glued)
        out.push_back(Term{e, mpq_class(v)});
    return out;
}

std::optional<Coeff> Ring::inverse(const Coeff& a) const {
    if (!is_unit(a))
        return std::nullopt;
    if (a.size() == 1) {
        auto inv = scalar_divide(*this, mpq_class(1), a[0].value);
        if (!inv)
            return std::nullopt;
        check_exponent(-static_cast<long>(a[0].exp));
        return Coeff{Term{-a[0].exp, std::move(*inv)}};
    }
    return laurent_inverse(a);
}

std::optional<Coeff> Ring::laurent_long_division(const Coeff& a, const Coeff& b) const {
    Coeff rem = a;
    Coeff quot;
    const int span_b = b.back().exp - b.front().exp;
    while (!rem.empty()) {
        if (rem.back().exp - rem.front().exp < span_b)
            return std::nullopt;
        auto lead = scalar_divide(*this, rem.back().value, b.back().value);
        if (!lead)
            return std::nullopt;
        Coeff step = monomial(*lead, rem.back().exp - b.back().exp);
        add_to(quot, step);
        rem = sub(rem, mul(step, b));
    }
    return quot;
}

std::optional<Coeff> Ring::divide(const Coeff& a, const Coeff& b) const {
    if (b.empty())
        return std::nullopt;
    if (a.empty())
        return Coeff{};
    if (auto inv = inverse(b))
        return mul(a, *inv);
    if (b.size() == 1) {
        Coeff out;
        for (const auto& t : a) {
            auto q = scalar_divide(*this, t.value, b[0].value);
            if (!q)
                return std::nullopt;
            const long e = static_cast<long>(t.exp) - b[0].exp;
            check_exponent(e);
            out.push_back(Term{static_cast<int>(e), std::move(*q)});
        }
        return out;
    }
    if (!is_laurent())
        return std::nullopt;
    if (scalar_is_domain())
        return laurent_long_division(a, b);
    fail(ErrorCode::Unsupported, "exact division by a non-monomial non-unit over " + name());
}

std::optional<int> Ring::degree(const Coeff& a) const {
    if (a.empty())
        return std::nullopt;
    if (!is_laurent())
        return 0;
    const int e = a.front().exp;
    for (const auto& t : a)
        if (t.exp != e)
            return std::nullopt;
    return e * desc_.degree;
}

std::string Ring::format(const Coeff& a) const {
    if (a.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : a) {
        std::string v = t.value.get_str();
        if (!first)
            os << (v.front() == '-' ? " - " : " + ");
        else if (v.front() == '-')
            os << "-";
        if (v.front() == '-')
            v.erase(0, 1);
        first = false;
        if (t.exp == 0) {
            os << v;
            continue;
        }
        if (v != "1")
            os << v << "*";
        os << desc_.symbol;
        if (t.exp != 1)
            os << "^" << t.exp;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// elements and maps

bool same_ring(const Ring& a, const Ring& b) { return &a == &b || a.descriptor() == b.descriptor(); }

void require_same_ring(const Ring& a, const Ring& b) {
    if (!same_ring(a, b))
        fail(ErrorCode::RingMismatch, a.name() + " vs " + b.name());
}

Element Element::inverse() const {
    auto inv = ring_->inverse(c_);
    if (!inv)
        fail(ErrorCode::NotAUnit, str() + " is not a unit of " + ring_->name());
    return {ring_, std::move(*inv)};
}

Element operator+(const Element& a, const Element& b) {
    require_same_ring(*a.ring_, *b.ring_);
    return {a.ring_, a.ring_->add(a.c_, b.c_)};
}

Element operator-(const Element& a, const Element& b) {
    require_same_ring(*a.ring_, *b.ring_);
    return {a.ring_, a.ring_->sub(a.c_, b.c_)};
}

Element operator*(const Element& a, const Element& b) {
    require_same_ring(*a.ring_, *b.ring_);
    return {a.ring_, a.ring_->mul(a.c_, b.c_)};
}

Element operator-(const Element& a) { return {a.ring_, a.ring_->neg(a.c_)}; }

bool operator==(const Element& a, const Element& b) {
    require_same_ring(*a.ring_, *b.ring_);
    if (a.c_.size() != b.c_.size())
        return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i].exp != b.c_[i].exp || a.c_[i].value != b.c_[i].value)
            return false;
    return true;
}

namespace {

// Image of a scalar of `from` in the scalar ring of `target`.
mpq_class map_scalar(const RingDescriptor& from, const Ring& target, const mpq_class& v) {
    const RingKind to = target.scalar_kind();
    auto no_map = [&]() -> mpq_class {
        fail(ErrorCode::NoCanonicalMap, "no canonical map into " + target.name());
    };
    switch (from.kind) {
    case RingKind::Integers: {
        mpq_class out(v);
        target.reduce_scalar(out);
        return out;
    }
    case RingKind::Rationals: {
        if (to == RingKind::Rationals)
            return v;
        if (to == RingKind::Integers)
            return no_map();
        Coeff c = target.from_rational(v);
        return c.empty() ? mpq_class(0) : c[0].value;
    }
    default: {
        if (to == RingKind::Integers || to == RingKind::Rationals)
            return no_map();
        const mpz_class from_mod = scalar_modulus(from);
        if (!mpz_divisible_p(from_mod.get_mpz_t(), target.characteristic().get_mpz_t()))
            return no_map();
        mpq_class out(v);
        target.reduce_scalar(out);
        return out;
    }
    }
}

} // namespace

Coeff map_coeff(const Ring& source, const Ring& target, const Coeff& a) {
    if (same_ring(source, target))
        return a;
    if (source.is_laurent() && !target.is_laurent())
        fail(ErrorCode::NoCanonicalMap, source.name() + " -> " + target.name());
    if (source.is_laurent() && source.period() != target.period())
        fail(ErrorCode::NoCanonicalMap, "generator degrees differ: " + source.name() + " -> " + target.name());
    Coeff out;
    for (const auto& t : a) {
        mpq_class v = map_scalar(source.scalar_descriptor(), target, t.value);
        if (v != 0)
            out.push_back(Term{t.exp, std::move(v)});
    }
    return out;
}

Element ring_map(const RingPtr& target, const Element& a) { return {target, map_coeff(*a.ring(), *target, a.raw())}; }

} // namespace tatecoh
