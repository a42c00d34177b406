#pragma once

// Graded coefficient rings R* and their elements.
//
// Supported rings: Z, Q, Z/n, Z/p^K (standing in for the p-adic integers at
// precision K) and one Laurent extension A[g, g^-1] with |g| even and nonzero.
// Elements of every ring share one raw representation (`Coeff`): a sorted list
// of (generator exponent, scalar) terms with no zero scalars. Base rings only
// ever use exponent 0.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tatecoh/error.hpp"

namespace tatecoh {

enum class RingKind { Integers, Rationals, IntegersMod, PAdicTruncated, Laurent };

struct RingDescriptor {
    RingKind kind = RingKind::Integers;
    long modulus = 0;   // IntegersMod
    long prime = 0;     // PAdicTruncated
    int precision = 0;  // PAdicTruncated
    std::shared_ptr<const RingDescriptor> base; // Laurent
    std::string symbol; // Laurent
    int degree = 0;     // Laurent
    int window = 64;    // Laurent exponent bound

    static RingDescriptor integers();
    static RingDescriptor rationals();
    static RingDescriptor zmod(long n);
    static RingDescriptor padic(long p, int K);
    static RingDescriptor laurent(const RingDescriptor& base, std::string symbol, int degree);

    friend bool operator==(const RingDescriptor& a, const RingDescriptor& b);
};

struct Term {
    int exp = 0;
    mpq_class value;
};

using Coeff = std::vector<Term>;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Validates the descriptor and returns an immutable ring handle.
RingPtr make_ring(const RingDescriptor& descriptor);

class Ring {
  public:
    explicit Ring(const RingDescriptor& d);

    const RingDescriptor& descriptor() const { return desc_; }
    RingKind kind() const { return desc_.kind; }
    bool is_laurent() const { return desc_.kind == RingKind::Laurent; }
    /// Kind of the scalar ring (the base for Laurent rings).
    RingKind scalar_kind() const { return scalar_.kind; }
    const RingDescriptor& scalar_descriptor() const { return scalar_; }
    /// n for Z/n, p^K for Z/p^K, 0 in characteristic zero.
    const mpz_class& characteristic() const { return modulus_; }
    /// Primes dividing the characteristic (empty in characteristic zero).
    const std::vector<long>& char_primes() const { return char_primes_; }
    /// Degree of the Laurent generator, 0 for ungraded rings.
    int period() const { return is_laurent() ? desc_.degree : 0; }
    bool scalar_is_domain() const;
    std::string name() const;

    Coeff zero() const { return {}; }
    Coeff one() const { return from_int(1); }
    Coeff from_int(long v) const;
    Coeff from_mpz(const mpz_class& v) const;
    /// Q -> this ring; fails with NonIntegralElement if the denominator is not invertible.
    Coeff from_rational(const mpq_class& v) const;
    /// c * g^e; NoCanonicalMap on base rings unless e == 0.
    Coeff monomial(const mpq_class& c, int e) const;
    Coeff generator_power(int e) const { return monomial(1, e); }

    Coeff add(const Coeff& a, const Coeff& b) const;
    Coeff sub(const Coeff& a, const Coeff& b) const;
    Coeff neg(const Coeff& a) const;
    Coeff mul(const Coeff& a, const Coeff& b) const;
    Coeff pow(Coeff a, unsigned e) const;
    void add_to(Coeff& acc, const Coeff& a) const;
    /// acc += a * b without materialising the product for single-term operands.
    void add_product(Coeff& acc, const Coeff& a, const Coeff& b) const;

    static bool is_zero(const Coeff& a) { return a.empty(); }
    bool is_one(const Coeff& a) const;
    bool is_unit(const Coeff& a) const;
    bool is_nilpotent(const Coeff& a) const;
    bool is_zero_divisor(const Coeff& a) const;
    std::optional<Coeff> inverse(const Coeff& a) const;
    /// q with a == b*q when b is a non-zero-divisor and q exists.
    std::optional<Coeff> divide(const Coeff& a, const Coeff& b) const;
    /// Degree of a homogeneous nonzero element; nullopt for zero or mixed elements.
    std::optional<int> degree(const Coeff& a) const;

    std::string format(const Coeff& a) const;

    /// Scalar-level helpers on the base ring.
    void reduce_scalar(mpq_class& v) const;
    bool scalar_is_unit(const mpq_class& v) const;
    bool scalar_is_nilpotent(const mpq_class& v) const;

  private:
    void check_exponent(long e) const;
    std::optional<Coeff> laurent_inverse(const Coeff& a) const;
    std::optional<Coeff> laurent_long_division(const Coeff& a, const Coeff& b) const;

    RingDescriptor desc_;
    RingDescriptor scalar_;
    mpz_class modulus_;
    std::vector<long> char_primes_;
};

/// A ring element paired with its ring; arithmetic checks that rings agree.
class Element {
  public:
    Element(RingPtr ring, Coeff c) : ring_(std::move(ring)), c_(std::move(c)) {}

    static Element from_int(const RingPtr& r, long v) { return {r, r->from_int(v)}; }
    static Element generator(const RingPtr& r, int e = 1) { return {r, r->generator_power(e)}; }

    const RingPtr& ring() const { return ring_; }
    const Coeff& raw() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_unit() const { return ring_->is_unit(c_); }
    bool is_nilpotent() const { return ring_->is_nilpotent(c_); }
    std::optional<int> degree() const { return ring_->degree(c_); }
    Element inverse() const;
    std::string str() const { return ring_->format(c_); }

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator-(const Element& a);
    friend bool operator==(const Element& a, const Element& b);

  private:
    RingPtr ring_;
    Coeff c_;
};

bool same_ring(const Ring& a, const Ring& b);
void require_same_ring(const Ring& a, const Ring& b);

/// Image of a raw coefficient under the canonical map source -> target.
Coeff map_coeff(const Ring& source, const Ring& target, const Coeff& a);
Element ring_map(const RingPtr& target, const Element& a);

bool is_prime(long n);
std::vector<long> prime_factors(long n);

} // namespace tatecoh
