#pragma once

// Truncated power series in the orientation class u over a graded ring.

#include <optional>
#include <string>
#include <vector>

#include "tatecoh/kernels.hpp"
#include "tatecoh/ring.hpp"

namespace tatecoh {

/// Outcome of the unit search behind every localization argument.
///
/// `valuation` is the least i <= N with a_i a unit. When every coefficient
/// below it is nilpotent, f = c u^i (1 + nilpotent * u^-1 + small) is a unit
/// once u is inverted and the result completed u-adically.
struct UnitProfile {
    std::optional<int> valuation;
    bool pivot_is_unit = false;
    bool below_all_nilpotent = false;

    bool certified() const { return valuation.has_value() && pivot_is_unit && below_all_nilpotent; }
};

class Series {
  public:
    static constexpr int kDefaultN = 32;

    Series(RingPtr ring, int N);
    Series(RingPtr ring, int N, std::vector<Coeff> coeffs, bool exact = false);

    static Series zero(const RingPtr& ring, int N);
    static Series constant(const RingPtr& ring, int N, Coeff c);
    /// u itself, homogeneous of degree -2.
    static Series variable(const RingPtr& ring, int N);
    /// u^k.
    static Series monomial(const RingPtr& ring, int N, int k, Coeff c);

    const RingPtr& ring() const { return ring_; }
    int N() const { return N_; }
    int variable_degree() const { return var_degree_; }
    std::optional<int> homogeneous_degree() const { return hom_degree_; }
    /// True when the series is known to vanish beyond N (it is a polynomial).
    bool exact() const { return exact_; }

    const Coeff& operator[](int j) const { return a_[static_cast<std::size_t>(j)]; }
    const std::vector<Coeff>& coeffs() const { return a_; }
    Element element(int j) const { return {ring_, a_[static_cast<std::size_t>(j)]}; }

    bool is_zero() const;
    /// Index of the first nonzero coefficient.
    std::optional<int> valuation() const;
    /// Index of the last nonzero coefficient, -1 for zero.
    int top() const;

    /// Declares the series homogeneous of degree d; throws DegreeMismatch if a coefficient disagrees.
    Series& with_degree(int d);
    Series& mark_exact(bool e = true) {
        exact_ = e;
        return *this;
    }
    Series truncated(int N) const;
    Series mapped(const RingPtr& target) const;

    std::string str(const std::string& var = "u") const;

  private:
    RingPtr ring_;
    int N_;
    std::vector<Coeff> a_;
    int var_degree_ = -2;
    std::optional<int> hom_degree_;
    bool exact_ = false;

    friend Series add(const Series&, const Series&);
    friend Series mul(const Series&, const Series&);
};

Series add(const Series& f, const Series& g);
Series sub(const Series& f, const Series& g);
Series neg(const Series& f);
Series mul(const Series& f, const Series& g);
Series scalar_mul(const Element& c, const Series& f);
Series pow(const Series& f, unsigned e);

/// f(g(u)); g must have zero constant term.
Series substitute(const Series& f, const Series& g);
/// Multiplicative inverse; the constant term must be a unit.
Series invert_series(const Series& f);
/// q with f = g q up to truncation, found by peeling the lowest coefficient of g.
/// The quotient is valid to order min(N_f, N_g) - val(g).
Series exact_divide(const Series& f, const Series& g);
/// Compositional inverse of f = a_1 u + ..., a_1 a unit.
Series compositional_inverse(const Series& f);

UnitProfile unit_profile(const Series& f);

/// Coefficient-wise equality up to the smaller truncation.
bool equal_up_to_truncation(const Series& f, const Series& g);
bool coeff_equal(const Coeff& a, const Coeff& b);

} // namespace tatecoh
