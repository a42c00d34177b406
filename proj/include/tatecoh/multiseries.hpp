#pragma once

// Series in two or three variables, truncated by total degree.

#include <array>
#include <vector>

#include "tatecoh/kernels.hpp"
#include "tatecoh/series.hpp"

namespace tatecoh {

struct Monomial {
    std::array<int, 3> exps{};
    Coeff coeff;
};

class MultiSeries {
  public:
    MultiSeries(RingPtr ring, int nvars, int N);

    /// The coordinate function x_which (0-based).
    static MultiSeries variable(const RingPtr& ring, int nvars, int N, int which);
    /// A univariate series placed in variable `which`.
    static MultiSeries from_univariate(const Series& f, int nvars, int which);

    const RingPtr& ring() const { return ring_; }
    int nvars() const { return data_.nvars; }
    int N() const { return data_.N; }
    bool exact() const { return exact_; }
    MultiSeries& mark_exact(bool e = true) {
        exact_ = e;
        return *this;
    }

    const Coeff& coeff(int i, int j, int k = 0) const { return data_.data[data_.index(i, j, k)]; }
    void set(int i, int j, int k, Coeff c) { data_.data[data_.index(i, j, k)] = std::move(c); }
    void accumulate(int i, int j, int k, const Coeff& c);

    const kernels::MultiCoeffs& raw() const { return data_; }
    kernels::MultiCoeffs& raw() { return data_; }

    /// Nonzero monomials in lexicographic exponent order.
    std::vector<Monomial> terms() const;
    /// Largest total degree of a nonzero monomial, -1 for zero.
    int total_degree() const;
    MultiSeries truncated(int N) const;
    MultiSeries mapped(const RingPtr& target) const;
    /// Re-expresses a bivariate series in `nvars` variables, sending x -> var_of[0], y -> var_of[1].
    MultiSeries embedded(int nvars, std::array<int, 2> var_of) const;

  private:
    RingPtr ring_;
    kernels::MultiCoeffs data_;
    bool exact_ = true;
};

MultiSeries add(const MultiSeries& a, const MultiSeries& b);
MultiSeries sub(const MultiSeries& a, const MultiSeries& b);
MultiSeries mul(const MultiSeries& a, const MultiSeries& b);
MultiSeries scalar_mul(const Coeff& c, const MultiSeries& a);
MultiSeries pow(const MultiSeries& a, unsigned e);
bool equal_up_to_truncation(const MultiSeries& a, const MultiSeries& b);

/// F(a(u), b(u)) for a bivariate F and univariate a, b with zero constant terms.
Series evaluate(const MultiSeries& F, const Series& a, const Series& b);
/// F(A, B) for a bivariate F and multivariate A, B (same number of variables) with zero constant terms.
MultiSeries compose(const MultiSeries& F, const MultiSeries& A, const MultiSeries& B);
/// f(A) for a univariate f and multivariate A with zero constant term.
MultiSeries compose(const Series& f, const MultiSeries& A);

} // namespace tatecoh
