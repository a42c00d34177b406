#pragma once

// Formal group laws F(x, y) over graded coefficient rings and their n-series.

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "tatecoh/multiseries.hpp"
#include "tatecoh/series.hpp"

namespace tatecoh {

/// The data a law was built from; serialised instead of its coefficients.
struct FglDefinition {
    std::string family; // additive, multiplicative, honda, integral-morava, custom
    long p = 0;
    int height = 0;
    int K = 0;
    std::string beta; // multiplicative only, formatted ring element
};

class FormalGroupLaw {
  public:
    FormalGroupLaw(std::string name, FglDefinition def, MultiSeries F);

    const std::string& name() const { return name_; }
    const FglDefinition& definition() const { return def_; }
    const RingPtr& ring() const { return F_.ring(); }
    const MultiSeries& law() const { return F_; }
    int N() const { return F_.N(); }
    /// True when the ring carries a grading and F has been checked homogeneous.
    bool graded() const { return ring()->is_laurent(); }

    /// F(a, b).
    Series apply(const Series& a, const Series& b) const;
    /// [n](u); memoised, any sign.
    Series n_series(long n) const;
    /// i(u) with F(u, i(u)) = 0.
    Series formal_inverse() const;

  private:
    Series compute_inverse() const;

    std::string name_;
    FglDefinition def_;
    MultiSeries F_;
    mutable std::shared_mutex mu_;
    mutable std::map<long, Series> cache_;
    mutable std::optional<Series> inverse_;
};

using FglPtr = std::shared_ptr<const FormalGroupLaw>;

FglPtr additive_fgl(const RingPtr& ring, int N, std::string name = "additive");
/// x + y + beta*xy; beta defaults to 1, or to the generator on a graded ring.
FglPtr multiplicative_fgl(const RingPtr& ring, int N, std::optional<Coeff> beta = std::nullopt,
                          std::string name = "multiplicative");

/// A logarithm sum_k c_k x^k over Q, written with the generator set to 1.
/// On a graded target the coefficient of x^k acquires g^((k-1)/(p^n-1)).
struct LogData {
    long p = 0;
    int height = 0;
    int N = 0;
    std::vector<std::pair<int, mpq_class>> terms; // (exponent, coefficient), increasing exponents
};

/// sum_i x^(p^(n i)) / p^i.
LogData honda_log(long p, int height, int N);
/// The log of the Lubin-Tate law with endomorphism f, solving log(f(x)) = pi log(x).
/// `f` is given by (exponent, rational coefficient) pairs with the generator set to 1.
LogData lubin_tate_log(const std::vector<std::pair<int, mpq_class>>& f, const mpq_class& pi, long p, int height,
                       int N);

/// exp(log x + log y) reduced into `target`, with an integrality check.
FglPtr fgl_from_log(const LogData& log, const RingPtr& target, int N, std::string name, FglDefinition def);

/// F_p[v, v^-1] with |v| = 2(p^n - 1).
RingPtr morava_ring(long p, int height);
/// Z/p^K[v, v^-1] with |v| = 2(p^n - 1).
RingPtr integral_morava_ring(long p, int height, int K);

FglPtr honda_fgl(long p, int height, int N);
/// The Lubin-Tate law with [-p](u) = -p u + v u^(p^n), reduced to Z/p^K[v, v^-1].
FglPtr lubin_tate_fgl(long p, int height, int K, int N);

struct AxiomReport {
    bool ok = true;
    std::string axiom;            // unitality, commutativity, associativity, homogeneity
    std::array<int, 3> witness{}; // offending monomial
    int nvars = 2;

    std::string str() const;
};

AxiomReport fgl_axiom_check(const MultiSeries& F);
AxiomReport fgl_axiom_check(const FormalGroupLaw& F);

/// Parses an FGL name (additive, hz, hq, hfp:p, hzmod:n, multiplicative, ku, ku:p[:k],
/// honda:p:n, integral-morava:p:n[:K]) and returns a shared, cached instance.
FglPtr fgl_by_name(const std::string& name, int N, int default_K = 8);

/// The names acceptance-level checks iterate over.
std::vector<std::string> builtin_fgl_names();

} // namespace tatecoh
