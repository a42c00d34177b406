#pragma once

// Modules over R*[[u]] built from cyclic pieces, and the completed Tate functor on them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tatecoh/fgl.hpp"

namespace tatecoh {

/// One cyclic summand of a graded abelian group: Z/order in `degree`, order 0 meaning free.
struct CoefficientSummand {
    long order = 0;
    int degree = 0;

    friend bool operator==(const CoefficientSummand&, const CoefficientSummand&) = default;
    friend auto operator<=>(const CoefficientSummand& a, const CoefficientSummand& b) {
        if (a.degree != b.degree)
            return a.degree <=> b.degree;
        return a.order <=> b.order;
    }
};

enum class SummandKind { Free, Cyclic };

struct ModuleSummand {
    SummandKind kind = SummandKind::Free;
    /// Cyclic only: the module is R*[[u]]/(relator) tensored with `coefficients`.
    std::optional<Series> relator;
    /// Free: a graded R*-module, as cyclic pieces. Cyclic: defaults to R* itself.
    std::vector<CoefficientSummand> coefficients{{0, 0}};
    int shift = 0;
    /// The tagged constant block of a tower.
    bool constant = false;
    /// Set when the relator is a zero divisor and the presentation is only formal.
    bool zero_divisor = false;
    /// An m with relator | [m](u), known from the construction; trusted without a division check.
    std::optional<long> divides_hint;

    static ModuleSummand free(std::vector<CoefficientSummand> coefficients, int shift = 0, bool constant = false);
    static ModuleSummand cyclic(Series relator, int shift = 0);
};

struct FglModule {
    FglPtr fgl;
    std::vector<ModuleSummand> summands;
};

enum class LocalizationKind { UnitAfterU, NeedsCoefficientInversion, Zero, Unknown };

std::string to_string(LocalizationKind k);

struct Localization {
    long m = 0;
    LocalizationKind kind = LocalizationKind::Unknown;
    std::optional<int> valuation;   // of the unit pivot, when certified
    std::string coefficient;        // NeedsCoefficientInversion: the offending coefficient
    bool via_factors = false;       // certified as a composite of certified [a], [b]
};

/// [[1](u), ..., [m_max](u)].
std::vector<Series> mult_set(const FormalGroupLaw& F, int m_max);
std::vector<Localization> localization_behavior(const FormalGroupLaw& F, int m_max);

struct TatePrecision {
    int N = 0;
    std::optional<int> K;
    int m_max = 0;

    friend bool operator==(const TatePrecision&, const TatePrecision&) = default;
};

struct TateValue {
    bool zero = true;
    std::string base;                          // description of the completed localized base
    std::vector<CoefficientSummand> summands;  // sorted by degree, then order
    int period = 0;                            // degrees are taken mod period when nonzero
    TatePrecision precision;

    static TateValue zero_value(TatePrecision precision);
    /// Structural equality; the precision record is not compared.
    friend bool operator==(const TateValue& a, const TateValue& b) {
        return a.zero == b.zero && a.base == b.base && a.summands == b.summands && a.period == b.period;
    }
    std::string str() const;
};

FglModule bc_k_presentation(const FglPtr& F, long k);

enum class OrbitParity { Good, Bad };
FglModule orbit_local_module(const FglPtr& F, long k, OrbitParity parity, int shift = 0);
ModuleSummand orbit_summand(const FormalGroupLaw& F, long k, OrbitParity parity, int shift = 0);

/// The surviving coefficient pieces of one summand; empty when it dies.
std::vector<CoefficientSummand> tate_contribution(const FormalGroupLaw& F, const ModuleSummand& s, int m_max);
TateValue tate_of_module(const FglModule& m, int m_max);

struct ModuleTower {
    std::vector<FglModule> levels;
    /// maps[i][s]: index in level i+1 of summand s of level i, or nullopt if it is not carried.
    std::vector<std::vector<std::optional<std::size_t>>> maps;
};

struct TowerResult {
    TateValue value;
    /// 1-based level from which every structure map is an isomorphism on Tate contributions.
    std::size_t stabilization_level = 1;
    std::vector<TateValue> per_level;
};

void validate_tower(const ModuleTower& t);
TowerResult tate_of_tower(const ModuleTower& t, int m_max);
TowerResult tate_of_tower_serial(const ModuleTower& t, int m_max);
/// Keeps the listed levels (increasing) and composes the structure maps between them.
ModuleTower subtower(const ModuleTower& t, const std::vector<std::size_t>& keep);
/// A tower whose levels are all `m` with identity maps.
ModuleTower constant_tower(const FglModule& m, std::size_t levels);

} // namespace tatecoh
