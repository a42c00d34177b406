#pragma once

// Desk-scale model of the action-filtered equivariant tower of a Liouville manifold,
// and the recovery of integral homology and complex K-theory from Tate data.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tatecoh/tate.hpp"

namespace tatecoh {

/// A finitely generated abelian group: Z^free plus (Z/p^l)^mult for each (p, l) -> mult.
struct Group {
    long free = 0;
    std::map<std::pair<long, int>, int> torsion;

    bool trivial() const { return free == 0 && torsion.empty(); }
    friend bool operator==(const Group&, const Group&) = default;
};

/// Groups indexed by degree; trivial groups are never stored.
using GradedGroup = std::map<int, Group>;

void add_torsion(Group& g, long p, int l, int mult = 1);
void normalize(GradedGroup& g);

struct ManifoldModel {
    int dim = 0;
    bool weinstein = false;
    GradedGroup homology;
};

/// Checks degrees, primes, exponents and multiplicities; SchemaViolation otherwise.
void validate_manifold(const ManifoldModel& m);

struct OrbitDatum {
    mpq_class length;
    long multiplicity = 1;
    OrbitParity parity = OrbitParity::Good;
    int shift = 0;
};

/// l^2/2 + l.
mpq_class orbit_action(const mpq_class& length);

/// 2(p^m - 1) > dim, or 4(p^m - 1) > dim for Weinstein manifolds.
bool degeneration_holds(long p, int height, int dim, bool weinstein);

/// H_{2n-*}(M; R*) as coefficient pieces for a free summand over the ring of F,
/// by universal coefficients. Degrees are cohomological (2n - d), not yet reduced.
std::vector<CoefficientSummand> constant_block_coefficients(const ManifoldModel& m, const Ring& R);

/// The coefficient module for K_{p^k}(height), degrees reduced mod 2(p^height - 1).
std::vector<CoefficientSummand> regrade_poincare(const ManifoldModel& m, long p, int k, int height);

struct SymplecticTower {
    ManifoldModel manifold;
    std::vector<mpq_class> slopes;
    std::vector<OrbitDatum> orbits; // sorted by length
    ModuleTower realized;
    /// orbit indices present at each level
    std::vector<std::vector<std::size_t>> members;
};

SymplecticTower build_sh_tower(const ManifoldModel& m, std::vector<OrbitDatum> orbits, std::vector<mpq_class> slopes,
                               const FglPtr& F);

struct ShTateResult {
    TowerResult tower;
    TateValue constant_only;
    bool theorem_holds = false;
};

ShTateResult sh_tate(const SymplecticTower& t, int m_max);

/// Smallest height m' with the degeneration hypothesis for (p, dim).
int smallest_height(long p, int dim, bool weinstein);

struct MoravaLevel {
    int k = 0;
    TateValue value;
};

struct MoravaSeries {
    long p = 0;
    int height = 0;
    std::vector<MoravaLevel> levels;
};

/// Tate values for K_{p^k}(height), k in ks, through the orbit-free tower.
MoravaSeries morava_tate_tower(const ManifoldModel& m, long p, int height, const std::vector<int>& ks, int N,
                               int m_max);
MoravaSeries morava_tate_tower_serial(const ManifoldModel& m, long p, int height, const std::vector<int>& ks, int N,
                                      int m_max);

/// The p-primary part of H_*(M; Z) and the free ranks seen p-locally.
GradedGroup recover_p_local(const MoravaSeries& series, int dim);

/// Free ranks from the rational value, p-torsion from each Morava series.
GradedGroup recover_integral_homology(const TateValue& rational, const std::vector<MoravaSeries>& morava, int dim);

/// Forward pipeline: rational value (through hq) and Morava series for each prime.
struct BlindedData {
    TateValue rational;
    std::vector<MoravaSeries> morava;
};
BlindedData blind_manifold(const ManifoldModel& m, const std::vector<long>& primes, int kmax, int N, int m_max);

struct CompletedPart {
    int parity = 0;
    long completed_free = 0;
    std::map<std::pair<long, int>, int> torsion;

    friend bool operator==(const CompletedPart&, const CompletedPart&) = default;
};

struct CompletedModule {
    std::vector<CompletedPart> parts;

    friend bool operator==(const CompletedModule&, const CompletedModule&) = default;
};

/// A^ = lim A/nA: free rank becomes completed free rank, finite groups are unchanged.
CompletedPart completion_of_fg_group(const Group& g, int parity);

struct KuGroups {
    Group ku0;
    Group ku1;

    friend bool operator==(const KuGroups&, const KuGroups&) = default;
};

CompletedModule ku_forward(const KuGroups& g);
KuGroups recover_ku(const CompletedModule& m);

} // namespace tatecoh
