#ifndef RATSYM_DYNAMICS_HPP
#define RATSYM_DYNAMICS_HPP

#include "ratsym/symmetry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ratsym {

// Maximal l with num supported in one residue class mod l and den likewise;
// then A(eps z) = eps^r A(z) for every l-th root of unity eps.
struct HomozygousOrder {
    int l = 1;
    int r = 0;
    bool power_form = false; // both supports are singletons: A = c z^(a-b)
};
HomozygousOrder homozygous_order(const RatFunc& a);

// Primitive l-th root of unity inside a (possibly extended) quadratic tower;
// exists exactly for l with a 2-power times 1 or 3 structure up to depth.
std::optional<TowerElement> root_of_unity(int l, const Tower& t, int depth_cap);

struct AxisGroupResult {
    FiniteMoebiusGroup group; // cyclic, conjugated back to the original axis
    MoebiusMap axis_map;      // w : (0, inf) -> (z0, z1)
    HomozygousOrder order;
};
// G(A, z0, z1) for a fixed point z0 of A: conjugate the axis to (0, inf) and
// read the support order.  Throws NotAFixedPoint / ConjugatorNotInTower.
AxisGroupResult axis_group(const RatFunc& a, const SpherePoint& z0, const SpherePoint& z1,
                           const EngineOptions& opt = {});

struct Seq0Result {
    bool equal = true;
    bool power_form = false;
    std::vector<int> level_orders; // l at levels 1..k_max
    AxisGroupResult base;
};
Seq0Result seq0_check(const RatFunc& a, const SpherePoint& z0, const SpherePoint& z1,
                      int k_max, const EngineOptions& opt = {});

enum class SwapMode { Sigma, Gamma };
struct SwapSolutions {
    std::vector<MoebiusMap> maps; // original coordinates, exactly verified
    bool continuous_family = false;
    bool complete = true; // false when the elimination or beta-form reduction
                          // could not cover the search space
};
// Solutions of the axis-swap families through (z0, z1): Sigma mode solves
// a . sigma = a for sigma = c/z in axis coordinates; Gamma mode solves the
// conjugacy equation a . sigma = beta . a . beta^-1 for sigma in {cz, c/z}
// and beta in {dz, d/z}.
SwapSolutions swap_solutions(const RatFunc& a, const SpherePoint& z0, const SpherePoint& z1,
                             SwapMode mode, const EngineOptions& opt = {});

enum class Provenance { BaseMeb, AxisSupport, SwapSolve, ConjugacyShortcut, Closure, Lifted, Thm42 };
std::string provenance_name(Provenance p);

struct IterateGroupReport {
    int k = 1;
    RatFunc iterate;
    GroupReport report; // groups of A^(k)
    std::vector<std::pair<MoebiusMap, Provenance>> provenance;
    bool sigma_divides_degree = true; // |Sigma(A^(k))| divides deg(A)^k
};
IterateGroupReport iterate_group(const RatFunc& a, int k, const EngineOptions& opt = {});

enum class LimitStatus { Stabilized, BudgetExhausted, InfinitePowerMap };
std::string limit_status_name(LimitStatus s);

struct LimitCertificate {
    MoebiusMap sigma;
    MoebiusMap nu; // identity for Sigma-limits, sigma itself for Aut-limits
    int level = 1; // iterate level at which the identity is verified
};

struct LimitGroupResult {
    FiniteMoebiusGroup group;
    LimitStatus status = LimitStatus::Stabilized;
    int stabilized_at = 0; // level where the sweep stopped growing
    bool complete = false;
    std::string completeness_rule; // which argument closed the search
    std::vector<LimitCertificate> certificates;
    std::vector<std::pair<int, FiniteMoebiusGroup>> level_trace;
    bool indecomposable_used = false;
};

LimitGroupResult sigma_infinity(const RatFunc& a, int k_max, const EngineOptions& opt = {},
                                bool assert_indecomposable = false);
LimitGroupResult aut_infinity(const RatFunc& a, int k_max, const EngineOptions& opt = {});

struct SElement {
    MoebiusMap nu;
    int level;
};
// Union of Ghat(A^(k)), k <= k_max; every element is re-checked against the
// inclusion nu(c(A)) subseteq c(A^(2)) and a violation is a hard error.
std::vector<SElement> s_set(const RatFunc& a, int k_max, const EngineOptions& opt = {});

std::optional<int> shares_iterate(const RatFunc& a, const RatFunc& b, int k_max,
                                  const EngineOptions& opt = {});

// T_n from the closed-form expansion; exact integer coefficients.
Poly chebyshev(int n);

struct NormalFormResult {
    Poly poly;     // z^n + a_{n-2} z^{n-2} + ... + a_0
    MoebiusMap mu; // mu^-1 . p . mu = poly
};
NormalFormResult normal_form(const Poly& p, const EngineOptions& opt = {});

// Gamma(A) = { sigma in G(A) : nu_sigma = sigma^l for some l >= 0 }.
std::vector<MoebiusMap> gamma_set(const GroupReport& rep);

} // namespace ratsym

#endif
