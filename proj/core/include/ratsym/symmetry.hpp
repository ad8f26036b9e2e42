#ifndef RATSYM_SYMMETRY_HPP
#define RATSYM_SYMMETRY_HPP

#include "ratsym/critical.hpp"
#include "ratsym/options.hpp"

#include <optional>

namespace ratsym {

enum class QuasiClass { NotQuasiPower, QuasiPower, PowerMapConjugate };

struct QuasiPowerInfo {
    QuasiClass cls = QuasiClass::NotQuasiPower;
    int power = 0; // +-n for PowerMapConjugate (sign = conjugate to z^power)
    std::optional<MoebiusMap> conjugator; // m with m^-1 . A . m = z^power, when found
};

QuasiPowerInfo quasi_power_class(const RatFunc& a, const EngineOptions& opt = {});

// A verified identity  A^(level) . sigma = nu . A^(level).
struct SymmetryCertificate {
    MoebiusMap sigma;
    MoebiusMap nu;
    int level = 1;
};

bool verify_certificate(const RatFunc& a, const SymmetryCertificate& c,
                        const EngineOptions& opt = {});

struct CandidateList {
    std::vector<MoebiusMap> candidates;
    bool complete = false;
    std::size_t correspondences = 0;
};

// Fiber-matching enumeration: bijections between critical values of equal
// fiber signature, then multiplicity-preserving point matchings, three point
// constraints per correspondence.  Complete iff the critical data is exact.
CandidateList candidate_sigmas(const RatFunc& a, const CriticalData& cd,
                               const EngineOptions& opt = {});
CandidateList candidate_sigmas(const RatFunc& a, const EngineOptions& opt = {});

// Accept sigma iff a . sigma = nu . a for the interpolated nu.
std::optional<SymmetryCertificate> verify_pair(const RatFunc& a, const MoebiusMap& sigma);

struct GroupReport {
    QuasiPowerInfo quasi;
    FiniteMoebiusGroup g;
    FiniteMoebiusGroup sigma_group; // kernel of gamma
    FiniteMoebiusGroup aut_group;   // sigma = nu_sigma
    FiniteMoebiusGroup ghat;        // image of gamma
    std::vector<SymmetryCertificate> gamma_table; // one row per element of g
    bool complete = false;

    bool burnside_ok = true;
    bool order_bound_ok = true;
    bool homomorphism_ok = true;
    bool cyclic_assert_ok = true; // unique-multiplicity point forces a cyclic group
    std::optional<SpherePoint> unique_mult_fixed_point;

    std::optional<MoebiusMap> nu_for(const MoebiusMap& sigma) const;
};

// G(A), Sigma(A), Aut(A), Ghat(A) and the gamma table for one function.
GroupReport group_of(const RatFunc& a, const EngineOptions& opt = {});

// Sigma(F) for one materialized iterate F, given a pool of extra candidate
// maps (lifted from lower levels, axis machinery, ...).  Used by dynamics.
FiniteMoebiusGroup subgroup_satisfying(const RatFunc& f,
                                       const std::vector<MoebiusMap>& pool,
                                       bool aut_mode, const EngineOptions& opt);

} // namespace ratsym

#endif
