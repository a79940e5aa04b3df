#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mrt/cnf.hpp"
#include "mrt/families.hpp"
#include "mrt/proof.hpp"

namespace mrt {

/// Block width: the number of distinct W blocks a clause mentions.
/// Auxiliary variables of the variants count toward their own block (they
/// stand in for w_{i,1} / w_{i,2}); X variables never contribute.
/// Throws on variables outside the layout.
int mu(const Clause& c, const FamilyLayout& layout);

/// The trimming map r: keeps the smallest positive X literal, the largest
/// negative X literal, and every non-X literal; all other X literals are
/// dropped. Throws on variables outside the layout.
Clause trim_r(const Clause& c, const FamilyLayout& layout);

/// The restriction sigma_i for 0 <= i < m: x_{i'} -> 1 when i' <= i*l,
/// free when i*l < i' <= (i+1)*l, 0 when i' > (i+1)*l; all other variables
/// stay free. At i = m-1 the restricted base instance is an exact renamed
/// copy of the (l, 1, n) instance; for smaller i the image keeps one extra
/// free X variable and a trailing pair of boundary clauses.
Restriction sigma_i(int i, const FamilyLayout& layout);

/// The X variables left free by sigma_i: indices i*l < i' <= (i+1)*l that
/// exist in the layout.
std::vector<int> sigma_star_vars(int i, const FamilyLayout& layout);

/// True iff rho satisfies every clause it touches, i.e. for every clause
/// either no variable is assigned or some literal evaluates to true.
bool is_autarky(const Restriction& rho, const std::vector<Clause>& clauses);
bool is_autarky(const Restriction& rho, const CnfFormula& f);

/// True iff rho is k-respecting: an autarky with respect to the W axioms,
/// the restricted base instance is a renamed copy of the (k, m, n)
/// instance, and free X variables map to X variables. The renaming is not
/// searched: surviving W blocks in index order become blocks 1..k and
/// surviving X variables in index order become x_1..x_{k*m-1}. Variant
/// auxiliaries are translated to their base targets first (and must agree
/// with the fixed values for v2); inconsistent translations yield false.
bool is_k_respecting(const Restriction& rho, const FamilyLayout& layout,
                     int k);

/// One draw of the block-killing distribution: J[j-1] is 0 or 1 when block
/// j is assigned that constant, -1 when it stays free. The derived
/// restriction sets every w_{j,.} of a killed block to J_j and assigns
/// x_i exactly when its block is killed; the chain rule copies the value
/// of x_{i-1} with x_0 = 1, so every assigned X variable receives 1.
struct RestrictionSample {
  std::vector<int> J;
  Restriction rho;
  std::uint64_t seed = 0;

  int surviving_blocks() const;
};

/// Samples J with Pr[0] = Pr[1] = 1/4 and Pr[free] = 1/2 per block and
/// derives the restriction. Requires a base-family layout. Deterministic
/// in the seed.
RestrictionSample sample_restriction(const FamilyLayout& layout,
                                     std::uint64_t seed);

/// Draws up to max_tries samples (seeds seed, seed+1, ...) and returns the
/// first whose restriction leaves at least l/4 blocks free and gives every
/// surviving step clause of p block width at most l/8. Absent when no try
/// qualifies.
std::optional<RestrictionSample> find_respecting_restriction(
    const Proof& p, const FamilyLayout& layout, int max_tries,
    std::uint64_t seed);

/// Restriction map files: one "<var> <0|1|*>" line per variable, '*'
/// meaning unassigned. The writer lists variables 1..num_vars in order;
/// the reader accepts any subset, comments (#) and blank lines.
Restriction parse_restriction_map(const std::string& text);
Restriction parse_restriction_map_file(const std::string& path);
std::string write_restriction_map(const Restriction& rho, int num_vars);

}  // namespace mrt
