#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbl/function.hpp"
#include "dbl/linalg.hpp"
#include "dbl/norm_value.hpp"
#include "dbl/ring.hpp"

namespace dbl {

inline constexpr int kMaxFamily = 6;

/// A finite family of closed subsets of X.
struct CoverFamily {
  SpacePtr space;
  std::vector<Mask> sets;
};

/// Throws NotClosed, SizeExceeded (more than six sets) or InvalidInput (empty).
CoverFamily make_family(SpacePtr x, std::vector<Mask> sets);

/// One summand C(K_tau, R) (x) M of a chain group.
struct ChainTerm {
  std::vector<int> tuple;            // strictly increasing; empty in degree 0
  Mask set = 0;                      // K_tau (X in degree 0)
  std::vector<Mask> components;      // quasi-components of K_tau, in X's labels
  size_t offset = 0;                 // first coordinate of this summand
};

/// Free chain groups C_0 .. C_top with d_k : C_k -> C_{k+1} stored as
/// dims[k+1] x dims[k] integer matrices over the ring.
struct ChainComplex {
  RingDescriptor ring = RingDescriptor::int_inf();
  size_t coefficient_rank = 1;       // rank of the coefficient module M
  std::vector<size_t> dims;
  std::vector<std::vector<ChainTerm>> terms;
  std::vector<IntMatrix> differentials;
  std::vector<std::vector<std::string>> labels;
};

/// The alternating Tate-Cech complex of the family with coefficients in
/// l(S, R) of the given rank (1 for R itself). Degree k >= 1 is the product
/// over increasing k-tuples of C(K_tau, R) (x) M.
ChainComplex build_tate_cech(const CoverFamily& s, const RingDescriptor& ring, size_t coefficient_rank = 1);

/// Throws ValidationFailure if some d_{k+1} d_k is nonzero over the ring.
void verify_d_squared(const ChainComplex& c);

struct ExactnessReport {
  std::vector<HomologyGroup> homology;  // one per degree
  bool exact() const;
};

ExactnessReport exactness(const ChainComplex& c);

struct StrictSection {
  int degree = 0;           // a section of d_degree on ker d_{degree+1}
  std::string kind;         // "partition" or "sum-split"
  IntMatrix matrix;         // dims[degree] x dims[degree+1]
  NormValue constant;       // certified operator bound for the sup norms
  long declared = 1;        // the bound the construction promises
};

/// Sections at every stage where the complex is exact one degree up, built
/// from the partition x -> least covering index (zero off the union), plus
/// the ideal sum-split section at degree 0 for two-set families. Each is
/// verified to satisfy d o sigma = id on ker d_{degree+1}; NoSection otherwise.
std::vector<StrictSection> strict_sections(const ChainComplex& c, const CoverFamily& s);

bool is_cover(const CoverFamily& s);

struct EquivalenceReport {
  bool cover = false;
  bool exact = false;
  bool zero_ring = false;               // verdict "cover or R = {0}"
  std::vector<HomologyGroup> homology;
  std::optional<CfinFunction> witness;  // nonzero, vanishing on every K (non-covers)
};

/// Runs is_cover and the homology computation independently and checks that
/// they agree. X must be Hausdorff (NotHausdorff); throws
/// EquivalenceViolation on disagreement.
EquivalenceReport tate_equivalence_report(const CoverFamily& s, const RingDescriptor& ring,
                                          size_t coefficient_rank = 1);

struct EnumerationReport {
  size_t cases = 0;
  size_t covers = 0;
  size_t disagreements = 0;
  size_t module_disagreements = 0;  // coefficient complex vs scalar complex
  double max_section_constant = 0;
  std::optional<std::string> first_failure;
};

/// Every discrete X with 1..max_points points and every family of 1..max_sets
/// subsets (as multisets), checking the equivalence, the rank-2 coefficient
/// complex, and the section constants.
EnumerationReport enumerate_equivalence(int max_points, int max_sets, const RingDescriptor& ring);

/// Indicator of the first quasi-component missed by the family.
/// Throws IsCover, InvalidInput for the zero ring, NoWitness if every
/// component meets the union.
CfinFunction descent_faithful_witness(const CoverFamily& s, const RingDescriptor& ring);

/// Stalk ranks of a module on each piece, one per point of K_i (ascending).
struct PieceModule {
  std::vector<size_t> ranks;
};

/// Isomorphisms from piece i to piece j (i < j), one per point of K_i n K_j
/// in ascending order; each is a rank_j x rank_i unimodular matrix.
struct Transition {
  int from = 0;
  int to = 0;
  std::vector<IntMatrix> maps;
};

struct GluedModule {
  std::vector<size_t> ranks;                    // per point of X
  std::vector<int> source_piece;                // piece each stalk is taken from
  /// iso[i][k]: glued stalk -> stalk of piece i at its k-th point.
  std::vector<std::vector<IntMatrix>> iso;
};

/// Glues modules given on the pieces of a cover of a discrete space.
/// Throws InvalidInput for missing or malformed data, CocycleViolation with
/// the failing triple and point.
GluedModule glue_modules(const CoverFamily& s, const std::vector<PieceModule>& pieces,
                         const std::vector<Transition>& transitions);

/// Restricts the glued module to each piece and checks it recovers the piece
/// compatibly with the transitions.
bool glue_round_trip(const CoverFamily& s, const std::vector<PieceModule>& pieces,
                     const std::vector<Transition>& transitions, const GluedModule& g);

}  // namespace dbl
