#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qtcat/graded_module.hpp"
#include "qtcat/qt_catalan.hpp"

namespace qtcat {

/// Everything a verified (or falsified) lemma application needs to be
/// replayed: inputs, the ordered point lists before canonicalization, the
/// relation vector, and the verdict.
struct MoveOutcome {
  std::string move;
  std::vector<Point> input_points;
  std::map<std::string, int> params;
  std::vector<std::vector<Point>> produced;  // ordered lists, lemma order
  AltVector relation;
  bool verdict = false;
  /// Only the third relation carries the stronger one-sided claim.
  std::optional<bool> strengthened;
  std::string modulus;
};

/// Membership verifier with the optional "lower partition types" modulus:
/// the relation subspace augmented by the images of every sub-staircase
/// diagram of the same bidegree whose type is strictly below the given one.
/// Augmented bases are memoized per (bidegree, type, prime).
class EquivalenceVerifier {
 public:
  explicit EquivalenceVerifier(ModuleCalculator& calc) : calc_(calc) {}

  ModuleCalculator& calculator() { return calc_; }

  bool verify(const AltVector& v,
              const std::optional<PartitionType>& lower_types_than);

 private:
  struct AugmentedBasis {
    std::vector<SparseRowModP> rows;
    std::vector<int32_t> pivot_of_col;
  };

  ModuleCalculator& calc_;
  std::mutex mu_;
  std::map<std::tuple<int, int, int, std::vector<int>, uint64_t>,
           std::shared_ptr<const AugmentedBasis>> memo_;

  std::shared_ptr<const AugmentedBasis> augmented(int n, int d1, int d2,
                                                  const PartitionType& type,
                                                  uint64_t prime);
};

/// Relation 1: moves point i southeast and point j northwest (1-based).
/// Requires s_i = i-1, s_{i+1} = i, s_j = j-1, s_{j+1} = j (reading
/// s_{n+1} = n), beta_i > 0 and alpha_j > 0.
MoveOutcome transfactor_move(const Diagram& d, int i, int j,
                             EquivalenceVerifier& verifier);

/// Relation 2: swaps a block of l points starting at h with the following
/// block of m points, shifting x-coordinates by -l and +m.
MoveOutcome permute_blocks_move(const Diagram& d, int h, int l, int m,
                                EquivalenceVerifier& verifier);

/// Relation 3 on an ordered point list with weakly increasing degrees
/// (repeated points allowed; the corresponding vector is then zero).
/// Verifies 2*D ~ D_nw + D_se modulo the relation subspace together with
/// staircase forms of strictly lower partition type, and the one-sided
/// claim when the last block is not minimal or s_{n-t+1} > n - t0.
MoveOutcome powerful_relation_raw(const std::vector<Point>& points, int t,
                                  EquivalenceVerifier& verifier);
MoveOutcome powerful_relation(const Diagram& d, int t,
                              EquivalenceVerifier& verifier);

/// True iff v reduces to zero against the relation subspace, optionally
/// augmented by the lower-type images.
bool verify_equivalence(const AltVector& v,
                        const std::optional<PartitionType>& lower_types_than,
                        ModuleCalculator& calc);

/// Parameter enumeration for scans: every (i, j), (h, l, m) or t accepted
/// by the corresponding precondition checks.
std::vector<std::pair<int, int>> legal_transfactor_params(const Diagram& d);
std::vector<std::array<int, 3>> legal_permute_params(const Diagram& d);
std::vector<int> legal_powerful_params(const Diagram& d);

/// Every sub-staircase diagram with the given point count; deficits can be
/// capped (negative cap means no cap).
std::vector<Diagram> all_sub_staircase_diagrams(int n, int max_deficit = -1);

struct RelationScanReport {
  std::string relation;
  int n = 0;
  bool exhaustive = true;
  uint64_t seed = 0;
  long long instances = 0;
  long long verified = 0;
  std::vector<MoveOutcome> failures;
  bool pass() const { return instances == verified; }
};

/// Runs a relation over its legal instances at the given n.  With samples
/// >= 0 a deterministic seeded subset of that size is taken instead of the
/// full list.  The powerful relation caps input deficits at max_deficit.
RelationScanReport scan_relation(const std::string& relation, int n,
                                 EquivalenceVerifier& verifier,
                                 int samples = -1, uint64_t seed = 0,
                                 int max_deficit = -1);

}  // namespace qtcat
