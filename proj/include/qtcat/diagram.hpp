#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtcat/errors.hpp"

namespace qtcat {

/// One lattice point: x is the x-exponent, y the y-exponent.
struct Point {
  int x = 0;
  int y = 0;
  int degree() const { return x + y; }
  bool operator==(const Point&) const = default;
  auto operator<=>(const Point&) const = default;
};

/// Standard-order key: degree first, then x.  Distinct points always have
/// distinct keys (equal degree and equal x forces equal y).
inline std::pair<int, int> order_key(Point p) { return {p.degree(), p.x}; }

/// A set of n distinct lattice points held in standard order
/// (degree weakly increasing, ties by strictly increasing x).
class Diagram {
 public:
  Diagram() = default;

  /// Builds from a list that must already be in standard order.
  static Diagram from_standard(std::vector<Point> pts);

  int n() const { return static_cast<int>(pts_.size()); }
  const std::vector<Point>& points() const { return pts_; }
  const Point& point(int i) const { return pts_[size_t(i)]; }  // 0-based

  std::vector<int> degrees() const;  // s_1..s_n
  int d1() const;                    // sum of x-exponents
  int d2() const;                    // sum of y-exponents
  int degree() const;                // d1 + d2
  /// n(n-1)/2 - degree; negative for diagrams beyond the staircase.
  int deficit() const;

  /// s_j <= j-1 for all j.
  bool sub_staircase() const;
  /// s_i in {i-1, i-2} for all i.
  bool minimal_staircase() const;

  bool operator==(const Diagram&) const = default;
  /// Lexicographic on the flattened point list; this is the enumeration
  /// and basis-column order used everywhere.
  std::strong_ordering operator<=>(const Diagram& o) const;

  std::string to_string() const;  // e.g. "{(0,0),(1,0),(0,2)}"

 private:
  std::vector<Point> pts_;
};

struct CanonicalForm {
  Diagram diagram;
  int sign;  // +1 or -1, parity of the sorting permutation
};

/// Sorts an ordered point list into standard order, tracking the sign of
/// the permutation.  Returns nullopt when two points coincide (the
/// corresponding determinant is zero).
std::optional<CanonicalForm> canonicalize(std::vector<Point> pts);

/// Blocks of a sub-staircase diagram: cut points are {j : s_j = j-1}.
struct BlockStructure {
  std::vector<int> starts;    // 1-based block start indices, first is 1
  std::vector<int> sizes;     // same length as starts
  std::vector<int> deficits;  // per block: sum of (j-1-s_j) over the block
};

/// Weakly decreasing positive parts; the empty partition has no parts.
struct PartitionType {
  std::vector<int> parts;
  PartitionType() = default;
  explicit PartitionType(std::vector<int> p);
  int weight() const;
  bool operator==(const PartitionType&) const = default;
  std::strong_ordering operator<=>(const PartitionType&) const = default;
  std::string to_string() const;  // "(3,2)" or "()"
};

/// Block structure of an s-vector; usable for point lists with repeats.
/// Throws NotSubStaircase when some s_j > j-1.
BlockStructure block_structure_of_degrees(std::span<const int> degrees);
BlockStructure block_structure(const Diagram& d);

/// Weakly decreasing positive per-block deficits; throws NotSubStaircase.
PartitionType partition_type_of_degrees(std::span<const int> degrees);
PartitionType partition_type(const Diagram& d);

bool is_minimal_staircase(const Diagram& d);

/// Subpartition order: mu <=_P nu iff the multiset mu splits into groups
/// whose sums are the parts of nu.  Throws WeightMismatch when the two
/// weights differ.
bool partition_leq(const PartitionType& mu, const PartitionType& nu);
bool partition_lt(const PartitionType& mu, const PartitionType& nu);

/// All partitions of k, weakly decreasing parts, deterministic order.
std::vector<PartitionType> partitions_of(int k);

/// All diagrams with n distinct points, x-sum d1 and y-sum d2, ordered
/// lexicographically on the flattened standard-order point list.
std::vector<Diagram> enumerate_diagrams(int n, int d1, int d2,
                                        bool sub_staircase_only = false);

/// Memoized shared copy of enumerate_diagrams(n, d1, d2, false);
/// this is the basis-column order of the alternant space.
const std::vector<Diagram>& diagram_basis(int n, int d1, int d2);

/// Least possible total degree of n distinct lattice points.
int min_total_degree(int n);

}  // namespace qtcat
