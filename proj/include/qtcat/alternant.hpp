#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtcat/diagram.hpp"
#include "qtcat/rational.hpp"

namespace qtcat {

/// A bihomogeneous alternating polynomial stored as a sparse combination of
/// determinant basis vectors: diagram -> exact nonzero coefficient.  Every
/// key diagram is canonical and has the declared bidegree.
class AltVector {
 public:
  AltVector() = default;

  static AltVector zero(int n, int d1, int d2);
  /// Unit vector at a canonical diagram.
  static AltVector delta(const Diagram& d);
  /// Sign-tracked unit vector of an arbitrary ordered point list; a list
  /// with a repeated point gives the zero vector.  All sign conventions in
  /// the repository flow through this one function.
  static AltVector delta_of_points(const std::vector<Point>& pts);

  int n() const { return n_; }
  int d1() const { return d1_; }
  int d2() const { return d2_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Diagram, Rational>& terms() const { return terms_; }

  /// Coefficient of a diagram (zero if absent).
  Rational coeff(const Diagram& d) const;

  void add_term(const Diagram& d, const Rational& c);

  friend AltVector operator+(const AltVector& a, const AltVector& b);
  friend AltVector operator-(const AltVector& a, const AltVector& b);
  AltVector& operator+=(const AltVector& b) { return *this = *this + b; }
  AltVector& operator-=(const AltVector& b) { return *this = *this - b; }

  bool operator==(const AltVector& o) const {
    return n_ == o.n_ && d1_ == o.d1_ && d2_ == o.d2_ && terms_ == o.terms_;
  }

  std::string to_string() const;

 private:
  int n_ = 0, d1_ = 0, d2_ = 0;
  std::map<Diagram, Rational> terms_;

  static void check_compatible(const AltVector& a, const AltVector& b);
};

AltVector scale(const Rational& k, const AltVector& v);

/// Multiplication by the polarized power sum with exponents (c, e):
/// on basis diagrams it bumps one point by (c, e) in all n ways, dropping
/// bumps that collide.  Requires c + e >= 1; throws InvalidShift otherwise.
AltVector pieri_multiply(int c, int e, const AltVector& v);

}  // namespace qtcat
