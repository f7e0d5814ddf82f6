#include "qtcat/alternant.hpp"

#include <sstream>

namespace qtcat {

AltVector AltVector::zero(int n, int d1, int d2) {
  AltVector v;
  v.n_ = n;
  v.d1_ = d1;
  v.d2_ = d2;
  return v;
}

AltVector AltVector::delta(const Diagram& d) {
  AltVector v = zero(d.n(), d.d1(), d.d2());
  v.terms_.emplace(d, Rational(1));
  return v;
}

AltVector AltVector::delta_of_points(const std::vector<Point>& pts) {
  int d1 = 0, d2 = 0;
  for (const Point& p : pts) {
    d1 += p.x;
    d2 += p.y;
  }
  AltVector v = zero(static_cast<int>(pts.size()), d1, d2);
  if (auto canon = canonicalize(pts)) {
    v.terms_.emplace(canon->diagram, Rational(canon->sign));
  }
  return v;
}

Rational AltVector::coeff(const Diagram& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AltVector::add_term(const Diagram& d, const Rational& c) {
  if (d.n() != n_ || d.d1() != d1_ || d.d2() != d2_)
    throw BidegreeMismatch("term diagram has bidegree (" +
                           std::to_string(d.d1()) + "," +
                           std::to_string(d.d2()) + "), vector has (" +
                           std::to_string(d1_) + "," + std::to_string(d2_) +
                           ")");
  auto [it, fresh] = terms_.emplace(d, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  } else if (c.is_zero()) {
    terms_.erase(it);
  }
}

void AltVector::check_compatible(const AltVector& a, const AltVector& b) {
  if (a.n_ != b.n_ || a.d1_ != b.d1_ || a.d2_ != b.d2_)
    throw BidegreeMismatch("vectors live in different graded pieces: n=" +
                           std::to_string(a.n_) + " (" + std::to_string(a.d1_) +
                           "," + std::to_string(a.d2_) + ") vs n=" +
                           std::to_string(b.n_) + " (" + std::to_string(b.d1_) +
                           "," + std::to_string(b.d2_) + ")");
}

AltVector operator+(const AltVector& a, const AltVector& b) {
  AltVector::check_compatible(a, b);
  AltVector out = a;
  for (const auto& [d, c] : b.terms_) out.add_term(d, c);
  return out;
}

AltVector operator-(const AltVector& a, const AltVector& b) {
  AltVector::check_compatible(a, b);
  AltVector out = a;
  for (const auto& [d, c] : b.terms_) out.add_term(d, -c);
  return out;
}

AltVector scale(const Rational& k, const AltVector& v) {
  AltVector out = AltVector::zero(v.n(), v.d1(), v.d2());
  if (k.is_zero()) return out;
  for (const auto& [d, c] : v.terms()) out.add_term(d, k * c);
  return out;
}

AltVector pieri_multiply(int c, int e, const AltVector& v) {
  if (c < 0 || e < 0 || c + e < 1)
    throw InvalidShift("power-sum shift needs c, e >= 0 and c + e >= 1");
  AltVector out = AltVector::zero(v.n(), v.d1() + c, v.d2() + e);
  for (const auto& [d, coeff] : v.terms()) {
    std::vector<Point> pts = d.points();
    for (int j = 0; j < d.n(); ++j) {
      Point saved = pts[size_t(j)];
      pts[size_t(j)] = Point{saved.x + c, saved.y + e};
      if (auto canon = canonicalize(pts)) {
        out.add_term(canon->diagram, coeff * Rational(canon->sign));
      }
      pts[size_t(j)] = saved;
    }
  }
  return out;
}

std::string AltVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    if (!first) os << " + ";
    os << c.to_string() << "*D" << d.to_string();
    first = false;
  }
  return os.str();
}

}  // namespace qtcat
