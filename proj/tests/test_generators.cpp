#include <set>

#include "doctest.h"
#include "qtcat/generators.hpp"

using namespace qtcat;

TEST_CASE("generator diagrams for n = 3") {
  // lambda = (1,1,0) lands on the three unit points
  Diagram d = d_of_lambda(make_lambda({1, 1, 0}));
  CHECK(d.points() == std::vector<Point>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(d.d1() == 1);
  CHECK(d.d2() == 1);
}

TEST_CASE("flat lambda gives the x-axis staircase") {
  for (int n : {3, 5, 7}) {
    Diagram d = d_of_lambda(make_lambda(std::vector<int>(size_t(n), 0)));
    for (int i = 0; i < n; ++i) CHECK(d.point(i) == Point{i, 0});
    CHECK(d.d1() == n * (n - 1) / 2);
    CHECK(d.d2() == 0);
  }
}

TEST_CASE("full staircase lambda gives the y-axis staircase") {
  for (int n : {3, 5, 7}) {
    std::vector<int> parts;
    for (int i = n - 1; i >= 0; --i) parts.push_back(i);
    Diagram d = d_of_lambda(make_lambda(parts));
    for (int i = 0; i < n; ++i) CHECK(d.point(i) == Point{0, i});
    CHECK(d.d1() == 0);
    CHECK(d.d2() == n * (n - 1) / 2);
  }
}

TEST_CASE("generator bidegrees equal the statistics, n <= 10") {
  for (int n = 1; n <= 10; ++n) {
    for (const StaircaseLambda& l : enumerate_lambda(n)) {
      Diagram d = d_of_lambda(l);
      CHECK(d.d1() == stat_a(l));
      CHECK(d.d2() == stat_b(l));
    }
  }
}

TEST_CASE("generator map is injective for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    std::set<Diagram> seen;
    for (const StaircaseLambda& l : enumerate_lambda(n))
      CHECK(seen.insert(d_of_lambda(l)).second);
  }
}

TEST_CASE("generator set spans the module for n <= 4") {
  ModuleCalculator calc;
  for (int n = 1; n <= 4; ++n) {
    Conjecture41Report r = conjecture_41_check(n, calc);
    CHECK(r.pass);
    CHECK(r.counts_match);
    CHECK(r.injective);
    long long generators = 0;
    for (const auto& s : r.slices) generators += s.count;
    CHECK(generators == catalan_number(n));
  }
}
