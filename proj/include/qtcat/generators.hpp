#pragma once

#include <string>
#include <vector>

#include "qtcat/graded_module.hpp"
#include "qtcat/qt_catalan.hpp"

namespace qtcat {

/// The diagram attached to a path lambda: point i is
/// (n - i - lambda_i, #{j > i : lambda_i - lambda_j + i - j in {0,1}}).
/// Its bidegree is (a(lambda), b(lambda)) by construction.  Throws
/// DegenerateConjectureInstance when two points coincide.
Diagram d_of_lambda(const StaircaseLambda& lambda);

struct Conjecture41Slice {
  int d1 = 0, d2 = 0;
  int count = 0;       // lambdas landing at this bidegree
  long long dim_m = 0;
  int rank = 0;        // rank of their images in the quotient
  bool full() const { return rank == dim_m; }
};

struct Conjecture41Report {
  int n = 0;
  bool pass = false;
  bool counts_match = true;  // per-slice generator count == dim_m
  bool injective = true;     // distinct lambdas gave distinct diagrams
  std::vector<Conjecture41Slice> slices;
};

/// Groups the generator set by bidegree and checks that its images span
/// every graded piece of the quotient module.
Conjecture41Report conjecture_41_check(int n, ModuleCalculator& calc,
                                       int jobs = 0);

}  // namespace qtcat
