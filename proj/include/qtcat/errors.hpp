#pragma once

#include <stdexcept>
#include <string>

namespace qtcat {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation that needs s_j <= j-1 for all j was given a diagram
/// violating it.
struct NotSubStaircase : Error {
  using Error::Error;
};

/// Two partitions passed to the subpartition order do not partition the
/// same integer.
struct WeightMismatch : Error {
  using Error::Error;
};

/// Linear operation on vectors of different bidegree (or point count).
struct BidegreeMismatch : Error {
  using Error::Error;
};

/// Power-sum multiplication with the zero shift (c, e) = (0, 0).
struct InvalidShift : Error {
  using Error::Error;
};

/// A lemma move was attempted on an input that fails one of the stated
/// hypotheses; the message names the failed clause.
struct PreconditionViolation : Error {
  using Error::Error;
};

/// No diagram with the requested (n, d1, d2, partition type) exists.
struct Infeasible : Error {
  using Error::Error;
};

/// A guarded expensive computation was asked to exceed its size limit.
struct SizeGuard : Error {
  using Error::Error;
};

/// Modular results disagree across primes (or with the exact pass),
/// which signals an unlucky prime.
struct BackendFailure : Error {
  using Error::Error;
};

/// The generator construction produced two equal points, which would
/// falsify the construction.
struct DegenerateConjectureInstance : Error {
  using Error::Error;
};

}  // namespace qtcat
