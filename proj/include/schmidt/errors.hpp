#pragma once

#include <stdexcept>
#include <string>

namespace schmidt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two operands live in spaces of different vector dimension.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A requested coefficient window cannot hold the full product degree.
struct AliasingError : Error {
  using Error::Error;
};

/// An input exceeds the coefficient window of a truncated operator.
struct WindowExceeded : Error {
  using Error::Error;
};

/// A symbol is not coefficientwise symmetric; Schmidt machinery refuses it.
struct NotSymmetric : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

/// A Blaschke zero lies on or outside the unit circle.
struct ZeroOnCircle : Error {
  using Error::Error;
};

struct NotAnEigenvector : Error {
  using Error::Error;
};

/// Two singular-value clusters are too close to split with confidence.
struct AmbiguousClustering : Error {
  using Error::Error;
};

/// A pointwise inversion hit a (near-)singular grid node.
struct GridSingularity : Error {
  using Error::Error;
};

/// A subspace handed to an extraction step fails its invariance precondition.
struct NotInvariant : Error {
  using Error::Error;
};

struct NotInner : Error {
  using Error::Error;
};

/// Malformed or inconsistent symbol specification file.
struct SpecError : Error {
  using Error::Error;
};

}  // namespace schmidt
