#pragma once

#include <string>
#include <utility>
#include <vector>

#include "schmidt/fourier.hpp"

namespace schmidt {

///
/// An m x m analytic matrix symbol over [0, degree] with a certified bound
/// on the part discarded by truncation (zero for matrix polynomials).
/// Schmidt-subspace machinery requires the symmetric flag; non-symmetric
/// symbols are constructible but refused downstream.
///
class MatrixSymbol {
 public:
  explicit MatrixSymbol(MatrixFourier entries, double tail_bound = 0.0);

  int dim() const { return entries_.rows(); }
  int degree() const { return entries_.pos(); }
  double tail_bound() const { return tail_bound_; }
  bool symmetric() const { return symmetric_; }

  const MatrixFourier& entries() const { return entries_; }
  /// The coefficient matrix U^(n); zero for n > degree.
  Eigen::MatrixXcd coeff_block(int n) const { return entries_.block(n); }

 private:
  MatrixFourier entries_;
  double tail_bound_;
  bool symmetric_;
};

/// Exact matrix polynomial symbol from a sparse list of (n, U^(n)) blocks.
MatrixSymbol poly_symbol(
    int m, const std::vector<std::pair<int, Eigen::MatrixXcd>>& blocks);

/// A scalar analytic coefficient sequence over [0, truncation] plus the l1
/// bound on everything beyond it.
struct ScalarSeries {
  Eigen::VectorXcd coeffs;
  double tail_bound = 0.0;
};

/// Truncated finite Blaschke product with the stated zeros; factors are
/// (a - z)/(1 - conj(a) z) without unimodular normalization. Throws
/// ZeroOnCircle when |a| >= 1.
ScalarSeries blaschke_scalar(const std::vector<Complex>& zeros,
                             int truncation);

/// diag(phi, ..., phi) from a scalar series.
MatrixSymbol scalar_diag_symbol(const ScalarSeries& phi, int m);

/// The symbol of K_U: blocks (S*U)^(n) = U^(n+1).
MatrixSymbol shift_symbol(const MatrixSymbol& u);

/// Columns U_i = U e_i as H^2 elements.
std::vector<FourierVec> symbol_columns(const MatrixSymbol& u);

/// Innerness defect of a scalar series on its natural grid:
/// max over nodes of | |u|^2 - 1 |.
double innerness_defect(const ScalarSeries& phi);

// ---------------------------------------------------------------------------
// Symbol specification files (JSON)

struct SymbolSpec {
  int m = 1;
  std::string kind;  // poly | blaschke_matrix | example-3.6A | example-3.6B |
                     // example-4.6
  std::vector<std::pair<int, Eigen::MatrixXcd>> blocks;
  std::vector<Complex> zeros;
  std::vector<Complex> phi_zeros;
  std::vector<Complex> psi_zeros;
  int phi_degree = -1;  // exact monomial z^k alternative to phi_zeros
  int psi_degree = -1;
  int truncation = 16;

  bool operator==(const SymbolSpec& other) const;
};

/// Parse a symbol spec; throws SpecError naming the byte offset on malformed
/// JSON and on schema violations.
SymbolSpec parse_symbol_spec(const std::string& text);

std::string emit_symbol_spec(const SymbolSpec& spec);

MatrixSymbol realize_symbol(const SymbolSpec& spec);

}  // namespace schmidt
