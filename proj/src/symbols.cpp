#include "schmidt/symbols.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace schmidt {

namespace {

constexpr double kSymmetryTol = 1e-13;

bool blocks_symmetric(const MatrixFourier& entries) {
  if (entries.rows() != entries.cols()) return false;
  for (int n = 0; n <= entries.pos(); ++n) {
    const Eigen::MatrixXcd b = entries.block(n);
    if ((b - b.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) return false;
  }
  return true;
}

}  // namespace

MatrixSymbol::MatrixSymbol(MatrixFourier entries, double tail_bound)
    : entries_(std::move(entries)), tail_bound_(tail_bound) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionMismatch("MatrixSymbol: entries must be square");
  }
  if (entries_.neg() != 0) {
    throw Error("MatrixSymbol: entries must be analytic");
  }
  if (tail_bound_ < 0.0) throw Error("MatrixSymbol: negative tail bound");
  symmetric_ = blocks_symmetric(entries_);
}

MatrixSymbol poly_symbol(
    int m, const std::vector<std::pair<int, Eigen::MatrixXcd>>& blocks) {
  int degree = 0;
  for (const auto& [n, blk] : blocks) {
    if (n < 0) throw Error("poly_symbol: negative coefficient index");
    if (blk.rows() != m || blk.cols() != m) {
      throw DimensionMismatch("poly_symbol: block is not m x m");
    }
    degree = std::max(degree, n);
  }
  MatrixFourier entries(m, m, 0, degree);
  for (const auto& [n, blk] : blocks) {
    entries.set_block(n, entries.block(n) + blk);
  }
  return MatrixSymbol(std::move(entries), 0.0);
}

namespace {

// Single factor (a - z)/(1 - conj(a) z): c_0 = a, c_k = -(1-|a|^2) conj(a)^{k-1}.
ScalarSeries blaschke_factor(Complex a, int truncation) {
  const double r = std::abs(a);
  if (r >= 1.0) {
    throw ZeroOnCircle("blaschke_scalar: zero with |a| >= 1");
  }
  ScalarSeries s;
  s.coeffs = Eigen::VectorXcd::Zero(truncation + 1);
  s.coeffs(0) = a;
  const Complex ac = std::conj(a);
  Complex pw(1.0, 0.0);
  for (int k = 1; k <= truncation; ++k) {
    s.coeffs(k) = -(1.0 - r * r) * pw;
    pw *= ac;
  }
  s.tail_bound =
      r == 0.0 ? 0.0 : (1.0 - r * r) * std::pow(r, truncation) / (1.0 - r);
  return s;
}

double l1_norm(const Eigen::VectorXcd& c) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) s += std::abs(c(k));
  return s;
}

}  // namespace

ScalarSeries blaschke_scalar(const std::vector<Complex>& zeros,
                             int truncation) {
  if (truncation < 1) throw Error("blaschke_scalar: truncation < 1");
  ScalarSeries acc;
  acc.coeffs = Eigen::VectorXcd::Zero(truncation + 1);
  acc.coeffs(0) = Complex(1.0, 0.0);
  acc.tail_bound = 0.0;
  double acc_l1_full = 1.0;  // l1 bound on the untruncated accumulated product
  for (Complex a : zeros) {
    const ScalarSeries f = blaschke_factor(a, truncation);
    const double f_l1_full = l1_norm(f.coeffs) + f.tail_bound;
    // Full convolution of the two truncated series, degree <= 2*truncation.
    Eigen::VectorXcd conv = Eigen::VectorXcd::Zero(2 * truncation + 1);
    for (int i = 0; i <= truncation; ++i) {
      for (int j = 0; j <= truncation; ++j) {
        conv(i + j) += acc.coeffs(i) * f.coeffs(j);
      }
    }
    double overflow = 0.0;
    for (int k = truncation + 1; k <= 2 * truncation; ++k) {
      overflow += std::abs(conv(k));
    }
    const double tail = acc.tail_bound * f_l1_full +
                        l1_norm(acc.coeffs) * f.tail_bound + overflow;
    acc.coeffs = conv.head(truncation + 1);
    acc.tail_bound = tail;
    acc_l1_full *= f_l1_full;
    (void)acc_l1_full;
  }
  return acc;
}

MatrixSymbol scalar_diag_symbol(const ScalarSeries& phi, int m) {
  const int degree = static_cast<int>(phi.coeffs.size()) - 1;
  MatrixFourier entries(m, m, 0, degree);
  for (int n = 0; n <= degree; ++n) {
    entries.set_block(
        n, phi.coeffs(n) * Eigen::MatrixXcd::Identity(m, m).eval());
  }
  return MatrixSymbol(std::move(entries), phi.tail_bound);
}

MatrixSymbol shift_symbol(const MatrixSymbol& u) {
  // S* contracts, so the discarded-part bound carries over.
  return MatrixSymbol(backshift(u.entries()), u.tail_bound());
}

std::vector<FourierVec> symbol_columns(const MatrixSymbol& u) {
  std::vector<FourierVec> cols;
  cols.reserve(u.dim());
  for (int i = 0; i < u.dim(); ++i) cols.push_back(u.entries().column(i));
  return cols;
}

double innerness_defect(const ScalarSeries& phi) {
  const int degree = static_cast<int>(phi.coeffs.size()) - 1;
  FourierVec f(1, 0, degree);
  for (int k = 0; k <= degree; ++k) f.set_coeff(0, k, phi.coeffs(k));
  GridSamples g = to_grid(f, default_grid_size(degree));
  double worst = 0.0;
  for (int t = 0; t < g.grid_size(); ++t) {
    worst = std::max(worst, std::abs(std::norm(g.values()(0, t)) - 1.0));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Symbol specification files

bool SymbolSpec::operator==(const SymbolSpec& other) const {
  if (m != other.m || kind != other.kind || truncation != other.truncation ||
      phi_degree != other.phi_degree || psi_degree != other.psi_degree ||
      zeros != other.zeros || phi_zeros != other.phi_zeros ||
      psi_zeros != other.psi_zeros || blocks.size() != other.blocks.size()) {
    return false;
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].first != other.blocks[k].first) return false;
    if (blocks[k].second != other.blocks[k].second) return false;
  }
  return true;
}

namespace {

using json = nlohmann::ordered_json;

std::vector<Complex> parse_points(const json& arr, const char* field) {
  std::vector<Complex> out;
  if (!arr.is_array()) throw SpecError(std::string(field) + ": expected array");
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2) {
      throw SpecError(std::string(field) + ": expected [re, im] pairs");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

json emit_points(const std::vector<Complex>& pts) {
  json arr = json::array();
  for (Complex p : pts) arr.push_back({p.real(), p.imag()});
  return arr;
}

const std::vector<std::string> kKinds = {
    "poly", "blaschke_matrix", "example-3.6A", "example-3.6B", "example-4.6"};

}  // namespace

SymbolSpec parse_symbol_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("symbol spec: JSON parse error at byte " +
                    std::to_string(e.byte) + ": " + e.what());
  }
  SymbolSpec spec;
  try {
    if (!j.contains("kind")) throw SpecError("symbol spec: missing kind");
    spec.kind = j.at("kind").get<std::string>();
    if (std::find(kKinds.begin(), kKinds.end(), spec.kind) == kKinds.end()) {
      throw SpecError("symbol spec: unknown kind '" + spec.kind + "'");
    }
    spec.m = j.value("m", 1);
    spec.truncation = j.value("truncation", 16);
    if (spec.m < 1) throw SpecError("symbol spec: m must be positive");
    if (spec.truncation < 1) {
      throw SpecError("symbol spec: truncation must be positive");
    }
    if (j.contains("blocks")) {
      for (const auto& b : j.at("blocks")) {
        const int n = b.at("n").get<int>();
        if (n < 0) throw SpecError("symbol spec: block index n < 0");
        const auto& rows = b.at("matrix");
        if (static_cast<int>(rows.size()) != spec.m) {
          throw SpecError("symbol spec: block matrix is not m x m");
        }
        Eigen::MatrixXcd mat(spec.m, spec.m);
        for (int r = 0; r < spec.m; ++r) {
          if (static_cast<int>(rows[r].size()) != spec.m) {
            throw SpecError("symbol spec: block matrix is not m x m");
          }
          for (int c = 0; c < spec.m; ++c) {
            const auto& e = rows[r][c];
            if (!e.is_array() || e.size() != 2) {
              throw SpecError("symbol spec: matrix entries must be [re, im]");
            }
            mat(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
          }
        }
        spec.blocks.emplace_back(n, std::move(mat));
      }
    }
    if (j.contains("zeros")) spec.zeros = parse_points(j.at("zeros"), "zeros");
    if (j.contains("phi_zeros")) {
      spec.phi_zeros = parse_points(j.at("phi_zeros"), "phi_zeros");
    }
    if (j.contains("psi_zeros")) {
      spec.psi_zeros = parse_points(j.at("psi_zeros"), "psi_zeros");
    }
    spec.phi_degree = j.value("phi_degree", -1);
    spec.psi_degree = j.value("psi_degree", -1);
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("symbol spec: ") + e.what());
  }
  return spec;
}

std::string emit_symbol_spec(const SymbolSpec& spec) {
  json j;
  j["m"] = spec.m;
  j["kind"] = spec.kind;
  j["truncation"] = spec.truncation;
  if (!spec.blocks.empty()) {
    json blocks = json::array();
    for (const auto& [n, mat] : spec.blocks) {
      json rows = json::array();
      for (int r = 0; r < mat.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < mat.cols(); ++c) {
          row.push_back({mat(r, c).real(), mat(r, c).imag()});
        }
        rows.push_back(row);
      }
      blocks.push_back({{"n", n}, {"matrix", rows}});
    }
    j["blocks"] = blocks;
  }
  if (!spec.zeros.empty()) j["zeros"] = emit_points(spec.zeros);
  if (!spec.phi_zeros.empty()) j["phi_zeros"] = emit_points(spec.phi_zeros);
  if (!spec.psi_zeros.empty()) j["psi_zeros"] = emit_points(spec.psi_zeros);
  if (spec.phi_degree >= 0) j["phi_degree"] = spec.phi_degree;
  if (spec.psi_degree >= 0) j["psi_degree"] = spec.psi_degree;
  return j.dump(2) + "\n";
}

namespace {

// phi as a scalar series: explicit monomial degree wins, then Blaschke zeros,
// then the fallback monomial degree.
ScalarSeries scalar_parameter(int degree, const std::vector<Complex>& zeros,
                              int fallback_degree, int truncation) {
  if (degree >= 0) {
    if (degree > truncation) {
      throw SpecError("symbol spec: monomial degree exceeds truncation");
    }
    ScalarSeries s;
    s.coeffs = Eigen::VectorXcd::Zero(truncation + 1);
    s.coeffs(degree) = Complex(1.0, 0.0);
    return s;
  }
  if (!zeros.empty()) return blaschke_scalar(zeros, truncation);
  ScalarSeries s;
  s.coeffs = Eigen::VectorXcd::Zero(truncation + 1);
  s.coeffs(fallback_degree) = Complex(1.0, 0.0);
  return s;
}

int series_degree(const ScalarSeries& s) {
  int d = 0;
  for (int k = 0; k < s.coeffs.size(); ++k) {
    if (std::abs(s.coeffs(k)) > 0.0) d = k;
  }
  return d;
}

MatrixSymbol two_by_two(const ScalarSeries& diag, const ScalarSeries& off,
                        double tail_bound) {
  const int degree = std::max(series_degree(diag), series_degree(off));
  MatrixFourier entries(2, 2, 0, degree);
  for (int n = 0; n <= degree; ++n) {
    Eigen::MatrixXcd blk(2, 2);
    const Complex d = n < diag.coeffs.size() ? diag.coeffs(n) : Complex(0, 0);
    const Complex o = n < off.coeffs.size() ? off.coeffs(n) : Complex(0, 0);
    blk << d, o, o, d;
    entries.set_block(n, blk);
  }
  return MatrixSymbol(std::move(entries), tail_bound);
}

}  // namespace

MatrixSymbol realize_symbol(const SymbolSpec& spec) {
  if (spec.kind == "poly") {
    return poly_symbol(spec.m, spec.blocks);
  }
  if (spec.kind == "blaschke_matrix") {
    return scalar_diag_symbol(blaschke_scalar(spec.zeros, spec.truncation),
                              spec.m);
  }
  if (spec.kind == "example-3.6A" || spec.kind == "example-3.6B") {
    if (spec.m != 2) throw SpecError("example-3.6 symbols require m = 2");
    const ScalarSeries phi =
        scalar_parameter(spec.phi_degree, spec.phi_zeros, 2, spec.truncation);
    const int degree = series_degree(phi);
    MatrixFourier entries(2, 2, 0, degree);
    for (int n = 0; n <= degree; ++n) {
      Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(2, 2);
      if (spec.kind == "example-3.6A") {
        blk(0, 0) = blk(1, 1) = phi.coeffs(n);
      } else {
        blk(0, 1) = blk(1, 0) = phi.coeffs(n);
      }
      entries.set_block(n, blk);
    }
    return MatrixSymbol(std::move(entries), phi.tail_bound);
  }
  if (spec.kind == "example-4.6") {
    if (spec.m != 2) throw SpecError("example-4.6 symbols require m = 2");
    const ScalarSeries phi =
        scalar_parameter(spec.phi_degree, spec.phi_zeros, 1, spec.truncation);
    const ScalarSeries psi =
        scalar_parameter(spec.psi_degree, spec.psi_zeros, 2, spec.truncation);
    ScalarSeries theta, gamma;
    const int n_coeffs = std::max(phi.coeffs.size(), psi.coeffs.size());
    theta.coeffs = Eigen::VectorXcd::Zero(n_coeffs);
    gamma.coeffs = Eigen::VectorXcd::Zero(n_coeffs);
    theta.coeffs.head(phi.coeffs.size()) += phi.coeffs;
    theta.coeffs.head(psi.coeffs.size()) += psi.coeffs;
    gamma.coeffs.head(phi.coeffs.size()) += phi.coeffs;
    gamma.coeffs.head(psi.coeffs.size()) -= psi.coeffs;
    // || [[dtheta,dgamma],[dgamma,dtheta]] || = 2 max(|dphi|, |dpsi|).
    const double tail = 2.0 * std::max(phi.tail_bound, psi.tail_bound);
    return two_by_two(theta, gamma, tail);
  }
  throw SpecError("symbol spec: unknown kind '" + spec.kind + "'");
}

}  // namespace schmidt
