#pragma once

// Shared test utilities: deterministic random inputs, the direct-convolution
// multiplication oracle, and the random symmetric polynomial symbol corpus.

#include <random>
#include <vector>

#include "schmidt/fourier.hpp"
#include "schmidt/symbols.hpp"

namespace schmidt::test {

inline Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Complex(u(rng), u(rng));
}

inline FourierVec random_fourier(std::mt19937_64& rng, int dim, int neg,
                                 int pos) {
  FourierVec f(dim, neg, pos);
  for (int c = 0; c < dim; ++c) {
    for (int j = -neg; j <= pos; ++j) f.set_coeff(c, j, random_complex(rng));
  }
  return f;
}

inline FourierVec random_analytic(std::mt19937_64& rng, int dim, int degree) {
  return random_fourier(rng, dim, 0, degree);
}

// Direct convolution oracle, independent of the grid path.
inline FourierVec conv_multiply(const FourierVec& a, const FourierVec& f) {
  const int neg = a.neg() + f.neg();
  const int pos = a.pos() + f.pos();
  FourierVec out(f.dim(), neg, pos);
  for (int c = 0; c < f.dim(); ++c) {
    for (int i = -a.neg(); i <= a.pos(); ++i) {
      for (int j = -f.neg(); j <= f.pos(); ++j) {
        out.set_coeff(c, i + j,
                      out.coeff(c, i + j) + a.coeff(0, i) * f.coeff(c, j));
      }
    }
  }
  return out;
}

inline FourierVec conv_multiply(const MatrixFourier& a, const FourierVec& f) {
  const int neg = a.neg() + f.neg();
  const int pos = a.pos() + f.pos();
  FourierVec out(a.rows(), neg, pos);
  for (int i = -a.neg(); i <= a.pos(); ++i) {
    for (int j = -f.neg(); j <= f.pos(); ++j) {
      out.set_coeff_block(
          i + j, out.coeff_block(i + j) + a.block(i) * f.coeff_block(j));
    }
  }
  return out;
}

// One deterministic random symmetric matrix polynomial symbol.
inline MatrixSymbol random_symmetric_symbol(std::uint64_t seed) {
  std::mt19937_64 rng(0x5eed0000ull + seed);
  std::uniform_int_distribution<int> pick_m(1, 3);
  std::uniform_int_distribution<int> pick_d(1, 4);
  const int m = pick_m(rng);
  const int d = pick_d(rng);
  std::vector<std::pair<int, Eigen::MatrixXcd>> blocks;
  for (int n = 0; n <= d; ++n) {
    Eigen::MatrixXcd blk(m, m);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) blk(r, c) = random_complex(rng);
    }
    blocks.emplace_back(n, ((blk + blk.transpose()) * 0.5).eval());
  }
  return poly_symbol(m, blocks);
}

inline std::vector<MatrixSymbol> symbol_corpus(int count) {
  std::vector<MatrixSymbol> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(random_symmetric_symbol(k));
  return out;
}

}  // namespace schmidt::test
