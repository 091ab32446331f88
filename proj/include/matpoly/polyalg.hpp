#pragma once

// Free matrix polynomials: formal sums of chains A_0 x_{i1} A_1 ... x_{id} A_d
// with n x n complex coefficients, in k noncommuting variables. For k = 1
// these are the tensor-algebra polynomials whose degree-d part lives in
// M_n^{(d+1) tensor}.
//
// Polynomials are stored as flat monomial lists. Algebra equality is decided
// by canonicalize(), which expands each chain over matrix units; map equality
// is decided by scalar_expand(). The two differ: some nonzero elements
// induce the zero map.
//
// Variable indices are 0-based in this API.

#include <cstddef>
#include <map>
#include <vector>

#include "matpoly/realpoly.hpp"
#include "matpoly/types.hpp"

namespace matpoly {

inline constexpr double kAlgebraTolerance = 1e-12;
inline constexpr std::size_t kDefaultCoefficientBudget = std::size_t{1} << 22;

struct Monomial {
  std::vector<ComplexMatrix> chain;  // d + 1 coefficients
  std::vector<int> word;             // d variable indices

  int degree() const { return static_cast<int>(word.size()); }
};

class FreeMatrixPoly {
 public:
  /// The zero polynomial.
  FreeMatrixPoly(int n, int k);
  /// Validates chain/word lengths, matrix shapes and variable indices.
  FreeMatrixPoly(int n, int k, std::vector<Monomial> monomials);

  static FreeMatrixPoly constant(const ComplexMatrix& A, int k = 1);
  static FreeMatrixPoly identity(int n, int k = 1);
  /// The bare variable x_index with identity coefficients.
  static FreeMatrixPoly variable(int n, int k, int index = 0);
  static FreeMatrixPoly monomial(std::vector<ComplexMatrix> chain,
                                 std::vector<int> word, int k = 1);

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  bool empty() const { return monomials_.empty(); }

  /// Largest word length in the monomial list; -inf for an empty list.
  Degree degree() const;
  /// Every monomial has the same word length (vacuously true when empty).
  bool is_homogeneous() const;

  FreeMatrixPoly scaled(Complex s) const;

 private:
  int n_;
  int k_;
  std::vector<Monomial> monomials_;
};

FreeMatrixPoly add(const FreeMatrixPoly& p, const FreeMatrixPoly& q);
FreeMatrixPoly subtract(const FreeMatrixPoly& p, const FreeMatrixPoly& q);
FreeMatrixPoly mul(const FreeMatrixPoly& p, const FreeMatrixPoly& q);
/// p^m for m >= 1; m = 0 throws InvalidInput.
FreeMatrixPoly pow(const FreeMatrixPoly& p, int m);
/// Reverses each chain and word, with A -> A* on the coefficients.
FreeMatrixPoly adjoint(const FreeMatrixPoly& p);

inline FreeMatrixPoly operator+(const FreeMatrixPoly& p, const FreeMatrixPoly& q) { return add(p, q); }
inline FreeMatrixPoly operator-(const FreeMatrixPoly& p, const FreeMatrixPoly& q) { return subtract(p, q); }
inline FreeMatrixPoly operator*(const FreeMatrixPoly& p, const FreeMatrixPoly& q) { return mul(p, q); }
inline FreeMatrixPoly operator*(Complex s, const FreeMatrixPoly& p) { return p.scaled(s); }

/// Dense coefficients per word over the matrix-unit basis. For a word of
/// length d the tensor has n^(2(d+1)) entries; position l contributes the
/// digit (i_l * n + j_l), with position 0 most significant.
struct CanonicalForm {
  int n = 0;
  int k = 0;
  std::map<std::vector<int>, std::vector<Complex>> components;

  double norm() const;
  bool is_zero(double tol = kAlgebraTolerance) const;
  /// Entrywise agreement within tol; absent words count as zero.
  bool equals(const CanonicalForm& other, double tol = kAlgebraTolerance) const;
};

/// Throws ResourceError when n^(2(d+1)) k^d exceeds the budget for a degree
/// present in p.
CanonicalForm canonicalize(const FreeMatrixPoly& p,
                           std::size_t budget = kDefaultCoefficientBudget);

bool algebra_equal(const FreeMatrixPoly& p, const FreeMatrixPoly& q,
                   double tol = kAlgebraTolerance);
bool is_self_adjoint(const FreeMatrixPoly& p, double tol = kAlgebraTolerance);

/// Sub-sum of monomials of word length exactly d (the zero polynomial when
/// there are none).
FreeMatrixPoly graded_component(const FreeMatrixPoly& p, int d);
FreeMatrixPoly leading_form(const FreeMatrixPoly& p);
/// Largest d whose canonical component is nonzero; -inf if p = 0 in the
/// algebra.
Degree effective_degree(const FreeMatrixPoly& p,
                        std::size_t budget = kDefaultCoefficientBudget);

ComplexMatrix evaluate(const FreeMatrixPoly& p, const MatrixTuple& Xs);
ComplexMatrix evaluate(const FreeMatrixPoly& p, const ComplexMatrix& X);

/// d/dh p(X_1, ..., X_var + h H, ..., X_k) at h = 0.
ComplexMatrix directional_derivative(const FreeMatrixPoly& p, const MatrixTuple& Xs,
                                     int var, const ComplexMatrix& H);

/// Hermitian-basis expansion of the induced map. Variable (i * n^2 + alpha)
/// is the alpha-th coordinate of X_i; output entry beta is the beta-th
/// coordinate of p(X). Throws InvalidInput for non-self-adjoint p.
std::vector<RealPolynomial> scalar_expand(const FreeMatrixPoly& p,
                                          std::size_t budget = kDefaultCoefficientBudget);

}  // namespace matpoly
