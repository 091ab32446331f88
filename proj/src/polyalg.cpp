#include "matpoly/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"

namespace matpoly {

namespace {

void require_compatible(const FreeMatrixPoly& p, const FreeMatrixPoly& q, const char* op) {
  if (p.n() != q.n() || p.k() != q.k()) {
    throw InvalidInput(std::string(op) + ": operands differ in matrix size or variable count (n=" +
                       std::to_string(p.n()) + ",k=" + std::to_string(p.k()) + " vs n=" +
                       std::to_string(q.n()) + ",k=" + std::to_string(q.k()) + ")");
  }
}

void require_arguments(const FreeMatrixPoly& p, const MatrixTuple& Xs) {
  if (static_cast<int>(Xs.size()) != p.k()) {
    throw InvalidInput("expected " + std::to_string(p.k()) + " matrix arguments, got " +
                       std::to_string(Xs.size()));
  }
  for (const auto& X : Xs) {
    if (X.rows() != p.n() || X.cols() != p.n()) {
      throw InvalidInput("argument matrix is not " + std::to_string(p.n()) + "x" +
                         std::to_string(p.n()));
    }
  }
}

std::set<int> degrees_present(const FreeMatrixPoly& p) {
  std::set<int> out;
  for (const auto& mono : p.monomials()) out.insert(mono.degree());
  return out;
}

void check_budget(const FreeMatrixPoly& p, std::size_t budget, const char* op) {
  const long double n2 = static_cast<long double>(p.n()) * p.n();
  for (int d : degrees_present(p)) {
    const long double size = std::pow(n2, d + 1) * std::pow(static_cast<long double>(p.k()), d);
    if (size > static_cast<long double>(budget)) {
      throw ResourceError(std::string(op) + ": degree " + std::to_string(d) + " needs " +
                          std::to_string(static_cast<double>(size)) +
                          " coefficients, budget is " + std::to_string(budget));
    }
  }
}

}  // namespace

FreeMatrixPoly::FreeMatrixPoly(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw InvalidInput("matrix size n must be positive");
  if (k < 1) throw InvalidInput("variable count k must be positive");
}

FreeMatrixPoly::FreeMatrixPoly(int n, int k, std::vector<Monomial> monomials)
    : FreeMatrixPoly(n, k) {
  for (std::size_t m = 0; m < monomials.size(); ++m) {
    const auto& mono = monomials[m];
    const std::string where = "monomial " + std::to_string(m);
    if (mono.chain.size() != mono.word.size() + 1) {
      throw InvalidInput(where + ": chain has " + std::to_string(mono.chain.size()) +
                         " matrices but the word has " + std::to_string(mono.word.size()) +
                         " letters (expected letters + 1)");
    }
    for (const auto& A : mono.chain) {
      if (A.rows() != n || A.cols() != n) {
        throw InvalidInput(where + ": coefficient is not " + std::to_string(n) + "x" +
                           std::to_string(n));
      }
    }
    for (int letter : mono.word) {
      if (letter < 0 || letter >= k) {
        throw InvalidInput(where + ": variable index " + std::to_string(letter) +
                           " outside 0.." + std::to_string(k - 1));
      }
    }
  }
  monomials_ = std::move(monomials);
}

FreeMatrixPoly FreeMatrixPoly::constant(const ComplexMatrix& A, int k) {
  return FreeMatrixPoly(static_cast<int>(A.rows()), k, {Monomial{{A}, {}}});
}

FreeMatrixPoly FreeMatrixPoly::identity(int n, int k) {
  return constant(ComplexMatrix::Identity(n, n), k);
}

FreeMatrixPoly FreeMatrixPoly::variable(int n, int k, int index) {
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  return FreeMatrixPoly(n, k, {Monomial{{I, I}, {index}}});
}

FreeMatrixPoly FreeMatrixPoly::monomial(std::vector<ComplexMatrix> chain,
                                        std::vector<int> word, int k) {
  if (chain.empty()) throw InvalidInput("monomial chain is empty");
  const auto n = static_cast<int>(chain.front().rows());
  return FreeMatrixPoly(n, k, {Monomial{std::move(chain), std::move(word)}});
}

Degree FreeMatrixPoly::degree() const {
  if (monomials_.empty()) return Degree::minus_infinity();
  int d = 0;
  for (const auto& mono : monomials_) d = std::max(d, mono.degree());
  return Degree::finite(d);
}

bool FreeMatrixPoly::is_homogeneous() const {
  return std::all_of(monomials_.begin(), monomials_.end(), [this](const Monomial& m) {
    return m.degree() == monomials_.front().degree();
  });
}

FreeMatrixPoly FreeMatrixPoly::scaled(Complex s) const {
  FreeMatrixPoly out = *this;
  for (auto& mono : out.monomials_) mono.chain.front() *= s;
  return out;
}

FreeMatrixPoly add(const FreeMatrixPoly& p, const FreeMatrixPoly& q) {
  require_compatible(p, q, "add");
  std::vector<Monomial> monos = p.monomials();
  monos.insert(monos.end(), q.monomials().begin(), q.monomials().end());
  return FreeMatrixPoly(p.n(), p.k(), std::move(monos));
}

FreeMatrixPoly subtract(const FreeMatrixPoly& p, const FreeMatrixPoly& q) {
  require_compatible(p, q, "subtract");
  return add(p, q.scaled(-1.0));
}

FreeMatrixPoly mul(const FreeMatrixPoly& p, const FreeMatrixPoly& q) {
  require_compatible(p, q, "mul");
  std::vector<Monomial> monos;
  monos.reserve(p.monomials().size() * q.monomials().size());
  for (const auto& a : p.monomials()) {
    for (const auto& b : q.monomials()) {
      Monomial m;
      m.chain.reserve(a.chain.size() + b.chain.size() - 1);
      m.chain.insert(m.chain.end(), a.chain.begin(), a.chain.end() - 1);
      m.chain.push_back(a.chain.back() * b.chain.front());
      m.chain.insert(m.chain.end(), b.chain.begin() + 1, b.chain.end());
      m.word = a.word;
      m.word.insert(m.word.end(), b.word.begin(), b.word.end());
      monos.push_back(std::move(m));
    }
  }
  return FreeMatrixPoly(p.n(), p.k(), std::move(monos));
}

FreeMatrixPoly pow(const FreeMatrixPoly& p, int m) {
  if (m < 1) {
    throw InvalidInput("pow: exponent must be at least 1, got " + std::to_string(m));
  }
  FreeMatrixPoly out = p;
  for (int i = 1; i < m; ++i) out = mul(out, p);
  return out;
}

FreeMatrixPoly adjoint(const FreeMatrixPoly& p) {
  std::vector<Monomial> monos;
  monos.reserve(p.monomials().size());
  for (const auto& mono : p.monomials()) {
    Monomial m;
    m.chain.reserve(mono.chain.size());
    for (auto it = mono.chain.rbegin(); it != mono.chain.rend(); ++it) {
      m.chain.push_back(it->adjoint());
    }
    m.word.assign(mono.word.rbegin(), mono.word.rend());
    monos.push_back(std::move(m));
  }
  return FreeMatrixPoly(p.n(), p.k(), std::move(monos));
}

double CanonicalForm::norm() const {
  double sum = 0.0;
  for (const auto& [word, coeffs] : components) {
    for (const auto& c : coeffs) sum += std::norm(c);
  }
  return std::sqrt(sum);
}

bool CanonicalForm::is_zero(double tol) const {
  for (const auto& [word, coeffs] : components) {
    for (const auto& c : coeffs) {
      if (std::abs(c) > tol) return false;
    }
  }
  return true;
}

bool CanonicalForm::equals(const CanonicalForm& other, double tol) const {
  if (n != other.n || k != other.k) return false;
  auto covered = [tol](const CanonicalForm& a, const CanonicalForm& b) {
    for (const auto& [word, coeffs] : a.components) {
      auto it = b.components.find(word);
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Complex other_c = it == b.components.end() ? Complex{} : it->second[i];
        if (std::abs(coeffs[i] - other_c) > tol) return false;
      }
    }
    return true;
  };
  return covered(*this, other) && covered(other, *this);
}

CanonicalForm canonicalize(const FreeMatrixPoly& p, std::size_t budget) {
  check_budget(p, budget, "canonicalize");
  const int n = p.n();
  CanonicalForm form{n, p.k(), {}};
  std::vector<Complex> tensor;
  std::vector<Complex> next;
  for (const auto& mono : p.monomials()) {
    tensor.assign(1, Complex(1.0));
    for (const auto& A : mono.chain) {
      next.resize(tensor.size() * n * n);
      std::size_t idx = 0;
      for (const auto& t : tensor) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) next[idx++] = t * A(i, j);
        }
      }
      tensor.swap(next);
    }
    auto [it, inserted] = form.components.try_emplace(mono.word, tensor.size(), Complex{});
    auto& acc = it->second;
    for (std::size_t i = 0; i < tensor.size(); ++i) acc[i] += tensor[i];
  }
  return form;
}

bool algebra_equal(const FreeMatrixPoly& p, const FreeMatrixPoly& q, double tol) {
  require_compatible(p, q, "algebra_equal");
  return canonicalize(subtract(p, q)).is_zero(tol);
}

bool is_self_adjoint(const FreeMatrixPoly& p, double tol) {
  return algebra_equal(p, adjoint(p), tol);
}

FreeMatrixPoly graded_component(const FreeMatrixPoly& p, int d) {
  std::vector<Monomial> monos;
  for (const auto& mono : p.monomials()) {
    if (mono.degree() == d) monos.push_back(mono);
  }
  return FreeMatrixPoly(p.n(), p.k(), std::move(monos));
}

FreeMatrixPoly leading_form(const FreeMatrixPoly& p) {
  const Degree d = p.degree();
  if (d.is_minus_infinity()) return p;
  return graded_component(p, d.value());
}

Degree effective_degree(const FreeMatrixPoly& p, std::size_t budget) {
  const CanonicalForm form = canonicalize(p, budget);
  Degree best = Degree::minus_infinity();
  for (const auto& [word, coeffs] : form.components) {
    const bool nonzero = std::any_of(coeffs.begin(), coeffs.end(), [](const Complex& c) {
      return std::abs(c) > kAlgebraTolerance;
    });
    const Degree d = Degree::finite(static_cast<int>(word.size()));
    if (nonzero && d > best) best = d;
  }
  return best;
}

ComplexMatrix evaluate(const FreeMatrixPoly& p, const MatrixTuple& Xs) {
  require_arguments(p, Xs);
  ComplexMatrix sum = ComplexMatrix::Zero(p.n(), p.n());
  for (const auto& mono : p.monomials()) {
    ComplexMatrix acc = mono.chain.front();
    for (std::size_t l = 0; l < mono.word.size(); ++l) {
      acc = (acc * Xs[mono.word[l]] * mono.chain[l + 1]).eval();
    }
    sum += acc;
  }
  return sum;
}

ComplexMatrix evaluate(const FreeMatrixPoly& p, const ComplexMatrix& X) {
  return evaluate(p, MatrixTuple{X});
}

ComplexMatrix directional_derivative(const FreeMatrixPoly& p, const MatrixTuple& Xs, int var,
                                     const ComplexMatrix& H) {
  require_arguments(p, Xs);
  if (var < 0 || var >= p.k()) {
    throw InvalidInput("derivative variable index out of range");
  }
  if (H.rows() != p.n() || H.cols() != p.n()) {
    throw InvalidInput("derivative direction has the wrong shape");
  }
  const int n = p.n();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  std::vector<ComplexMatrix> prefix;
  std::vector<ComplexMatrix> suffix;
  for (const auto& mono : p.monomials()) {
    const std::size_t d = mono.word.size();
    if (std::find(mono.word.begin(), mono.word.end(), var) == mono.word.end()) continue;
    // prefix[l] = A_0 X A_1 ... A_l, suffix[l] = A_l X ... A_d
    prefix.resize(d + 1);
    suffix.resize(d + 1);
    prefix[0] = mono.chain[0];
    for (std::size_t l = 0; l < d; ++l) {
      prefix[l + 1] = prefix[l] * Xs[mono.word[l]] * mono.chain[l + 1];
    }
    suffix[d] = mono.chain[d];
    for (std::size_t l = d; l-- > 0;) {
      suffix[l] = mono.chain[l] * Xs[mono.word[l]] * suffix[l + 1];
    }
    for (std::size_t l = 0; l < d; ++l) {
      if (mono.word[l] == var) sum += prefix[l] * H * suffix[l + 1];
    }
  }
  return sum;
}

std::vector<RealPolynomial> scalar_expand(const FreeMatrixPoly& p, std::size_t budget) {
  check_budget(p, budget, "scalar_expand");
  if (!is_self_adjoint(p)) {
    throw InvalidInput("scalar_expand requires a self-adjoint polynomial");
  }
  const int n = p.n();
  const int m = hermitian_dimension(n);
  const int num_vars = p.k() * m;

  std::vector<ComplexMatrix> basis;
  std::vector<ComplexMatrix> basis_adj;
  for (int a = 0; a < m; ++a) {
    basis.push_back(hermitian_basis_element(n, a));
    basis_adj.push_back(basis.back().adjoint());
  }

  // exponent vector -> complex coefficient per output coordinate
  std::map<RealPolynomial::Exponents, std::vector<Complex>> acc;
  RealPolynomial::Exponents exps(num_vars, 0);

  for (const auto& mono : p.monomials()) {
    const std::size_t d = mono.word.size();
    std::vector<ComplexMatrix> partial(d + 1);
    partial[0] = mono.chain[0];
    // Depth-first over the basis choice at every letter of the word.
    auto recurse = [&](auto&& self, std::size_t level) -> void {
      if (level == d) {
        auto [it, inserted] = acc.try_emplace(exps, m, Complex{});
        for (int b = 0; b < m; ++b) {
          it->second[b] += (basis_adj[b] * partial[d]).trace();
        }
        return;
      }
      const int var_base = mono.word[level] * m;
      for (int a = 0; a < m; ++a) {
        partial[level + 1] = partial[level] * basis[a] * mono.chain[level + 1];
        ++exps[var_base + a];
        self(self, level + 1);
        --exps[var_base + a];
      }
    };
    recurse(recurse, 0);
  }

  std::vector<RealPolynomial> out(m, RealPolynomial(num_vars));
  for (const auto& [e, coeffs] : acc) {
    for (int b = 0; b < m; ++b) {
      // Self-adjointness makes every summed coefficient real; the imaginary
      // parts cancel up to rounding.
      if (std::abs(coeffs[b].imag()) > 1e-9 * std::max(1.0, std::abs(coeffs[b]))) {
        throw InvalidInput("scalar_expand: non-real coefficient in the expansion");
      }
      if (std::abs(coeffs[b].real()) > kAlgebraTolerance) out[b].add_term(e, coeffs[b].real());
    }
  }
  return out;
}

}  // namespace matpoly
