#include "matpoly/realpoly.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "matpoly/error.hpp"

namespace matpoly {

RealPolynomial RealPolynomial::constant(int num_vars, double c) {
  RealPolynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

RealPolynomial RealPolynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) {
    throw InvalidInput("variable index out of range");
  }
  RealPolynomial p(num_vars);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, 1.0);
  return p;
}

int RealPolynomial::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int v : e) d += v;
    best = std::max(best, d);
  }
  return best;
}

void RealPolynomial::add_term(const Exponents& exponents, double coeff) {
  if (static_cast<int>(exponents.size()) != num_vars_) {
    throw InvalidInput("exponent vector has the wrong number of variables");
  }
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void RealPolynomial::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

double RealPolynomial::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? 0.0 : it->second;
}

double RealPolynomial::evaluate(const RealVector& t) const {
  if (t.size() != num_vars_) {
    throw InvalidInput("evaluation point has the wrong number of variables");
  }
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int v = 0; v < num_vars_; ++v) {
      if (e[v] != 0) term *= std::pow(t(v), e[v]);
    }
    sum += term;
  }
  return sum;
}

RealPolynomial& RealPolynomial::operator+=(const RealPolynomial& other) {
  if (other.num_vars_ != num_vars_) throw InvalidInput("variable count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

RealPolynomial& RealPolynomial::operator-=(const RealPolynomial& other) {
  if (other.num_vars_ != num_vars_) throw InvalidInput("variable count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

RealPolynomial& RealPolynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw InvalidInput("variable count mismatch");
  RealPolynomial out(a.num_vars_);
  RealPolynomial::Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int v = 0; v < a.num_vars_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool RealPolynomial::approx_equal(const RealPolynomial& other, double tol) const {
  if (other.num_vars_ != num_vars_) return false;
  std::set<Exponents> keys;
  for (const auto& kv : terms_) keys.insert(kv.first);
  for (const auto& kv : other.terms_) keys.insert(kv.first);
  for (const auto& e : keys) {
    if (std::abs(coefficient(e) - other.coefficient(e)) > tol) return false;
  }
  return true;
}

std::string RealPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[64];
  for (const auto& [e, c] : terms_) {
    std::snprintf(buf, sizeof buf, "%+.6g", c);
    out += buf;
    for (int v = 0; v < num_vars_; ++v) {
      if (e[v] == 0) continue;
      out += "*t" + std::to_string(v);
      if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    out += ' ';
  }
  out.pop_back();
  return out;
}

}  // namespace matpoly
