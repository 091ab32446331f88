#include "matpoly/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "matpoly/error.hpp"
#include "matpoly/hermspace.hpp"

namespace matpoly {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

int inline_depth(const Json& v) {
  if (v.is_object()) return 1 << 20;
  if (!v.is_array()) return 0;
  int depth = 0;
  for (const auto& e : v) depth = std::max(depth, inline_depth(e));
  return depth + 1;
}

void write_value(std::string& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        write_value(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Scalars and short nested arrays (a matrix row of [re, im] pairs) stay
      // on one line.
      if (inline_depth(v) <= 2) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          write_value(out, v[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write_value(out, v[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(origin + ": malformed JSON: " + e.what());
  }
}

const Json& require_field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw InvalidInput(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput(path + "." + key + ": missing field");
  return *it;
}

int require_positive_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InvalidInput(path + ": expected a positive integer");
  }
  return v.get<int>();
}

Json tuple_to_json(const MatrixTuple& Xs) {
  Json out = Json::array();
  for (const auto& X : Xs) out.push_back(matrix_to_json(X));
  return out;
}

}  // namespace

std::string serialize(const Json& value) {
  std::string out;
  write_value(out, value, 0);
  out += "\n";
  return out;
}

Json matrix_to_json(const ComplexMatrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      row.push_back(Json::array({M(i, j).real(), M(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& value, int n, const std::string& path) {
  if (!value.is_array() || static_cast<int>(value.size()) != n) {
    throw InvalidInput(path + ": expected " + std::to_string(n) + " rows");
  }
  ComplexMatrix M(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = value[i];
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw InvalidInput(row_path + ": expected " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      const Json& entry = row[j];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw InvalidInput(row_path + "[" + std::to_string(j) + "]: expected [re, im]");
      }
      M(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return M;
}

Json poly_to_json(const FreeMatrixPoly& p) {
  Json out;
  out["n"] = p.n();
  out["k"] = p.k();
  Json monos = Json::array();
  for (const auto& mono : p.monomials()) {
    Json m;
    Json word = Json::array();
    for (int letter : mono.word) word.push_back(letter + 1);
    m["word"] = std::move(word);
    m["chain"] = tuple_to_json(mono.chain);
    monos.push_back(std::move(m));
  }
  out["monomials"] = std::move(monos);
  return out;
}

FreeMatrixPoly poly_from_json(const Json& value) {
  const int n = require_positive_int(require_field(value, "n", "$"), "$.n");
  const int k = require_positive_int(require_field(value, "k", "$"), "$.k");
  const Json& monos = require_field(value, "monomials", "$");
  if (!monos.is_array()) throw InvalidInput("$.monomials: expected an array");
  std::vector<Monomial> out;
  for (std::size_t m = 0; m < monos.size(); ++m) {
    const std::string path = "$.monomials[" + std::to_string(m) + "]";
    const Json& word = require_field(monos[m], "word", path);
    const Json& chain = require_field(monos[m], "chain", path);
    if (!word.is_array()) throw InvalidInput(path + ".word: expected an array");
    if (!chain.is_array()) throw InvalidInput(path + ".chain: expected an array");
    if (chain.size() != word.size() + 1) {
      throw InvalidInput(path + ": chain has " + std::to_string(chain.size()) +
                         " matrices, word has " + std::to_string(word.size()) +
                         " letters (expected letters + 1)");
    }
    Monomial mono;
    for (std::size_t l = 0; l < word.size(); ++l) {
      const Json& letter = word[l];
      if (!letter.is_number_integer() || letter.get<long long>() < 1 ||
          letter.get<long long>() > k) {
        throw InvalidInput(path + ".word[" + std::to_string(l) + "]: expected an integer in 1.." +
                           std::to_string(k));
      }
      mono.word.push_back(letter.get<int>() - 1);
    }
    for (std::size_t l = 0; l < chain.size(); ++l) {
      mono.chain.push_back(
          matrix_from_json(chain[l], n, path + ".chain[" + std::to_string(l) + "]"));
    }
    out.push_back(std::move(mono));
  }
  return FreeMatrixPoly(n, k, std::move(out));
}

FreeMatrixPoly parse_poly_text(const std::string& text) {
  return poly_from_json(parse_text(text, "<poly>"));
}

FreeMatrixPoly parse_poly_file(const std::string& path) {
  try {
    return poly_from_json(parse_text(read_file(path), path));
  } catch (const InvalidInput& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InvalidInput(path + ": " + what);
  }
}

Json point_to_json(const MatrixTuple& Xs) {
  Json out;
  out["n"] = Xs.empty() ? 0 : static_cast<int>(Xs.front().rows());
  out["Xs"] = tuple_to_json(Xs);
  return out;
}

MatrixTuple point_from_json(const Json& value) {
  const int n = require_positive_int(require_field(value, "n", "$"), "$.n");
  const Json& xs = require_field(value, "Xs", "$");
  if (!xs.is_array() || xs.empty()) throw InvalidInput("$.Xs: expected a nonempty array");
  MatrixTuple out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::string path = "$.Xs[" + std::to_string(i) + "]";
    ComplexMatrix X = matrix_from_json(xs[i], n, path);
    if (!is_hermitian(X)) throw InvalidInput(path + ": matrix is not Hermitian within 1e-10");
    out.push_back(std::move(X));
  }
  return out;
}

MatrixTuple parse_point_file(const std::string& path) {
  try {
    return point_from_json(parse_text(read_file(path), path));
  } catch (const InvalidInput& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InvalidInput(path + ": " + what);
  }
}

Json degree_to_json(const Degree& d) {
  if (d.is_minus_infinity()) return "-inf";
  return d.value();
}

Json to_json(const DegreeReport& report) {
  Json out;
  out["degree_estimate"] = report.degree_estimate;
  out["mod2"] = report.mod2;
  out["agreement"] = report.agreement;
  out["target"] = matrix_to_json(report.target);
  Json pre = Json::array();
  for (const auto& p : report.preimages) {
    Json item;
    item["point"] = matrix_to_json(p.point);
    item["sign"] = p.sign;
    item["condition"] = p.condition;
    pre.push_back(std::move(item));
  }
  out["preimage_count"] = report.preimages.size();
  out["preimages"] = std::move(pre);
  out["starts_used"] = report.starts_used;
  out["seeds"] = report.seeds;
  out["target_attempts"] = report.attempts;
  Json check;
  check["seed"] = report.check_run.seed;
  check["estimate"] = report.check_run.estimate;
  check["preimage_count"] = report.check_run.preimages.size();
  check["target"] = matrix_to_json(report.check_run.target);
  check["target_attempts"] = report.check_run.attempts;
  out["check_run"] = std::move(check);
  if (report.screened) out["screen_verdict"] = to_string(report.screen_verdict);
  return out;
}

Json to_json(const NondegReport& report) {
  Json out;
  out["verdict"] = to_string(report.verdict);
  out["min_value"] = report.min_value;
  out["normalized_min"] = report.normalized_min;
  out["minimizer"] = tuple_to_json(report.minimizer);
  out["powers"] = report.powers;
  out["starts_used"] = report.starts_used;
  out["seed"] = report.seed;
  return out;
}

Json to_json(const LeadingScreen& screen) {
  Json out;
  out["verdict"] = to_string(screen.verdict);
  out["degrees"] = screen.degrees;
  out["powers"] = screen.powers;
  out["normalized_min"] = screen.normalized_min;
  out["existence_guaranteed"] = screen.existence_guaranteed;
  out["note"] = screen.note;
  return out;
}

Json to_json(const SolveReport& report) {
  Json out;
  out["status"] = report.status == SolveStatus::kSolved ? "solved" : "no-solution-found";
  out["method"] = report.method;
  Json sols = Json::array();
  for (std::size_t i = 0; i < report.solutions.size(); ++i) {
    Json item;
    item["Xs"] = tuple_to_json(report.solutions[i]);
    item["residuals"] = report.residuals[i];
    sols.push_back(std::move(item));
  }
  out["solutions"] = std::move(sols);
  out["starts_tried"] = report.starts_tried;
  out["screen"] = to_json(report.screen);
  Json paths = Json::array();
  for (const auto& path : report.paths) {
    Json item;
    item["start"] = path.start;
    item["reached"] = path.reached;
    item["steps"] = path.steps;
    item["parameters"] = path.parameters;
    item["failure"] = path.failure;
    paths.push_back(std::move(item));
  }
  out["paths"] = std::move(paths);
  out["failures"] = report.failures;
  return out;
}

}  // namespace matpoly
