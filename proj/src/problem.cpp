#include "fracstab/problem.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracstab/pencil.hpp"

namespace fracstab {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

// JSON numbers are rendered in their shortest round-trip decimal form, so
// 0.72 arrives as "0.72".
std::string decimal_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_number()) fail(where, "expected a decimal string or number");
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, j.get<double>());
  if (ec != std::errc()) fail(where, "unrepresentable number");
  return std::string(buf, ptr);
}

std::vector<std::int64_t> int_array(const json& j, const std::string& name) {
  if (!j.is_array()) fail(name, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], name + "[" + std::to_string(i + 1) + "]"));
  return out;
}

std::vector<double> real_array(const json& j, const std::string& name) {
  if (!j.is_array()) fail(name, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], name + "[" + std::to_string(i + 1) + "]"));
  return out;
}

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) fail("A", "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  Matrix A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_name = "A[" + std::to_string(i + 1) + "]";
    if (!j[i].is_array()) fail(row_name, "expected an array");
    if (j[i].size() != rows) {
      fail(row_name, "has " + std::to_string(j[i].size()) + " entries but A has " + std::to_string(rows) +
                         " rows (A must be square)");
    }
    for (std::size_t k = 0; k < rows; ++k) {
      const std::string where = row_name + "[" + std::to_string(k + 1) + "]";
      const json& e = j[i][k];
      Complex v;
      if (e.is_number()) {
        v = number(e, where);
      } else if (e.is_array() && e.size() == 2) {
        v = Complex(number(e[0], where + "[1]"), number(e[1], where + "[2]"));
      } else {
        fail(where, "expected a number or a [re, im] pair");
      }
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(where, "must be finite");
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v;
    }
  }
  return A;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed problem file: ") + e.what());
  }
  if (!root.is_object()) fail("problem", "expected a JSON object");
  static const char* known[] = {"alpha", "alpha_tilde", "r", "s", "A", "epsilon", "backend",
                                "denominator_cap", "tolerances", "simulate"};
  for (const auto& [key, value] : root.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) fail(key, "unknown field");
  }

  ProblemFile p;
  if (root.contains("denominator_cap")) {
    p.denominator_cap = integer(root["denominator_cap"], "denominator_cap");
    if (p.denominator_cap < 1) fail("denominator_cap", "must be positive");
  }

  const bool decimal = root.contains("alpha");
  const bool fractional = root.contains("alpha_tilde") || root.contains("r") || root.contains("s");
  if (decimal == fractional) {
    fail("orders", "give exactly one of \"alpha\" or {\"alpha_tilde\", \"r\", \"s\"}");
  }
  if (decimal) {
    const json& a = root["alpha"];
    if (!a.is_array()) fail("alpha", "expected an array");
    std::vector<std::string> entries;
    for (std::size_t i = 0; i < a.size(); ++i) entries.push_back(decimal_text(a[i], "alpha[" + std::to_string(i + 1) + "]"));
    p.orders = parse_decimal_orders(entries, p.denominator_cap);
  } else {
    for (const char* key : {"alpha_tilde", "r", "s"}) {
      if (!root.contains(key)) fail(key, "missing");
    }
    p.orders = validate_order_spec(number(root["alpha_tilde"], "alpha_tilde"), int_array(root["r"], "r"),
                                   int_array(root["s"], "s"));
  }

  if (!root.contains("A")) fail("A", "missing");
  p.A = parse_matrix(root["A"]);
  if (static_cast<std::size_t>(p.A.rows()) != p.orders.dim()) {
    fail("A", "is " + std::to_string(p.A.rows()) + "x" + std::to_string(p.A.cols()) + " but the orders have " +
                  std::to_string(p.orders.dim()) + " components");
  }

  if (root.contains("epsilon")) {
    p.epsilon = number(root["epsilon"], "epsilon");
    if (!(p.epsilon >= 0.0)) fail("epsilon", "must be non-negative");
  }
  if (root.contains("backend")) {
    if (!root["backend"].is_string()) fail("backend", "expected a string");
    p.backend = backend_from_string(root["backend"].get<std::string>());
  }
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    if (!t.is_object()) fail("tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      const std::string where = "tolerances." + key;
      const double v = number(value, where);
      if (!(v >= 0.0)) fail(where, "must be non-negative");
      if (key == "residual") {
        p.tolerances.residual = v;
      } else if (key == "chi") {
        p.tolerances.chi = v;
      } else if (key == "zero") {
        p.tolerances.zero = v;
      } else {
        fail(where, "unknown tolerance");
      }
    }
  }
  if (root.contains("simulate")) {
    const json& s = root["simulate"];
    if (!s.is_object()) fail("simulate", "expected an object");
    SimulateBlock b;
    if (s.contains("x0")) b.x0 = real_array(s["x0"], "simulate.x0");
    if (s.contains("T")) b.T = number(s["T"], "simulate.T");
    if (s.contains("h")) b.h = number(s["h"], "simulate.h");
    p.simulate = b;
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

CheckOutcome run_check(const ProblemFile& problem) {
  CheckOutcome out;
  out.orders = normalize_orders(problem.orders);
  const Pencil pencil = build_pencil(out.orders, problem.A);
  out.eigen = finite_eigenvalues(pencil, problem.backend, problem.tolerances.residual);
  VerdictOptions vo;
  vo.epsilon = problem.epsilon;
  vo.zero_tol = problem.tolerances.zero.value_or(-1.0);
  out.report = verdict(out.eigen.mu, problem.A, out.orders, vo);
  out.chi_tolerance = problem.tolerances.chi;
  for (const double r : out.report.chi_residuals) out.chi_residuals_ok = out.chi_residuals_ok && r <= out.chi_tolerance;
  return out;
}

OracleOutcome run_oracle(const ProblemFile& problem, std::optional<double> radius) {
  OracleOutcome out;
  const NormalizedOrders orders = normalize_orders(problem.orders);
  const ScalarPolynomial poly = interpolate_det_p(orders, problem.A, radius);
  out.leading_deviation = poly.leading_deviation;
  out.radius = poly.radius;
  const PolynomialRoots roots = polynomial_roots(poly);
  out.oracle_roots = roots.roots;
  out.root_residual = roots.max_residual;
  sort_eigenvalues(out.oracle_roots);
  const Pencil pencil = build_pencil(orders, problem.A);
  out.pencil_mu = finite_eigenvalues(pencil, problem.backend, problem.tolerances.residual).mu;
  out.distance = matched_distance(out.pencil_mu, out.oracle_roots);
  return out;
}

Trajectory run_simulation(const ProblemFile& problem, const SimulateBlock& block) {
  if (problem.A.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw InputError("simulate: the coefficient matrix must be real");
  }
  if (block.x0.empty()) throw InputError("simulate: no initial condition x0 given");
  const std::vector<double> alpha = problem.orders.alpha();
  return simulate(problem.A.real(), alpha, block.x0, block.T, block.h);
}

}  // namespace fracstab
