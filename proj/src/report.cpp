#include "fracstab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace fracstab {

namespace {

using ojson = nlohmann::ordered_json;

ojson pair(Complex z) { return ojson::array({z.real(), z.imag()}); }

ojson index_list(const std::vector<std::size_t>& v) {
  ojson out = ojson::array();
  for (const std::size_t i : v) out.push_back(i);
  return out;
}

template <typename... Args>
std::string format(const char* fmt, Args... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// Indices of the eigenvalues that produced the reported zeros.
std::vector<std::size_t> zero_sources(const StabilityReport& r) {
  std::vector<std::size_t> src;
  const double wedge = std::numbers::pi * r.orders.ats();
  const double zero_tol = r.classification.zero_tolerance;
  for (std::size_t i = 0; i < r.mu.size(); ++i) {
    if (std::abs(r.mu[i]) <= zero_tol || std::abs(principal_arg(r.mu[i])) <= wedge) src.push_back(i);
  }
  return src;
}

ojson zeros_array(const CheckOutcome& o) {
  const StabilityReport& r = o.report;
  const std::vector<std::size_t> src = zero_sources(r);
  ojson zeros = ojson::array();
  for (std::size_t i = 0; i < r.cf_zeros.size(); ++i) {
    ojson z;
    z["lambda"] = pair(r.cf_zeros[i]);
    if (i < src.size()) z["mu"] = pair(r.mu[src[i]]);
    z["chi_residual"] = r.chi_residuals[i];
    zeros.push_back(z);
  }
  return zeros;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string render_check_json(const CheckOutcome& o) {
  const StabilityReport& r = o.report;
  const NormalizedOrders& n = o.orders;
  ojson j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};

  ojson orders;
  orders["alpha_tilde"] = n.alpha_tilde;
  orders["sigma"] = n.sigma;
  orders["q"] = n.q;
  orders["N"] = n.N;
  orders["sigma_d"] = n.sigma * static_cast<std::int64_t>(n.dim());
  orders["alpha"] = n.alpha();
  j["orders"] = orders;

  ojson eig;
  eig["backend"] = std::string(to_string(o.eigen.backend));
  eig["count"] = o.eigen.mu.size();
  eig["shift"] = pair(o.eigen.shift);
  eig["iterations"] = o.eigen.iterations;
  double worst = 0.0;
  for (const double x : o.eigen.residuals) worst = std::max(worst, x);
  eig["max_residual"] = worst;
  ojson mu = ojson::array();
  for (const Complex m : r.mu) mu.push_back(pair(m));
  eig["mu"] = mu;
  eig["residuals"] = o.eigen.residuals;
  j["eigenvalues"] = eig;

  const Classification& c = r.classification;
  ojson cls;
  cls["zero_tolerance"] = c.zero_tolerance;
  cls["counts"] = {{"cat2", c.cat2.size()},
                   {"cat3", c.cat3.size()},
                   {"cat4a", c.cat4a.size()},
                   {"cat4b", c.cat4b.size()}};
  cls["unstable_side"] = c.cat4a.size();
  cls["stable_side"] = c.cat4b.size();
  cls["cat2"] = index_list(c.cat2);
  cls["cat4a"] = index_list(c.cat4a);
  cls["cat4b"] = index_list(c.cat4b);
  j["classification"] = cls;

  j["zeros"] = zeros_array(o);
  j["boundary_duplicates"] = r.boundary_duplicates;
  j["chi_tolerance"] = o.chi_tolerance;
  j["chi_residuals_ok"] = o.chi_residuals_ok;
  j["a_singular"] = r.a_singular;
  j["epsilon"] = r.epsilon;
  j["min_arg_mu"] = r.min_arg_mu;
  j["min_arg_mu_over_pi"] = r.min_arg_mu / std::numbers::pi;
  j["stability_threshold"] = (std::numbers::pi / 2.0 + r.epsilon) * n.ats();
  j["stable"] = r.stable;
  return j.dump(2) + "\n";
}

std::string render_check_text(const CheckOutcome& o) {
  const StabilityReport& r = o.report;
  const NormalizedOrders& n = o.orders;
  const Classification& c = r.classification;
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-11s %6s %8s %6s %7s %9s %9s %9s  %s\n", "alpha_tilde", "sigma",
                "sigma*d", "N", "cat.2", "cat.3", "cat.4(a)", "cat.4(b)", "stable");
  out << line;
  std::snprintf(line, sizeof line, "%-11.6g %6lld %8lld %6lld %7zu %9zu %9zu %9zu  %s\n", n.alpha_tilde,
                static_cast<long long>(n.sigma), static_cast<long long>(n.sigma * static_cast<std::int64_t>(n.dim())),
                static_cast<long long>(n.N), c.cat2.size(), c.cat3.size(), c.cat4a.size(), c.cat4b.size(),
                yes_no(r.stable).c_str());
  out << line;
  out << format("min |arg mu| = %.6f pi, threshold %.6f pi\n", r.min_arg_mu / std::numbers::pi,
                (0.5 + r.epsilon / std::numbers::pi) * n.ats());
  if (r.a_singular) out << "A is singular: chi(0) = 0\n";
  out << "zeros of chi:\n";
  for (std::size_t i = 0; i < r.cf_zeros.size(); ++i) {
    out << format("  %.4f %+.4fi", r.cf_zeros[i].real(), r.cf_zeros[i].imag());
    out << format("   |chi| = %.2e\n", r.chi_residuals[i]);
  }
  if (r.boundary_duplicates > 0) {
    out << r.boundary_duplicates << " zero(s) duplicated from conjugate boundary eigenvalues\n";
  }
  return out.str();
}

std::string render_zeros_json(const CheckOutcome& o) {
  ojson j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["zeros"] = zeros_array(o);
  j["boundary_duplicates"] = o.report.boundary_duplicates;
  j["stable"] = o.report.stable;
  return j.dump(2) + "\n";
}

std::string render_zeros_text(const CheckOutcome& o) {
  std::ostringstream out;
  for (const Complex z : o.report.cf_zeros) out << format("%.4f %+.4fi\n", z.real(), z.imag());
  if (o.report.boundary_duplicates > 0) {
    out << "# " << o.report.boundary_duplicates << " duplicate(s) from conjugate boundary eigenvalues\n";
  }
  return out.str();
}

std::string render_oracle_json(const OracleOutcome& o, double tolerance) {
  ojson j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["count"] = o.pencil_mu.size();
  j["radius"] = o.radius;
  j["leading_deviation"] = o.leading_deviation;
  j["root_residual"] = o.root_residual;
  j["matched_distance"] = o.distance;
  j["tolerance"] = tolerance;
  j["within_tolerance"] = o.distance <= tolerance;
  return j.dump(2) + "\n";
}

std::string render_oracle_text(const OracleOutcome& o, double tolerance) {
  std::ostringstream out;
  out << "eigenvalues:        " << o.pencil_mu.size() << "\n";
  out << format("radius:             %.6g\n", o.radius);
  out << format("leading deviation:  %.3e\n", o.leading_deviation);
  out << format("matched distance:   %.3e (tolerance %.1e)\n", o.distance, tolerance);
  return out.str();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t";
  for (Eigen::Index k = 0; k < traj.x.cols(); ++k) out << ",x" << (k + 1);
  out << "\n";
  char buf[64];
  auto put = [&](double v) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
  };
  for (std::size_t n = 0; n < traj.t.size(); ++n) {
    put(traj.t[n]);
    for (Eigen::Index k = 0; k < traj.x.cols(); ++k) {
      out << ',';
      put(traj.x(static_cast<Eigen::Index>(n), k));
    }
    out << "\n";
  }
}

}  // namespace fracstab
