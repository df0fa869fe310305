#include "fracstab/orders.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>

namespace fracstab {

namespace checked {

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw InputError("integer overflow in order arithmetic (" +
                     std::to_string(a) + " * " + std::to_string(b) + ")");
  }
  return out;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw InputError("integer overflow in order arithmetic (" +
                     std::to_string(a) + " + " + std::to_string(b) + ")");
  }
  return out;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  return mul(a / std::gcd(a, b), b);
}

}  // namespace checked

namespace {

std::vector<double> scaled(double alpha_tilde, const std::vector<std::int64_t>& num,
                           const std::vector<std::int64_t>& den) {
  std::vector<double> out(num.size());
  for (std::size_t k = 0; k < num.size(); ++k) {
    out[k] = alpha_tilde * static_cast<double>(num[k]) / static_cast<double>(den[k]);
  }
  return out;
}

// Exact decimal: value = mantissa / 10^scale.
struct Decimal {
  std::int64_t mantissa = 0;
  int scale = 0;
};

std::int64_t pow10(int e) {
  std::int64_t p = 1;
  for (int i = 0; i < e; ++i) p = checked::mul(p, 10);
  return p;
}

Decimal parse_decimal(const std::string& text, std::size_t position) {
  auto fail = [&](const std::string& why) {
    return InputError("alpha[" + std::to_string(position) + "] = \"" + text +
                      "\": " + why);
  };
  std::size_t i = 0;
  if (i < text.size() && text[i] == '+') ++i;
  Decimal dec;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      try {
        dec.mantissa = checked::add(checked::mul(dec.mantissa, 10), c - '0');
      } catch (const InputError&) {
        throw fail("too many digits");
      }
      if (seen_point) ++dec.scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw fail("not a decimal number");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    int exponent = 0;
    const char* first = text.data() + i + 1;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) throw fail("malformed exponent");
    if (exponent > 0) {
      try {
        dec.mantissa = checked::mul(dec.mantissa, pow10(exponent));
      } catch (const InputError&) {
        throw fail("exponent out of range");
      }
    } else {
      dec.scale -= exponent;
    }
    i = text.size();
  }
  if (i != text.size()) throw fail("unexpected character");
  if (dec.scale > 18) throw fail("more than 18 decimal places");
  return dec;
}

}  // namespace

std::vector<double> OrderSpec::alpha() const { return scaled(alpha_tilde, r, s); }

std::vector<double> NormalizedOrders::alpha() const {
  return scaled(alpha_tilde, q, std::vector<std::int64_t>(q.size(), sigma));
}

OrderSpec validate_order_spec(double alpha_tilde, std::span<const std::int64_t> r,
                              std::span<const std::int64_t> s) {
  if (!(alpha_tilde > 0.0 && alpha_tilde <= 1.0)) {
    throw InputError("alpha_tilde must lie in (0, 1], got " + std::to_string(alpha_tilde));
  }
  if (r.size() != s.size()) {
    throw InputError("dimension mismatch: r has " + std::to_string(r.size()) +
                     " entries, s has " + std::to_string(s.size()));
  }
  if (r.size() < 2) throw InputError("at least two components are required");

  OrderSpec spec;
  spec.alpha_tilde = alpha_tilde;
  spec.r.resize(r.size());
  spec.s.resize(s.size());
  bool has_one = false;
  bool has_below_one = false;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] <= 0 || s[k] <= 0) {
      throw InputError("r and s must be positive (component " + std::to_string(k + 1) + ")");
    }
    if (r[k] > s[k]) {
      throw InputError("r_" + std::to_string(k + 1) + " = " + std::to_string(r[k]) +
                       " exceeds s_" + std::to_string(k + 1) + " = " + std::to_string(s[k]));
    }
    const std::int64_t g = std::gcd(r[k], s[k]);
    spec.r[k] = r[k] / g;
    spec.s[k] = s[k] / g;
    if (spec.r[k] == spec.s[k]) {
      has_one = true;
    } else {
      has_below_one = true;
    }
  }
  if (!has_below_one) {
    throw InputError("commensurate orders: all ratios r_k/s_k are equal to 1");
  }
  if (!has_one) throw InputError("max_k r_k/s_k must equal 1");
  return spec;
}

OrderSpec parse_decimal_orders(std::span<const std::string> alpha,
                               std::int64_t denominator_cap) {
  if (alpha.empty()) throw InputError("empty order vector");

  std::vector<Decimal> decs;
  decs.reserve(alpha.size());
  int scale = 0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    decs.push_back(parse_decimal(alpha[k], k + 1));
    scale = std::max(scale, decs.back().scale);
  }
  // Bring everything onto the common scale 10^scale.
  std::vector<std::int64_t> num(decs.size());
  for (std::size_t k = 0; k < decs.size(); ++k) {
    num[k] = checked::mul(decs[k].mantissa, pow10(scale - decs[k].scale));
  }
  const std::int64_t one = pow10(scale);
  std::size_t kmax = 0;
  for (std::size_t k = 0; k < num.size(); ++k) {
    if (num[k] <= 0 || num[k] > one) {
      throw InputError("alpha[" + std::to_string(k + 1) + "] = " + alpha[k] +
                       " lies outside (0, 1]");
    }
    if (num[k] > num[kmax]) kmax = k;
  }

  std::vector<std::int64_t> r(num.size()), s(num.size());
  for (std::size_t k = 0; k < num.size(); ++k) {
    const std::int64_t g = std::gcd(num[k], num[kmax]);
    r[k] = num[k] / g;
    s[k] = num[kmax] / g;
    if (s[k] > denominator_cap) {
      throw InputError("ratio alpha_" + std::to_string(k + 1) + "/alpha_tilde = " +
                       std::to_string(r[k]) + "/" + std::to_string(s[k]) +
                       " has a denominator above the cap " + std::to_string(denominator_cap) +
                       "; use a rational approximation of the orders instead");
    }
  }
  const double alpha_tilde = std::strtod(alpha[kmax].c_str(), nullptr);
  return validate_order_spec(alpha_tilde, r, s);
}

NormalizedOrders normalize_orders(const OrderSpec& spec) {
  NormalizedOrders out;
  out.alpha_tilde = spec.alpha_tilde;
  out.sigma = 1;
  for (std::int64_t sk : spec.s) out.sigma = checked::lcm(out.sigma, sk);
  out.q.resize(spec.dim());
  out.N = 0;
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    out.q[k] = checked::mul(spec.r[k], out.sigma / spec.s[k]);
    out.N = checked::add(out.N, out.q[k]);
  }
  // sigma * d must be addressable as a matrix dimension.
  checked::mul(out.sigma, static_cast<std::int64_t>(spec.dim()));
  return out;
}

}  // namespace fracstab
