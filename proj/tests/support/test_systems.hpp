#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fracstab/common.hpp"
#include "fracstab/orders.hpp"

namespace fracstab::testing {

inline Matrix example1_matrix() {
  static constexpr double kA[8][8] = {
      {26.2, 12.5, 14.1, 13.4, 18.0, -24.1, -20.8, -13.4},
      {1.1, -1.0, 3.5, 3.6, 1.2, 0.0, -4.8, -1.0},
      {25.6, 10.5, 10.9, 14.1, 16.6, -20.7, -19.0, -13.6},
      {-49.3, -21.7, -21.5, -26.1, -27.8, 40.7, 33.8, 28.8},
      {-6.6, 1.1, 3.9, 4.9, -6.1, 5.5, -2.5, -0.5},
      {-2.4, 0.2, -2.6, -1.0, 3.1, -0.8, 5.0, 6.3},
      {-11.4, -6.3, -2.4, -4.5, -4.0, 11.1, 4.6, 8.6},
      {32.3, 17.0, 21.3, 21.7, 14.5, -28.7, -33.6, -26.7},
  };
  Matrix A(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) A(i, j) = kA[i][j];
  return A;
}

/// The four order vectors of Example 1, labelled a..d.
inline std::vector<std::string> example1_orders(char which) {
  switch (which) {
    case 'a': return {"0.9", "0.72", "0.54", "0.72", "0.6", "0.72", "0.18", "0.3"};
    case 'b': return {"0.96", "0.84", "0.72", "0.84", "0.72", "0.84", "0.24", "0.36"};
    case 'c': return {"0.72", "0.54", "0.36", "0.54", "0.48", "0.54", "0.12", "0.18"};
    case 'd': return {"0.96", "0.72", "0.84", "0.6", "0.48", "0.9", "0.12", "0.36"};
    default: return {};
  }
}

inline std::vector<double> to_doubles(const std::vector<std::string>& v) {
  std::vector<double> out;
  for (const auto& s : v) out.push_back(std::stod(s));
  return out;
}

struct RandomSystem {
  OrderSpec orders;
  Matrix A;
};

/// d in {2, 3, 4}, orders q_k / sigma with sigma <= 8 (at least one q_k = sigma
/// and one below), entries of A uniform in [-5, 5].
inline RandomSystem random_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_int_distribution<std::int64_t> den(2, 8);
  std::uniform_real_distribution<double> entry(-5.0, 5.0);
  std::uniform_real_distribution<double> scale(0.3, 1.0);

  const int d = dim(rng);
  const std::int64_t sigma = den(rng);
  std::uniform_int_distribution<std::int64_t> num(1, sigma);
  std::uniform_int_distribution<int> pick(0, d - 1);
  std::vector<std::int64_t> r(d), s(d, sigma);
  for (auto& v : r) v = num(rng);
  const int top = pick(rng);
  int low = pick(rng);
  while (low == top) low = (low + 1) % d;
  r[top] = sigma;
  r[low] = std::uniform_int_distribution<std::int64_t>(1, sigma - 1)(rng);

  RandomSystem out;
  out.orders = validate_order_spec(scale(rng), r, s);
  out.A = Matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.A(i, j) = entry(rng);
  return out;
}

inline std::vector<RandomSystem> random_systems(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RandomSystem> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_system(rng));
  return out;
}

}  // namespace fracstab::testing
