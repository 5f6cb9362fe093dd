#include "fredsing/derivatives.hpp"

#include "fredsing/errors.hpp"

namespace fredsing {

std::vector<Eigen::VectorXd> directional_derivatives(const MapModel& map,
                                                     const Eigen::VectorXd& u,
                                                     const Eigen::VectorXd& v, int m) {
  if (m < 0) throw std::invalid_argument("directional_derivatives: negative order");
  if (m > map.smoothness())
    throw OrderExceedsSmoothness("order " + std::to_string(m) + " exceeds declared smoothness " +
                                 std::to_string(map.smoothness()));
  auto sp = JetSpace::make({m}, {"s"});
  JetVector line = constant_jets(sp, u);
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (m >= 1) line[i][1] = v[i];
  JetVector y = map.eval(line);
  std::vector<Eigen::VectorXd> out;
  double fact = 1.0;
  for (int i = 0; i <= m; ++i) {
    if (i > 0) fact *= i;
    out.push_back(coefficient(y, i) * fact);
  }
  return out;
}

double nested_lie_derivative(const ScalarField& g, const VectorField& xi,
                             const Eigen::VectorXd& u, int depth, int smoothness) {
  if (depth < 0) throw std::invalid_argument("nested_lie_derivative: negative depth");
  if (depth > kDepthCap) throw DepthCapExceeded("depth above cap " + std::to_string(kDepthCap));
  if (depth > smoothness - 1) throw OrderExceedsSmoothness("depth exceeds smoothness - 1");
  // depth layer variables followed by one scratch variable for oracles that
  // need derivatives of the map.
  std::vector<int> orders(depth + 1, 1);
  auto sp = JetSpace::make(orders, {}, depth);
  JetVector U = constant_jets(sp, u);
  for (int layer = depth - 1; layer >= 0; --layer) {
    JetVector x = xi(U);
    for (std::size_t i = 0; i < U.size(); ++i) U[i] += x[i].times_variable(layer);
  }
  const std::size_t all = (std::size_t{1} << depth) - 1;
  return g(U)[all];
}

}  // namespace fredsing
