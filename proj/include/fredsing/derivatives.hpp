#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "fredsing/model.hpp"

namespace fredsing {

// d^i/ds^i F(u + s v) at s = 0 for i = 0..m.
std::vector<Eigen::VectorXd> directional_derivatives(const MapModel& map,
                                                     const Eigen::VectorXd& u,
                                                     const Eigen::VectorXd& v, int m);

// (L_xi)^k g at u using k nested first-order variables; xi is re-evaluated at
// every layer.
using ScalarField = std::function<Jet(const JetVector&)>;
using VectorField = std::function<JetVector(const JetVector&)>;
inline constexpr int kDepthCap = 8;
double nested_lie_derivative(const ScalarField& g, const VectorField& xi,
                             const Eigen::VectorXd& u, int depth,
                             int smoothness = kSmoothInfinity);

}  // namespace fredsing
