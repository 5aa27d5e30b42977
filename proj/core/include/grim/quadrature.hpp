#pragma once

#include <functional>

namespace grim {

/// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over [a, b] to an
/// absolute error target.  Throws std::runtime_error if the recursion
/// cannot meet the target.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol);

}  // namespace grim
