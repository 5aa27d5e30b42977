#include "grim/halfspace.hpp"

#include <string>

namespace grim {

double hyp_inner(const HalfSpacePoint& p, const Vec3& u, const Vec3& v) {
  if (!(p.z > 0.0)) {
    throw std::domain_error("hyp_inner: point height must be positive, got z=" +
                            std::to_string(p.z));
  }
  return dot_e(u, v) / (p.z * p.z);
}

double mean_curvature_from_euclidean(double z, double H_e, double Ne3) {
  if (!(z > 0.0)) {
    throw std::domain_error("mean_curvature_from_euclidean: z must be positive");
  }
  return z * H_e + Ne3;
}

double soliton_residual_pointwise(const CurvatureData& c, const HalfSpacePoint& p,
                                  const KillingFieldParams& k, double tol) {
  if (!(p.z > 0.0)) {
    throw std::domain_error("soliton_residual_pointwise: z must be positive");
  }
  const double nlen = norm_e(c.N_e);
  if (std::abs(nlen - 1.0) > tol) {
    throw std::invalid_argument("soliton_residual_pointwise: N_e is not unit length");
  }
  const double h_check = p.z * c.H_e + c.N_e[2];
  if (std::abs(h_check - c.H) > tol) {
    throw std::invalid_argument(
        "soliton_residual_pointwise: inconsistent CurvatureData (H != z*H_e + Ne3)");
  }
  const Vec3 xi{k.a, k.b, 0.0};
  return c.H - dot_e(c.N_e, xi) / p.z;
}

}  // namespace grim
