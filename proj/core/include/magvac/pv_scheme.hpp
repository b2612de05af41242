#pragma once

#include <array>

namespace magvac {

// Regulator masses and coefficients tied by the two sum rules
// sum(c_j) = 0 and sum(c_j m_j^2) = 0, with c_0 fixed to 1.
struct PauliVillarsScheme {
  std::array<double, 3> masses{};  // strictly increasing
  std::array<double, 3> coeffs{};  // coeffs[0] == 1
  double lambda = 0.0;             // averaged cutoff, log(lambda^2) = -sum c_j log m_j^2
  // sum(c_j m_j^{4,6,8}), cached for the cancellation-safe small-s expansion.
  double moment4 = 0.0;
  double moment6 = 0.0;
  double moment8 = 0.0;
};

// Throws DomainError for nonpositive m0, DegenerateMasses when masses
// coincide or the ordering m0 < m1 < m2 is violated.
PauliVillarsScheme make_scheme(double m0, double m1, double m2);

// The derived cutoff; invariant under uniform rescaling of all three masses.
double averaged_cutoff(const PauliVillarsScheme& scheme);

// sum(c_j e^{-s m_j^2}). The terms cancel to O(s^2) as s -> 0, so for
// s*m2^2 < 1e-3 the cached moment expansion is used instead of the naive sum.
double pv_exp_sum(const PauliVillarsScheme& scheme, double s);

}  // namespace magvac
