#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mrext/cotext.hpp"

namespace mrext {

// State of the geodesic system: base position and velocity plus fiber position
// and covariant fiber velocity q_h = delta p_h / dt.
struct GeodesicState {
  std::vector<double> x, v, p, q;
};

struct IntegratorConfig {
  double step = 1e-3;
  int steps = 1000;
};

struct TrajectoryPoint {
  double t = 0.0;
  GeodesicState state;
};

// Numeric right-hand sides compiled from a geometry: the base equation
// xdd^h + G^h_ij xd^i xd^j = 0 and the fiber equation
// d q_h/dt = G^a_ih q_a xd^i - K_hij xd^i xd^j, where K is the vertical block of
// the Levi-Civita coefficients and dp_h/dt = q_h + G^a_ih p_a xd^i.
class GeodesicSystem {
 public:
  explicit GeodesicSystem(const BaseGeometry& geom);

  int n() const { return n_; }
  GeodesicState rhs(const GeodesicState& s) const;  // throws PoleError at poles
  double energy(const GeodesicState& s) const;      // g~(cdot, cdot) in induced coordinates

  // dp_h/dt reconstructed from the covariant fiber velocity.
  std::vector<double> p_dot(const GeodesicState& s) const;

 private:
  std::vector<double> point_of(const GeodesicState& s) const;

  int n_;
  TensorField gamma_;      // base connection
  TensorField k_;          // K_hij (vertical Levi-Civita block), slots (h,i,j)
  TensorField g_induced_;  // extension metric, induced frame
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  bool hit_pole = false;
  std::string pole_message;
};

// Classical fixed-step fourth-order Runge-Kutta; on a pole the trajectory ends
// at the last good state with hit_pole set.
Trajectory integrate_geodesic(const GeodesicSystem& sys, const GeodesicState& initial,
                              const IntegratorConfig& config);

std::vector<double> energy_along_curve(const GeodesicSystem& sys, const Trajectory& traj);

// CSV with header t,x1..xn,v1..vn,p1..pn,q1..qn,energy; 17 significant digits.
void write_trajectory_csv(std::ostream& os, const GeodesicSystem& sys, const Trajectory& traj);

}  // namespace mrext
