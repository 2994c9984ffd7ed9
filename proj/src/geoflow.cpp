#include "mrext/geoflow.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace mrext {

GeodesicSystem::GeodesicSystem(const BaseGeometry& geom)
    : n_(geom.n()),
      gamma_(geom.gamma()),
      k_(geom.n(), Valence{Variance::Down, Variance::Down, Variance::Down}, Frame::BaseNatural,
         geom.vars()),
      g_induced_(build_extension_metric(geom).induced) {
  // K_hij = p_s R_hji^s + 1/2 (nabla_i c_jh + nabla_j c_ih - nabla_h c_ij): exactly the
  // vertical block of the Levi-Civita coefficients.
  const TotalConnection lc = lc_connection_total(geom);
  for (int h = 0; h < n_; ++h)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) k_.set({h, i, j}, lc.coeffs.at({n_ + h, i, j}));
}

std::vector<double> GeodesicSystem::point_of(const GeodesicState& s) const {
  std::vector<double> pt(static_cast<std::size_t>(2 * n_));
  for (int i = 0; i < n_; ++i) {
    pt[static_cast<std::size_t>(i)] = s.x[static_cast<std::size_t>(i)];
    pt[static_cast<std::size_t>(n_ + i)] = s.p[static_cast<std::size_t>(i)];
  }
  return pt;
}

GeodesicState GeodesicSystem::rhs(const GeodesicState& s) const {
  const std::vector<double> pt = point_of(s);
  GeodesicState d;
  d.x = s.v;
  d.v.assign(static_cast<std::size_t>(n_), 0.0);
  d.p.assign(static_cast<std::size_t>(n_), 0.0);
  d.q.assign(static_cast<std::size_t>(n_), 0.0);
  for (int h = 0; h < n_; ++h) {
    double acc_v = 0.0, acc_p = 0.0, acc_q = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const RationalFunction& g = gamma_.at({h, i, j});
        if (!g.is_zero())
          acc_v -= g.evaluate_double(pt) * s.v[static_cast<std::size_t>(i)] *
                   s.v[static_cast<std::size_t>(j)];
        const RationalFunction& kk = k_.at({h, i, j});
        if (!kk.is_zero())
          acc_q -= kk.evaluate_double(pt) * s.v[static_cast<std::size_t>(i)] *
                   s.v[static_cast<std::size_t>(j)];
      }
      // dp_h/dt = q_h + G^a_ih p_a xd^i ; dq_h/dt += G^a_ih q_a xd^i
      for (int a = 0; a < n_; ++a) {
        const RationalFunction& g = gamma_.at({a, i, h});
        if (g.is_zero()) continue;
        const double gv = g.evaluate_double(pt) * s.v[static_cast<std::size_t>(i)];
        acc_p += gv * s.p[static_cast<std::size_t>(a)];
        acc_q += gv * s.q[static_cast<std::size_t>(a)];
      }
    }
    d.v[static_cast<std::size_t>(h)] = acc_v;
    d.p[static_cast<std::size_t>(h)] = s.q[static_cast<std::size_t>(h)] + acc_p;
    d.q[static_cast<std::size_t>(h)] = acc_q;
  }
  return d;
}

std::vector<double> GeodesicSystem::p_dot(const GeodesicState& s) const {
  const std::vector<double> pt = point_of(s);
  std::vector<double> pd(static_cast<std::size_t>(n_));
  for (int h = 0; h < n_; ++h) {
    double acc = s.q[static_cast<std::size_t>(h)];
    for (int i = 0; i < n_; ++i)
      for (int a = 0; a < n_; ++a) {
        const RationalFunction& g = gamma_.at({a, i, h});
        if (g.is_zero()) continue;
        acc += g.evaluate_double(pt) * s.v[static_cast<std::size_t>(i)] *
               s.p[static_cast<std::size_t>(a)];
      }
    pd[static_cast<std::size_t>(h)] = acc;
  }
  return pd;
}

double GeodesicSystem::energy(const GeodesicState& s) const {
  const std::vector<double> pt = point_of(s);
  const std::vector<double> pd = p_dot(s);
  std::vector<double> vel(static_cast<std::size_t>(2 * n_));
  for (int i = 0; i < n_; ++i) {
    vel[static_cast<std::size_t>(i)] = s.v[static_cast<std::size_t>(i)];
    vel[static_cast<std::size_t>(n_ + i)] = pd[static_cast<std::size_t>(i)];
  }
  double e = 0.0;
  for (int a = 0; a < 2 * n_; ++a)
    for (int b = 0; b < 2 * n_; ++b) {
      const RationalFunction& g = g_induced_.at({a, b});
      if (g.is_zero()) continue;
      e += g.evaluate_double(pt) * vel[static_cast<std::size_t>(a)] *
           vel[static_cast<std::size_t>(b)];
    }
  return e;
}

namespace {

GeodesicState axpy(const GeodesicState& s, double h, const GeodesicState& d) {
  GeodesicState r = s;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    r.x[i] += h * d.x[i];
    r.v[i] += h * d.v[i];
    r.p[i] += h * d.p[i];
    r.q[i] += h * d.q[i];
  }
  return r;
}

}  // namespace

Trajectory integrate_geodesic(const GeodesicSystem& sys, const GeodesicState& initial,
                              const IntegratorConfig& config) {
  if (config.step <= 0.0) throw std::invalid_argument("step must be positive");
  if (config.steps < 1) throw std::invalid_argument("step count must be at least 1");
  const std::size_t nn = static_cast<std::size_t>(sys.n());
  if (initial.x.size() != nn || initial.v.size() != nn || initial.p.size() != nn ||
      initial.q.size() != nn)
    throw std::invalid_argument("state arity does not match the geometry dimension");

  Trajectory traj;
  traj.points.push_back({0.0, initial});
  GeodesicState s = initial;
  const double h = config.step;
  for (int k = 0; k < config.steps; ++k) {
    try {
      const GeodesicState k1 = sys.rhs(s);
      const GeodesicState k2 = sys.rhs(axpy(s, h / 2, k1));
      const GeodesicState k3 = sys.rhs(axpy(s, h / 2, k2));
      const GeodesicState k4 = sys.rhs(axpy(s, h, k3));
      GeodesicState next = s;
      for (std::size_t i = 0; i < nn; ++i) {
        next.x[i] += h / 6 * (k1.x[i] + 2 * k2.x[i] + 2 * k3.x[i] + k4.x[i]);
        next.v[i] += h / 6 * (k1.v[i] + 2 * k2.v[i] + 2 * k3.v[i] + k4.v[i]);
        next.p[i] += h / 6 * (k1.p[i] + 2 * k2.p[i] + 2 * k3.p[i] + k4.p[i]);
        next.q[i] += h / 6 * (k1.q[i] + 2 * k2.q[i] + 2 * k3.q[i] + k4.q[i]);
      }
      s = std::move(next);
    } catch (const PoleError& e) {
      traj.hit_pole = true;
      traj.pole_message = e.what();
      break;
    }
    bool finite = true;
    for (std::size_t i = 0; i < nn && finite; ++i)
      finite = std::isfinite(s.x[i]) && std::isfinite(s.v[i]) && std::isfinite(s.p[i]) &&
               std::isfinite(s.q[i]);
    if (!finite) {
      traj.hit_pole = true;
      traj.pole_message = "state became non-finite";
      break;
    }
    traj.points.push_back({h * (k + 1), s});
  }
  return traj;
}

std::vector<double> energy_along_curve(const GeodesicSystem& sys, const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.points.size());
  for (const auto& tp : traj.points) out.push_back(sys.energy(tp.state));
  return out;
}

void write_trajectory_csv(std::ostream& os, const GeodesicSystem& sys, const Trajectory& traj) {
  const int n = sys.n();
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",v" << i;
  for (int i = 1; i <= n; ++i) os << ",p" << i;
  for (int i = 1; i <= n; ++i) os << ",q" << i;
  os << ",energy\n";
  char buf[32];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (const auto& tp : traj.points) {
    emit(tp.t);
    for (double v : tp.state.x) { os << ","; emit(v); }
    for (double v : tp.state.v) { os << ","; emit(v); }
    for (double v : tp.state.p) { os << ","; emit(v); }
    for (double v : tp.state.q) { os << ","; emit(v); }
    os << ",";
    emit(sys.energy(tp.state));
    os << "\n";
  }
}

}  // namespace mrext
