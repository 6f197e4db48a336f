#include "fvmoor/beam/beam_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "beam_kernels.hpp"

namespace fvmoor {

namespace {

using detail::FaceFlux;
using detail::Vec6T;

struct Context {
  const BeamState& state;
  const BeamState& prev;
  const LoadEnvironment& env;
  detail::StepInfo step;
  bool anchor_fixed = false;
  bool fairlead_fixed = false;
  Vec3 anchor_point = Vec3::Zero();
  Vec3 fairlead_point = Vec3::Zero();
  const Quat* lock_west = nullptr;
  const Quat* lock_east = nullptr;
};

Context make_context(const BeamState& state, const BeamState& prev, const LoadEnvironment& env,
                     const BeamBC& bc, const StepControl& step) {
  state.validate();
  if (prev.cells() != state.cells()) {
    throw ValidationError("beam: inconsistent cell counts between state and previous level");
  }
  if (!step.quasi_static && !(step.dt > 0.0)) {
    throw ValidationError("beam: time step must be positive");
  }
  Context c{state, prev, env, {step.dt, step.time, step.quasi_static}};
  c.anchor_fixed = bc.anchor.constrained();
  c.fairlead_fixed = bc.fairlead.constrained();
  if (c.anchor_fixed) c.anchor_point = bc.anchor.position_at(step.time);
  if (c.fairlead_fixed) c.fairlead_point = bc.fairlead.position_at(step.time);
  // An isotropic line with moment-free ends can spin about its own axis at
  // no cost; lock the twist at the first constrained end.
  if (c.anchor_fixed) {
    c.lock_west = &state.twist_reference;
  } else if (c.fairlead_fixed) {
    c.lock_east = &state.twist_reference;
  }
  return c;
}

detail::CellHistory history(const BeamState& prev, std::size_t i) {
  return {prev.position[i], prev.orientation[i], prev.velocity[i], prev.angular_velocity[i]};
}

template <typename T>
struct Lifted {
  Vec3T<T> r;
  QuatT<T> q;
};

Lifted<double> plain(const BeamState& s, std::size_t i) {
  return {s.position[i], s.orientation[i]};
}

// Cell variables seeded with infinitesimal parts at the given jet slots
// (negative offset: no seeding).
Lifted<Dual> seeded(const BeamState& s, std::size_t i, int pos_off, int rot_off) {
  Lifted<Dual> c;
  for (int k = 0; k < 3; ++k) {
    c.r[k] = pos_off >= 0 ? Dual(s.position[i][k], pos_off + k) : Dual(s.position[i][k]);
  }
  const QuatT<Dual> base = s.orientation[i].cast<Dual>();
  if (rot_off >= 0) {
    Vec3T<Dual> theta;
    for (int k = 0; k < 3; ++k) theta[k] = Dual(0.0, rot_off + k);
    c.q = quat_exp<Dual>(theta) * base;
  } else {
    c.q = base;
  }
  return c;
}

template <typename T>
FaceFlux<T> west_boundary(const Context& c, const Lifted<T>& cell) {
  const double l0 = c.state.cell_length.front();
  if (c.anchor_fixed) {
    return detail::pinned_face_flux<T>(cell.r, cell.q, c.anchor_point, l0, true,
                                       c.state.section, c.lock_west);
  }
  return detail::free_face_flux<T>(cell.r, cell.q, l0, true);
}

template <typename T>
FaceFlux<T> east_boundary(const Context& c, const Lifted<T>& cell) {
  const double ln = c.state.cell_length.back();
  if (c.fairlead_fixed) {
    return detail::pinned_face_flux<T>(cell.r, cell.q, c.fairlead_point, ln, false,
                                       c.state.section, c.lock_east);
  }
  return detail::free_face_flux<T>(cell.r, cell.q, ln, false);
}

template <typename T>
FaceFlux<T> interior(const Context& c, std::size_t j, const Lifted<T>& a, const Lifted<T>& b) {
  return detail::interior_face_flux<T>(a.r, a.q, b.r, b.q, c.state.cell_length[j - 1],
                                       c.state.cell_length[j], c.state.section);
}

// Contribution of a face to the cell on its west (it is that cell's east face).
template <typename T>
Vec6T<T> as_east_face(const FaceFlux<T>& f, const Vec3T<T>& rc) {
  Vec6T<T> out;
  out.template head<3>() = f.force;
  out.template tail<3>() = f.moment + (f.position - rc).cross(f.force);
  return out;
}

// Contribution of a face to the cell on its east (it is that cell's west face).
template <typename T>
Vec6T<T> as_west_face(const FaceFlux<T>& f, const Vec3T<T>& rc) {
  Vec6T<T> out;
  out.template head<3>() = -f.force;
  out.template tail<3>() = -(f.moment + (f.position - rc).cross(f.force));
  return out;
}

template <typename T>
Vec3T<T> interior_face_position(const Vec3T<T>& ra, const Vec3T<T>& rb, double la, double lb) {
  return ra + (la / (la + lb)) * (rb - ra);
}

void scatter(const Vec6T<Dual>& v, int var_begin, int count, Mat6& block, int col_begin) {
  for (int row = 0; row < 6; ++row) {
    for (int k = 0; k < count; ++k) block(row, col_begin + k) += v[row].v[var_begin + k];
  }
}

Vec6 real_part6(const Vec6T<Dual>& v) {
  Vec6 out;
  for (int k = 0; k < 6; ++k) out[k] = v[k].a;
  return out;
}

EndReactions reactions_from(const Context& c, const Vec3& west_force, const Vec3& east_force) {
  EndReactions r;
  if (c.anchor_fixed) r.anchor = -west_force;
  if (c.fairlead_fixed) r.fairlead = east_force;
  return r;
}

double inf_norm(const std::vector<Vec6>& v) {
  double m = 0.0;
  for (const auto& b : v) {
    if (!b.allFinite()) return std::numeric_limits<double>::quiet_NaN();
    m = std::max(m, b.cwiseAbs().maxCoeff());
  }
  return m;
}

ResidualEvaluation residual_impl(const Context& c) {
  const std::size_t n = c.state.cells();
  std::vector<FaceFlux<double>> faces(n + 1);
  faces[0] = west_boundary<double>(c, plain(c.state, 0));
  faces[n] = east_boundary<double>(c, plain(c.state, n - 1));
  for (std::size_t j = 1; j < n; ++j) {
    faces[j] = interior<double>(c, j, plain(c.state, j - 1), plain(c.state, j));
  }
  ResidualEvaluation out;
  out.residual.assign(n, Vec6::Zero());
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& r = c.state.position[i];
    out.residual[i] += as_west_face<double>(faces[i], r);
    out.residual[i] += as_east_face<double>(faces[i + 1], r);
    out.residual[i] += detail::cell_source<double>(
        r, c.state.orientation[i], faces[i].position, faces[i + 1].position,
        c.state.cell_length[i], history(c.prev, i), c.step, c.state.section, c.env);
  }
  out.reactions = reactions_from(c, faces[0].force, faces[n].force);
  out.inf_norm = inf_norm(out.residual);
  return out;
}

ResidualEvaluation assemble_impl(const Context& c, BlockTriDiagSystem& sys) {
  const std::size_t n = c.state.cells();
  const auto& L = c.state.cell_length;
  sys = BlockTriDiagSystem(n);
  ResidualEvaluation out;
  out.residual.assign(n, Vec6::Zero());
  Vec3 west_force = Vec3::Zero();
  Vec3 east_force = Vec3::Zero();

  // Boundary faces: slots 0..5 hold the adjacent cell.
  {
    const Lifted<Dual> cell = seeded(c.state, 0, 0, 3);
    const auto f = west_boundary<Dual>(c, cell);
    const Vec6T<Dual> v = as_west_face<Dual>(f, cell.r);
    out.residual[0] += real_part6(v);
    scatter(v, 0, 6, sys.diag[0], 0);
    west_force = real_part(f.force);
  }
  {
    const Lifted<Dual> cell = seeded(c.state, n - 1, 0, 3);
    const auto f = east_boundary<Dual>(c, cell);
    const Vec6T<Dual> v = as_east_face<Dual>(f, cell.r);
    out.residual[n - 1] += real_part6(v);
    scatter(v, 0, 6, sys.diag[n - 1], 0);
    east_force = real_part(f.force);
  }
  // Interior faces: slots 0..5 west cell, 6..11 east cell.
  for (std::size_t j = 1; j < n; ++j) {
    const Lifted<Dual> a = seeded(c.state, j - 1, 0, 3);
    const Lifted<Dual> b = seeded(c.state, j, 6, 9);
    const auto f = interior<Dual>(c, j, a, b);
    const Vec6T<Dual> va = as_east_face<Dual>(f, a.r);
    const Vec6T<Dual> vb = as_west_face<Dual>(f, b.r);
    out.residual[j - 1] += real_part6(va);
    out.residual[j] += real_part6(vb);
    scatter(va, 0, 6, sys.diag[j - 1], 0);
    scatter(va, 6, 6, sys.upper[j - 1], 0);
    scatter(vb, 0, 6, sys.lower[j], 0);
    scatter(vb, 6, 6, sys.diag[j], 0);
  }
  // Cell sources: slots 0..2 r[i-1], 3..5 r[i], 6..8 theta[i], 9..11 r[i+1].
  for (std::size_t i = 0; i < n; ++i) {
    const Lifted<Dual> self = seeded(c.state, i, 3, 6);
    Vec3T<Dual> xw;
    Vec3T<Dual> xe;
    if (i > 0) {
      const Lifted<Dual> w = seeded(c.state, i - 1, 0, -1);
      xw = interior_face_position<Dual>(w.r, self.r, L[i - 1], L[i]);
    } else {
      xw = west_boundary<Dual>(c, self).position;
    }
    if (i + 1 < n) {
      const Lifted<Dual> e = seeded(c.state, i + 1, 9, -1);
      xe = interior_face_position<Dual>(self.r, e.r, L[i], L[i + 1]);
    } else {
      xe = east_boundary<Dual>(c, self).position;
    }
    const Vec6T<Dual> v = detail::cell_source<Dual>(self.r, self.q, xw, xe, L[i],
                                                    history(c.prev, i), c.step,
                                                    c.state.section, c.env);
    out.residual[i] += real_part6(v);
    if (i > 0) scatter(v, 0, 3, sys.lower[i], 0);
    scatter(v, 3, 6, sys.diag[i], 0);
    if (i + 1 < n) scatter(v, 9, 3, sys.upper[i], 0);
  }
  for (std::size_t i = 0; i < n; ++i) sys.rhs[i] = -out.residual[i];
  out.reactions = reactions_from(c, west_force, east_force);
  out.inf_norm = inf_norm(out.residual);
  return out;
}

}  // namespace

ResidualEvaluation evaluate_residual(const BeamState& state, const BeamState& prev,
                                     const LoadEnvironment& env, const BeamBC& bc,
                                     const StepControl& step) {
  return residual_impl(make_context(state, prev, env, bc, step));
}

BlockTriDiagSystem assemble_system(const BeamState& state, const BeamState& prev,
                                   const LoadEnvironment& env, const BeamBC& bc,
                                   const StepControl& step) {
  BlockTriDiagSystem sys;
  assemble_impl(make_context(state, prev, env, bc, step), sys);
  return sys;
}

BeamState apply_increment(const BeamState& state, const std::vector<Vec6>& dx) {
  if (dx.size() != state.cells()) throw ValidationError("beam: increment size mismatch");
  BeamState out = state;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    out.position[i] += dx[i].head<3>();
    const Vec3 theta = dx[i].tail<3>();
    out.orientation[i] = (quat_exp<double>(theta) * state.orientation[i]).normalized();
  }
  return out;
}

double reference_force(const BeamState& state, const EndReactions& reactions,
                       const LoadEnvironment& env) {
  const double weight = state.section.mass_per_length() * env.gravity.norm() * state.total_length();
  return std::max({weight, reactions.anchor.norm(), reactions.fairlead.norm(), 1.0});
}

void refresh_faces(BeamState& state, const BeamBC& bc, double time) {
  const LoadEnvironment vacuum = LoadEnvironment::vacuum();
  const Context c = make_context(state, state, vacuum, bc, StepControl::statics(time));
  const std::size_t n = state.cells();
  state.face_position.resize(n + 1);
  state.face_orientation.resize(n + 1);
  const auto w = west_boundary<double>(c, plain(state, 0));
  const auto e = east_boundary<double>(c, plain(state, n - 1));
  state.face_position[0] = w.position;
  state.face_orientation[0] = w.orientation;
  state.face_position[n] = e.position;
  state.face_orientation[n] = e.orientation;
  for (std::size_t j = 1; j < n; ++j) {
    state.face_position[j] = interior_face_position<double>(
        state.position[j - 1], state.position[j], state.cell_length[j - 1], state.cell_length[j]);
    state.face_orientation[j] = quat_midpoint<double>(state.orientation[j - 1], state.orientation[j]);
  }
}

NewtonResult newton_solve(BeamState guess, const BeamState& prev, const LoadEnvironment& env,
                          const BeamBC& bc, const StepControl& step, const NewtonOptions& opts) {
  if (!(opts.tolerance > 0.0)) throw ValidationError("newton: tolerance must be positive");
  if (opts.max_iterations < 1) throw ValidationError("newton: max_iterations must be >= 1");
  BeamState x = std::move(guess);
  double last = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iterations; ++it) {
    BlockTriDiagSystem sys;
    const ResidualEvaluation res = assemble_impl(make_context(x, prev, env, bc, step), sys);
    if (!std::isfinite(res.inf_norm)) throw SolverError("numerical blow-up");
    const double scale = reference_force(x, res.reactions, env);
    last = res.inf_norm;
    if (res.inf_norm <= opts.tolerance * scale) {
      refresh_faces(x, bc, step.time);
      return {std::move(x), res.reactions, it, res.inf_norm, scale};
    }
    const std::vector<Vec6> dx = solve_block_tridiagonal(sys);
    double alpha = 1.0;
    BeamState trial;
    for (int ls = 0;; ++ls) {
      std::vector<Vec6> scaled = dx;
      for (auto& b : scaled) b *= alpha;
      trial = apply_increment(x, scaled);
      double norm = std::numeric_limits<double>::infinity();
      try {
        norm = residual_impl(make_context(trial, prev, env, bc, step)).inf_norm;
      } catch (const GeometryError&) {
      }
      if ((std::isfinite(norm) && norm < (1.0 - 1e-4 * alpha) * res.inf_norm) ||
          ls >= opts.max_line_search) {
        break;
      }
      alpha *= 0.5;
    }
    x = std::move(trial);
  }
  // Residual after the final update.
  const ResidualEvaluation res = residual_impl(make_context(x, prev, env, bc, step));
  if (!std::isfinite(res.inf_norm)) throw SolverError("numerical blow-up");
  const double scale = reference_force(x, res.reactions, env);
  if (res.inf_norm <= opts.tolerance * scale) {
    refresh_faces(x, bc, step.time);
    return {std::move(x), res.reactions, opts.max_iterations, res.inf_norm, scale};
  }
  last = res.inf_norm;
  std::ostringstream msg;
  msg << "newton: no convergence after " << opts.max_iterations
      << " iterations, residual " << last << " N (scale " << scale << " N)";
  throw ConvergenceError(msg.str(), last);
}

StepResult advance_step(const BeamState& state, const LoadEnvironment& env, const BeamBC& bc,
                        double dt, double time_new, const NewtonOptions& opts) {
  if (!(dt > 0.0)) throw ValidationError("beam: time step must be positive");
  BeamState guess = state;
  for (std::size_t i = 0; i < guess.cells(); ++i) {
    guess.position[i] += dt * state.velocity[i];
    guess.orientation[i] =
        (quat_exp<double>(Vec3(dt * state.angular_velocity[i])) * state.orientation[i]).normalized();
  }
  return advance_step(state, env, bc, dt, time_new, opts, std::move(guess));
}

StepResult advance_step(const BeamState& state, const LoadEnvironment& env, const BeamBC& bc,
                        double dt, double time_new, const NewtonOptions& opts,
                        BeamState guess) {
  if (!(dt > 0.0)) throw ValidationError("beam: time step must be positive");
  if (guess.cells() != state.cells()) throw ValidationError("beam: initial guess has the wrong size");
  NewtonResult res = newton_solve(std::move(guess), state, env, bc,
                                  StepControl::dynamic(dt, time_new), opts);
  BeamState& next = res.state;
  for (std::size_t i = 0; i < next.cells(); ++i) {
    next.velocity[i] = (next.position[i] - state.position[i]) / dt;
    next.angular_velocity[i] =
        quat_log<double>(Quat(next.orientation[i] * state.orientation[i].conjugate())) / dt;
  }
  return {std::move(res.state), res.reactions, res.iterations};
}

std::vector<Vec3> cell_external_loads(const BeamState& state, const BeamState& prev,
                                      const LoadEnvironment& env, const BeamBC& bc,
                                      const StepControl& step) {
  const Context c = make_context(state, prev, env, bc, step);
  const std::size_t n = state.cells();
  std::vector<Vec3> faces(n + 1);
  faces[0] = west_boundary<double>(c, plain(state, 0)).position;
  faces[n] = east_boundary<double>(c, plain(state, n - 1)).position;
  for (std::size_t j = 1; j < n; ++j) {
    faces[j] = interior_face_position<double>(state.position[j - 1], state.position[j],
                                              state.cell_length[j - 1], state.cell_length[j]);
  }
  std::vector<Vec3> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = detail::cell_kinematics<double>(state.position[i], faces[i], faces[i + 1],
                                                   state.cell_length[i], history(prev, i),
                                                   c.step);
    out[i] = total_external(k, state.section, env);
  }
  return out;
}

BeamEnergy beam_energy(const BeamState& state, const LoadEnvironment& env, const BeamBC& bc,
                       double time) {
  const Context c = make_context(state, state, env, bc, StepControl::statics(time));
  const std::size_t n = state.cells();
  const Vec3 cn = state.section.force_stiffness();
  const Vec3 cm = state.section.moment_stiffness();
  BeamEnergy e;
  auto face_energy = [&](const FaceFlux<double>& f) {
    return 0.5 * f.spacing *
           (f.shear_strain.dot(cn.cwiseProduct(f.shear_strain)) +
            f.curvature.dot(cm.cwiseProduct(f.curvature)));
  };
  if (c.anchor_fixed) e.elastic += face_energy(west_boundary<double>(c, plain(state, 0)));
  if (c.fairlead_fixed) e.elastic += face_energy(east_boundary<double>(c, plain(state, n - 1)));
  for (std::size_t j = 1; j < n; ++j) {
    e.elastic += face_energy(interior<double>(c, j, plain(state, j - 1), plain(state, j)));
  }
  const Vec3 inertia = state.section.rotary_inertia();
  const Vec3 weight = buoyancy_force(state.section, env);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = state.cell_length[i];
    const Mat3 r = state.orientation[i].toRotationMatrix();
    const Vec3 w_mat = r.transpose() * state.angular_velocity[i];
    e.kinetic += 0.5 * l *
                 (state.section.mass_per_length() * state.velocity[i].squaredNorm() +
                  w_mat.dot(inertia.cwiseProduct(w_mat)));
    e.potential -= l * weight.dot(state.position[i]);
    const double pen = env.seabed_elevation - state.position[i].z();
    if (pen > 0.0) e.potential += 0.5 * l * env.seabed_stiffness * state.section.diameter * pen * pen;
  }
  return e;
}

}  // namespace fvmoor
