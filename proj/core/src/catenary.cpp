#include "fvmoor/io/catenary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>

#include <boost/math/tools/roots.hpp>

namespace fvmoor {

namespace {

constexpr std::uintmax_t kMaxRootIterations = 300;

// Bracketed root of a monotone increasing function, expanding the upper end
// geometrically from `hi`.
double increasing_root(const std::function<double(double)>& f, double lo, double hi,
                       bool expand_low) {
  double flo = f(lo);
  double fhi = f(hi);
  for (int k = 0; k < 200 && fhi < 0.0; ++k) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = f(hi);
  }
  for (int k = 0; expand_low && k < 200 && flo > 0.0; ++k) {
    hi = lo;
    fhi = flo;
    lo = lo < 0.0 ? lo * 2.0 : lo - 1.0;
    flo = f(lo);
  }
  if (!(flo <= 0.0 && fhi >= 0.0)) throw SolverError("catenary: no solution in bracket");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t iters = kMaxRootIterations;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

struct Suspended {
  double h, va;
};

// Anchor vertical force for a fully suspended line at horizontal tension h.
double suspended_vertical(const CatenaryProblem& p, double h) {
  const double w = p.weight_per_length, l = p.length, ea = p.axial_stiffness;
  auto z_of = [&](double va) {
    const double vf = va + w * l;
    return h / w * (std::hypot(1.0, vf / h) - std::hypot(1.0, va / h)) +
           (va * l + 0.5 * w * l * l) / ea - p.vertical_span;
  };
  const double scale = std::max(w * l, h);
  return increasing_root(z_of, -scale, scale, true);
}

double suspended_span(const CatenaryProblem& p, double h, double va) {
  const double w = p.weight_per_length, l = p.length, ea = p.axial_stiffness;
  return h / w * (std::asinh((va + w * l) / h) - std::asinh(va / h)) + h * l / ea;
}

// Suspended length for a partly grounded line, or -1 if even the whole line
// cannot reach the fairlead height.
double grounded_suspended_length(const CatenaryProblem& p, double h) {
  const double w = p.weight_per_length, ea = p.axial_stiffness;
  auto z_of = [&](double ls) {
    return h / w * (std::hypot(1.0, w * ls / h) - 1.0) + 0.5 * w * ls * ls / ea -
           p.vertical_span;
  };
  if (z_of(p.length) < 0.0) return -1.0;
  if (z_of(0.0) >= 0.0) return 0.0;
  std::uintmax_t iters = kMaxRootIterations;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  const auto r = boost::math::tools::toms748_solve(z_of, 0.0, p.length, tol, iters);
  return 0.5 * (r.first + r.second);
}

void sample_shape(const CatenaryProblem& p, CatenarySolution& s) {
  const double w = p.weight_per_length, ea = p.axial_stiffness, h = s.horizontal_tension;
  const double lb = s.grounded_length;
  const int n = std::max(p.samples, 2);
  for (int k = 0; k < n; ++k) {
    const double arc = p.length * k / (n - 1);
    double x, z, t;
    if (arc <= lb) {
      x = arc * (1.0 + h / ea);
      z = 0.0;
      t = h;
    } else {
      const double sa = arc - lb;
      const double va = s.anchor_vertical;
      x = lb * (1.0 + h / ea) + h / w * (std::asinh((va + w * sa) / h) - std::asinh(va / h)) +
          h * sa / ea;
      z = h / w * (std::hypot(1.0, (va + w * sa) / h) - std::hypot(1.0, va / h)) +
          (va * sa + 0.5 * w * sa * sa) / ea;
      t = std::hypot(h, va + w * sa);
    }
    s.arc.push_back(arc);
    s.x.push_back(x);
    s.z.push_back(z);
    s.tension.push_back(t);
  }
}

CatenarySolution solve_upright(const CatenaryProblem& p) {
  const double w = p.weight_per_length, l = p.length, ea = p.axial_stiffness;
  CatenarySolution s;
  const double chord = std::hypot(p.horizontal_span, p.vertical_span);
  if (w <= 0.0) {
    const double t = chord > l ? ea * (chord / l - 1.0) : 0.0;
    const double c = chord > 0.0 ? 1.0 / chord : 0.0;
    s.horizontal_tension = t * p.horizontal_span * c;
    s.anchor_vertical = s.fairlead_vertical = t * p.vertical_span * c;
    s.anchor_tension = s.fairlead_tension = t;
    for (int k = 0; k < std::max(p.samples, 2); ++k) {
      const double f = static_cast<double>(k) / (std::max(p.samples, 2) - 1);
      s.arc.push_back(f * l);
      s.x.push_back(f * p.horizontal_span);
      s.z.push_back(f * p.vertical_span);
      s.tension.push_back(t);
    }
    return s;
  }
  const double h_min = 1e-12 * w * l;
  auto span_residual = [&](double h) {
    return suspended_span(p, h, suspended_vertical(p, h)) - p.horizontal_span;
  };
  double h = increasing_root(span_residual, h_min, std::max(w * l, 1e-6), false);
  double va = suspended_vertical(p, h);
  if (p.seabed_at_anchor && va < 0.0) {
    auto grounded_residual = [&](double hh) {
      const double ls = grounded_suspended_length(p, hh);
      if (ls < 0.0) return -p.horizontal_span;  // cannot reach: tension too low
      return (l - ls) + hh / w * std::asinh(w * ls / hh) + hh * l / ea - p.horizontal_span;
    };
    h = increasing_root(grounded_residual, h_min, std::max(w * l, 1e-6), false);
    const double ls = grounded_suspended_length(p, h);
    s.grounded_length = l - ls;
    va = 0.0;
  }
  s.horizontal_tension = h;
  s.anchor_vertical = va;
  s.fairlead_vertical = va + w * (l - s.grounded_length);
  s.anchor_tension = std::hypot(h, va);
  s.fairlead_tension = std::hypot(h, s.fairlead_vertical);
  sample_shape(p, s);
  return s;
}

}  // namespace

CatenarySolution elastic_catenary(const CatenaryProblem& problem) {
  if (!(problem.length > 0.0)) throw ValidationError("catenary: length must be positive");
  if (!(problem.axial_stiffness > 0.0)) throw ValidationError("catenary: EA must be positive");
  if (problem.horizontal_span < 0.0) throw ValidationError("catenary: negative horizontal span");
  if (problem.vertical_span >= 0.0 || problem.seabed_at_anchor) return solve_upright(problem);
  // Fairlead below the anchor: solve with the ends swapped.
  CatenaryProblem flipped = problem;
  flipped.vertical_span = -problem.vertical_span;
  CatenarySolution s = solve_upright(flipped);
  std::swap(s.anchor_tension, s.fairlead_tension);
  const double va = s.anchor_vertical;
  s.anchor_vertical = -s.fairlead_vertical;
  s.fairlead_vertical = -va;
  const double span = problem.horizontal_span;
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    s.x[k] = span - s.x[k];
    s.z[k] -= flipped.vertical_span;
  }
  std::reverse(s.x.begin(), s.x.end());
  std::reverse(s.z.begin(), s.z.end());
  std::reverse(s.tension.begin(), s.tension.end());
  return s;
}

CatenaryEnds elastic_catenary(const Vec3& anchor, const Vec3& fairlead, double length,
                              double weight_per_length, double axial_stiffness,
                              bool seabed_at_anchor) {
  const Vec3 d = fairlead - anchor;
  Vec3 horizontal(d.x(), d.y(), 0.0);
  const double span = horizontal.norm();
  const Vec3 e = span > 0.0 ? Vec3(horizontal / span) : Vec3::UnitX();
  CatenaryProblem p;
  p.horizontal_span = span;
  p.vertical_span = d.z();
  p.length = length;
  p.weight_per_length = weight_per_length;
  p.axial_stiffness = axial_stiffness;
  p.seabed_at_anchor = seabed_at_anchor;
  CatenaryEnds out;
  out.planar = elastic_catenary(p);
  const double h = out.planar.horizontal_tension;
  // Line pulls the anchor toward the fairlead and the fairlead toward the anchor.
  out.anchor_force = h * e + out.planar.anchor_vertical * Vec3::UnitZ();
  out.fairlead_force = -h * e - out.planar.fairlead_vertical * Vec3::UnitZ();
  return out;
}

}  // namespace fvmoor
