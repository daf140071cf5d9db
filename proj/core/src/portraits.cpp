#include "eternal/portraits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <boost/numeric/odeint.hpp>

#include "eternal/errors.hpp"

namespace eternal {

namespace odeint = boost::numeric::odeint;

namespace {
constexpr double kPi = std::numbers::pi;
using State2 = std::array<double, 2>;
}  // namespace

std::string to_string(EquilibriumClass c) {
  switch (c) {
    case EquilibriumClass::SINK: return "SINK";
    case EquilibriumClass::SOURCE: return "SOURCE";
    case EquilibriumClass::CENTER: return "CENTER";
  }
  return "CENTER";
}

std::string to_string(SeparatrixEnd e) {
  switch (e) {
    case SeparatrixEnd::ROOT: return "ROOT";
    case SeparatrixEnd::INFINITY_CONNECTION: return "INFINITY_CONNECTION";
    case SeparatrixEnd::UNRESOLVED: return "UNRESOLVED";
  }
  return "UNRESOLVED";
}

std::vector<InteriorEquilibrium> classify_interior(const PolyField& f, double tol) {
  std::vector<InteriorEquilibrium> out;
  for (std::size_t j = 0; j < f.roots().size(); ++j) {
    InteriorEquilibrium e;
    e.root = f.roots()[j];
    e.fprime = f.derivatives()[j];
    const double re = e.fprime.real();
    e.cls = re < -tol ? EquilibriumClass::SINK : re > tol ? EquilibriumClass::SOURCE : EquilibriumClass::CENTER;
    out.push_back(e);
  }
  return out;
}

DiskField::DiskField(PolyField f) : f_(std::move(f)) {}

cplx DiskField::operator()(cplx P) const {
  const double delta = std::sqrt(std::max(0.0, 1.0 - std::norm(P)));
  const auto& c = f_.coefficients();
  const int d = f_.degree();
  cplx G = 0.0;
  cplx Pj = 1.0;
  for (int j = 0; j <= d; ++j) {
    G += c[static_cast<std::size_t>(j)] * Pj * std::pow(delta, d - j);
    Pj *= P;
  }
  return G - P * (std::conj(P) * G).real();
}

std::pair<double, double> DiskField::polar(double rho, double alpha) const {
  const int d = f_.degree();
  const cplx z = std::polar(rho, alpha);
  const cplx e = std::polar(1.0, -(d - 1) * alpha) * f_.reversed(z);
  return {-rho * e.real(), -e.imag()};
}

std::vector<double> DiskField::boundary_saddles() const {
  const int d = f_.degree();
  std::vector<double> out;
  for (int k = 0; k < 2 * (d - 1); ++k) out.push_back(kPi * k / (d - 1));
  return out;
}

std::vector<int> DiskField::boundary_stability() const {
  const int d = f_.degree();
  std::vector<int> out;
  for (int k = 0; k < 2 * (d - 1); ++k) out.push_back(k % 2 == 0 ? 1 : -1);
  return out;
}

cplx DiskField::to_disk(cplx w) { return w / std::sqrt(1.0 + std::norm(w)); }

cplx DiskField::from_disk(cplx P) {
  const double delta = std::sqrt(std::max(0.0, 1.0 - std::norm(P)));
  if (delta == 0.0) throw DomainError("boundary point has no finite preimage");
  return P / delta;
}

DiskField compactify(const PolyField& f) { return DiskField(f); }

int PortraitGraph::count(EquilibriumClass c) const {
  return static_cast<int>(std::count_if(interior.begin(), interior.end(),
                                        [c](const InteriorEquilibrium& e) { return e.cls == c; }));
}

namespace {

Separatrix trace_one(const PolyField& f, int k, const TraceOptions& opts) {
  const int d = f.degree();
  const int saddles = 2 * (d - 1);
  Separatrix s;
  s.saddle = k;
  s.angle = kPi * k / (d - 1);
  s.time_direction = k % 2 == 0 ? -1 : 1;
  const double R = 1.0 / opts.eps;
  const double expo = 0.5 * (d - 1);

  auto sys = [&](const State2& x, State2& dx, double) {
    const cplx w(x[0], x[1]);
    const cplx v = static_cast<double>(s.time_direction) * f(w) / std::pow(1.0 + std::norm(w), expo);
    dx[0] = v.real();
    dx[1] = v.imag();
  };

  const cplx w0 = std::polar(R, s.angle);
  State2 x{w0.real(), w0.imag()};
  auto stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State2>());
  double t = 0.0, dt = 1e-3;
  double min_radius = R;
  double inner = 1.0;
  for (const cplx& r : f.roots()) inner = std::max(inner, std::abs(r));
  inner *= 10.0;
  // a separatrix that dips into the root region and climbs back this far is shadowing a saddle connection
  const double near_boundary = std::sqrt(R);
  s.path.push_back(w0);
  for (std::size_t n = 0; n < opts.max_steps && t < opts.max_time; ++n) {
    if (stepper.try_step(sys, x, t, dt) != odeint::success) continue;
    const cplx w(x[0], x[1]);
    if (n % opts.path_stride == 0) s.path.push_back(w);
    min_radius = std::min(min_radius, std::abs(w));
    for (std::size_t j = 0; j < f.roots().size(); ++j) {
      if (std::abs(w - f.roots()[j]) < opts.capture) {
        s.end = SeparatrixEnd::ROOT;
        s.root = static_cast<int>(j);
        s.time = t;
        s.path.push_back(w);
        return s;
      }
    }
    if ((min_radius < 0.5 * R && std::abs(w) > R) || (min_radius < inner && std::abs(w) > near_boundary)) {
      s.end = SeparatrixEnd::INFINITY_CONNECTION;
      double a = std::arg(w);
      if (a < 0) a += 2 * kPi;
      s.target_saddle = static_cast<int>(std::lround(a / (kPi / (d - 1)))) % saddles;
      s.time = t;
      s.path.push_back(w);
      return s;
    }
  }
  s.time = t;
  return s;
}

}  // namespace

PortraitGraph trace_and_extract(const PolyField& f, const TraceOptions& opts) {
  PortraitGraph g;
  g.d = f.degree();
  g.interior = classify_interior(f);
  const DiskField disk(f);
  g.saddle_angles = disk.boundary_saddles();
  if (g.d <= 20) g.degenerate_subsets = degeneracy_scan(f);
  g.morse = g.degenerate_subsets.empty() && g.count(EquilibriumClass::CENTER) == 0;

  const int saddles = 2 * (g.d - 1);
  for (int k = 0; k < saddles; ++k) g.separatrices.push_back(trace_one(f, k, opts));

  g.resolved = std::all_of(g.separatrices.begin(), g.separatrices.end(),
                           [](const Separatrix& s) { return s.end == SeparatrixEnd::ROOT; });
  if (!g.morse || !g.resolved) return g;

  // Arc a lies between saddles a and a + 1 and is swept by the edge joining their limits.
  std::map<std::pair<int, int>, std::vector<int>> arcs;
  std::vector<std::pair<int, int>> arc_pair(static_cast<std::size_t>(saddles));
  for (int a = 0; a < saddles; ++a) {
    const int u = g.separatrices[static_cast<std::size_t>(a)].root;
    const int v = g.separatrices[static_cast<std::size_t>((a + 1) % saddles)].root;
    // even saddles end at sources
    const auto key = a % 2 == 0 ? std::make_pair(u, v) : std::make_pair(v, u);
    arc_pair[static_cast<std::size_t>(a)] = key;
    arcs[key].push_back(a);
  }
  std::vector<int> partner(static_cast<std::size_t>(saddles), -1);
  for (const auto& [key, list] : arcs) {
    if (list.size() != 2) {
      g.resolved = false;
      return g;
    }
    partner[static_cast<std::size_t>(list[0])] = list[1];
    partner[static_cast<std::size_t>(list[1])] = list[0];
    g.tree_edges.push_back(key);
  }

  g.cyclic_order.assign(static_cast<std::size_t>(g.d), {});
  for (int a = 0; a < saddles; ++a) {
    const auto [src, snk] = arc_pair[static_cast<std::size_t>(a)];
    auto add = [&](int v, int u) {
      auto& ord = g.cyclic_order[static_cast<std::size_t>(v)];
      if (std::find(ord.begin(), ord.end(), u) == ord.end()) ord.push_back(u);
    };
    add(src, snk);
    add(snk, src);
  }

  ChordDiagram diagram(partner);
  PlaneTree tree;
  tree.adjacency = g.cyclic_order;
  if (!diagram.noncrossing() || static_cast<int>(g.tree_edges.size()) != g.d - 1 || !tree.valid()) {
    g.resolved = false;
    return g;
  }
  g.chord_code = diagram.canonical().code();
  g.diagram = std::move(diagram);
  return g;
}

}  // namespace eternal
