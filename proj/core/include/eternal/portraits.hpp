#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eternal/chords.hpp"
#include "eternal/scalar_ode.hpp"

namespace eternal {

enum class EquilibriumClass { SINK, SOURCE, CENTER };

std::string to_string(EquilibriumClass c);

struct InteriorEquilibrium {
  cplx root;
  cplx fprime;
  EquilibriumClass cls = EquilibriumClass::SINK;
};

/// SINK iff Re f'(e) < -tol, SOURCE iff > tol, CENTER otherwise.
std::vector<InteriorEquilibrium> classify_interior(const PolyField& f, double tol = 1e-9);

/// Poincare compactification of w' = f(w) on the closed unit disk, P = w / sqrt(1 + |w|^2).
class DiskField {
 public:
  explicit DiskField(PolyField f);

  const PolyField& field() const { return f_; }
  int degree() const { return f_.degree(); }

  /// P' = G(P) - P Re(conj(P) G(P)), G(P) = sum_j c_j P^j (1 - |P|^2)^{(d - j)/2}.
  cplx operator()(cplx P) const;
  /// Chart z = 1 / w = rho e^{i alpha}: (rho', alpha') with the Euler multiplier rho^{d-1} removed.
  std::pair<double, double> polar(double rho, double alpha) const;

  /// alpha_k = pi k / (d - 1), k = 0..2d-3.
  std::vector<double> boundary_saddles() const;
  /// Sign of the boundary flow derivative at each saddle: +1 repelling, -1 attracting along the circle.
  std::vector<int> boundary_stability() const;

  static cplx to_disk(cplx w);
  static cplx from_disk(cplx P);

 private:
  PolyField f_;
};

DiskField compactify(const PolyField& f);

enum class SeparatrixEnd { ROOT, INFINITY_CONNECTION, UNRESOLVED };

std::string to_string(SeparatrixEnd e);

struct Separatrix {
  int saddle = 0;
  double angle = 0.0;
  int time_direction = 1;  // +1 forward to a sink, -1 backward to a source
  SeparatrixEnd end = SeparatrixEnd::UNRESOLVED;
  int root = -1;           // index of the limiting equilibrium
  int target_saddle = -1;  // for INFINITY_CONNECTION
  double time = 0.0;       // rescaled time spent
  std::vector<cplx> path;  // sampled w-plane points
};

struct TraceOptions {
  double eps = 1e-6;
  double capture = 1e-4;
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_time = 1e4;
  std::size_t max_steps = 2000000;
  std::size_t path_stride = 4;
};

struct PortraitGraph {
  int d = 0;
  std::vector<InteriorEquilibrium> interior;
  std::vector<double> saddle_angles;
  std::vector<Separatrix> separatrices;
  std::vector<std::uint32_t> degenerate_subsets;
  bool morse = false;
  bool resolved = false;
  std::vector<std::pair<int, int>> tree_edges;       // (source, sink) root indices
  std::vector<std::vector<int>> cyclic_order;        // neighbors per root in boundary order
  std::optional<ChordDiagram> diagram;               // slots = boundary arcs
  std::string chord_code;                            // canonical, empty when not extracted

  int count(EquilibriumClass c) const;
};

/// Traces the 2(d - 1) interior separatrices of the boundary saddles and extracts the
/// connection tree and chord code. Degenerate fields are traced but flagged non-Morse.
PortraitGraph trace_and_extract(const PolyField& f, const TraceOptions& opts = {});

}  // namespace eternal
