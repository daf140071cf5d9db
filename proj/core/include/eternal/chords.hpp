#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace eternal {

/// Perfect matching of 2m cyclically ordered boundary slots.
class ChordDiagram {
 public:
  ChordDiagram() = default;
  /// partner[i] is the slot matched with i. Throws std::invalid_argument unless a perfect matching.
  explicit ChordDiagram(std::vector<int> partner);
  /// Balanced word of '1' (opening) and '0' (closing); throws on malformed input.
  static ChordDiagram from_code(const std::string& code);

  int slots() const { return static_cast<int>(partner_.size()); }
  int chords() const { return slots() / 2; }
  const std::vector<int>& partner() const { return partner_; }

  bool noncrossing() const;
  /// Rotation by r: slot i moves to i + r.
  ChordDiagram rotated(int r) const;
  /// Lexicographically least rotation of the partner-offset sequence.
  ChordDiagram canonical() const;
  /// Balanced word with '1' at slots whose partner lies ahead. Requires noncrossing.
  std::string code() const;

  bool operator==(const ChordDiagram&) const = default;

 private:
  std::vector<int> partner_;
};

/// Plane tree: adjacency lists in counterclockwise order.
struct PlaneTree {
  std::vector<std::vector<int>> adjacency;

  int vertices() const { return static_cast<int>(adjacency.size()); }
  int edges() const;
  /// Connected, acyclic and symmetric.
  bool valid() const;
};

/// Dual tree of a noncrossing diagram: faces become vertices, chords become edges.
PlaneTree tree_from_diagram(const ChordDiagram& diagram);
/// Contour walk from the first corner of vertex 0; inverse of tree_from_diagram up to rotation.
ChordDiagram diagram_from_tree(const PlaneTree& tree);

/// Number of plane trees with d - 1 edges up to rotation, i.e. of chord diagrams with
/// d - 1 noncrossing chords up to rotation.
mpz_class count_portraits(int d);

/// Canonical representatives of all noncrossing diagrams with d - 1 chords, sorted by code.
std::vector<ChordDiagram> enumerate_diagrams(int d);

/// Catalan number C_m.
mpz_class catalan(unsigned m);

}  // namespace eternal
