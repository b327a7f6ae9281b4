#pragma once

#include <optional>
#include <vector>

#include "monodraw/geometry.hpp"
#include "monodraw/graph.hpp"
#include "monodraw/verifier.hpp"

namespace monodraw {

/// Intermediate state of the inductive tree construction. The drawn subtree
/// always satisfies invariants I1-I4: every leaf of the subtree sits on a
/// corner of the convex hull, the hull leaves are kept in counterclockwise
/// order, consecutive edge angles stay <= pi, and the partial drawing is
/// strongly monotone.
struct PlacementState {
  const Graph* tree = nullptr;
  Drawing drawing;  // graph = *tree; positions valid where placed[v]
  std::vector<bool> placed;
  std::vector<int> hullLeaves;  // counterclockwise
  std::vector<int> parent;      // -1 at the root
  /// Children in placement order (counterclockwise around each vertex,
  /// starting after the parent).
  std::vector<std::vector<int>> children;
  std::vector<int> subtreeHeight;  // 0 at leaves of the rooted tree
  int root = -1;
};

/// Convex strongly monotone drawing of a tree. When childOrder (a rotation
/// system of t) is given, the realized rotation equals it exactly.
/// Throws std::invalid_argument when t is not a tree, PrecisionError when a
/// placement slice degenerates numerically.
Drawing drawTree(const Graph& t,
                 const std::optional<std::vector<std::vector<int>>>& childOrder = std::nullopt);

/// Root choice and base k-gon placement; exposed for the invariant tests.
PlacementState initPlacement(const Graph& t,
                             const std::optional<std::vector<std::vector<int>>>& childOrder);

/// Cone C(a_i) at the hull leaf hullLeaves[hullIndex]: apex a_i, swept from
/// (a_{i-1} a_i-perp) to (a_i a_{i+1}-perp); contains the prolongation of the
/// parent edge (I2), else throws InvariantError.
Cone leafCone(const PlacementState& s, int hullIndex);

/// Cone C(y): all points p such that the drawn tree path y -> a_i is strictly
/// monotone with respect to vec(y, p). Intersection of the open half-plane
/// constraints of the path edges. Throws InvariantError when empty.
Cone visibilityCone(const PlacementState& s, int y, int ai);

/// Places the children of the hull leaf hullLeaves[hullIndex] on a circular
/// arc inside the pizza slice C(a_i) cut to radius delta/2, symmetric about
/// the prolongation, and splices them into the hull.
void expandLeaf(PlacementState& s, int hullIndex);

}  // namespace monodraw
