#pragma once

#include <map>
#include <utility>
#include <vector>

#include "monodraw/geometry.hpp"
#include "monodraw/graph.hpp"
#include "monodraw/verifier.hpp"

namespace monodraw {

/// Bubble of an active edge (far, near): stacking happens on a circular arc
/// around `far`, the bubble disk sits just beyond `near` (Lemma 1 geometry).
struct Bubble {
  std::pair<int, int> edge;  // (far, near)
  Circle circle;             // current stacking region (shrunk after certification)
  Circle certCircle;         // region certified by the finite point scheme
  double eps = 0.0;          // distance from `near` to the center
};

/// Drawing-with-bubbles state maintaining invariant (C) under the finite
/// certification scheme: the drawing extended by every bubble's certification
/// points (center plus 8 boundary points, each joined to the bubble edge's
/// endpoints) is strongly monotone with slack alpha.
struct BubbledDrawing {
  Drawing drawing;  // graph grows as vertices are placed
  std::vector<bool> placed;
  std::map<std::pair<int, int>, Bubble> bubbles;  // key (min, max) of the edge
  double alpha = 0.0;                             // certified angular slack
};

/// Strongly monotone crossing-free drawing of a 2-tree (Theorem 4).
/// Throws ClassificationError when g is not a 2-tree, PrecisionError when the
/// bubble parameter search collapses.
Drawing drawTwoTree(const Graph& g);

/// Initial state: the base edge as a unit segment with its bubble (only when
/// withBubble; the bubble is skipped when nothing will be stacked onto it).
BubbledDrawing beginTwoTree(const Graph& g, std::pair<int, int> baseEdge, bool withBubble);

/// Lemma 1: creates bubbles for the two fresh edges (u,w), (v,w) of the just
/// stacked degree-2 vertex w, with one shared parameter pair (r, eps).
/// needB1/needB2 select which of the two edges actually gets a bubble.
void makeBubbles(BubbledDrawing& st, int w, int u, int v, bool needB1, bool needB2);

/// Stacks the given vertices into the bubble of edge e on an arc around the
/// far endpoint; consumes the bubble and re-certifies.
void stackIntoBubble(BubbledDrawing& st, std::pair<int, int> e, const std::vector<int>& verts);

/// Lemma 1 witness re-routing: the strongly monotone path from y to the
/// stacked point x (inside the bubble of bubbleEdge=(far,near)) obtained from
/// the certified path y -> near by re-routing its last edge or appending.
/// Returned as a point sequence (x is not a graph vertex).
std::vector<Point2> rerouteWitness(const BubbledDrawing& st, int y, Point2 x,
                                   std::pair<int, int> bubbleEdge);

/// The certification point set of a bubble: center plus 8 boundary points of
/// the certified circle.
std::vector<Point2> certPoints(const Bubble& b);

/// Strong monotonicity of the drawing extended by every bubble's
/// certification points; returns the minimum pair slack (the certified
/// alpha). Exposed for the invariant tests.
double certifiedAlpha(const BubbledDrawing& st);

}  // namespace monodraw
