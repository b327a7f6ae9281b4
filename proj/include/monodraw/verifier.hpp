#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "monodraw/geometry.hpp"
#include "monodraw/graph.hpp"

namespace monodraw {

/// Straight-line drawing: a point per vertex.
struct Drawing {
  Graph graph;
  std::vector<Point2> pos;

  void validate() const;  // distinct, finite points
};

enum class PairVerdict { Yes, Degenerate, No };

struct PairWitness {
  PairVerdict verdict = PairVerdict::No;
  std::vector<int> path;  // u..v for Yes (maximin slack path); empty otherwise
  double slack = 0.0;     // best bottleneck slack over all u-v paths (radians)
};

struct WitnessReport {
  std::map<std::pair<int, int>, PairWitness> perPair;  // keys u < v
  bool stronglyMonotone = false;
  bool degenerate = false;  // some pair inside the strictness margin
  double alpha = 0.0;       // min over pairs of the maximin slack (when SM)
};

/// Maximin-slack witness for one pair: among all u-v paths, maximizes the
/// minimum edge slack pi/2 - angle(edge, vec(u,v)). Verdict Yes iff the best
/// slack exceeds epsAngle, Degenerate within +-epsAngle of zero.
PairWitness stronglyMonotonePair(const Drawing& d, int u, int v,
                                 double epsAngle = kDefaultAngleEps);

/// Full pairwise report; alpha is the minimum slack over all pairs.
WitnessReport stronglyMonotone(const Drawing& d, double epsAngle = kDefaultAngleEps);

/// True iff every pair has a path monotone w.r.t. *some* direction. Exact up
/// to the margin: one representative direction per arc of the subdivision of
/// the circle by the 2m edge normals.
bool monotone(const Drawing& d, double epsAngle = kDefaultAngleEps);

/// Global angular slack of a strongly monotone drawing.
/// Throws InvariantError (carrying the failing pair) when d is not strongly
/// monotone.
double safety(const Drawing& d, double epsAngle = kDefaultAngleEps);

struct CrossingReport {
  bool crossingFree = true;
  std::pair<int, int> offendingEdges = {-1, -1};
};

CrossingReport crossingFree(const Drawing& d);

enum class TreeConvexity { NotConvex, Convex, StrictlyConvex };

/// Convexity of a tree drawing under leaf-ray augmentation.
/// Throws std::invalid_argument when the graph is not a tree.
TreeConvexity treeConvexity(const Drawing& d, double epsAngle = kDefaultAngleEps);

/// True iff the drawing realizes the embedding without crossings and every
/// internal face is strictly convex.
bool convexFaces(const Drawing& d, const PlaneEmbedding& emb,
                 double epsAngle = kDefaultAngleEps);

/// Checks a single face cycle for strict convexity (counterclockwise simple
/// polygon, every turn strictly left).
bool faceStrictlyConvex(const Drawing& d, const std::vector<int>& cycle,
                        double epsAngle = kDefaultAngleEps);

/// Re-validates an emitted witness path against the raw dot-product
/// inequality for the pair (path.front(), path.back()).
bool witnessPathValid(const Drawing& d, const std::vector<int>& path);

namespace detail {
/// Maximin-slack path without input validation, for hot construction loops.
PairWitness widestSlackPath(const Drawing& d, int u, int v, double epsAngle);
}  // namespace detail

}  // namespace monodraw
