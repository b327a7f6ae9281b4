#pragma once

#include <optional>
#include <vector>

#include "monodraw/geometry.hpp"
#include "monodraw/graph.hpp"
#include "monodraw/verifier.hpp"

namespace monodraw {

struct PackingResiduals {
  double angle = 0.0;          // max angle-sum deviation at any node (radians)
  double tangency = 0.0;       // max |center distance - radius sum| over tangent pairs
  double orthogonality = 0.0;  // max |center distance - sqrt(r1^2+r2^2)| over incidences
  double inscribed = 0.0;      // max escape from / contact defect with the outer circle
  double layout = 0.0;         // max re-placement discrepancy during the traversal
};

/// Primal-dual circle packing of a 3-connected plane graph: one circle per
/// vertex, one per bounded face, the unit circle at the origin for the outer
/// face. Vertex circles of adjacent vertices are tangent, face circles of
/// adjacent faces are tangent, incident vertex/face circles are orthogonal,
/// and all four meet in the edge's contact point.
struct PrimalDualPacking {
  PlaneEmbedding emb;
  FacesResult faces;
  std::vector<Circle> vertexCircles;               // per vertex
  std::vector<std::optional<Circle>> faceCircles;  // per face; nullopt = outer
  Circle outerCircle;                              // unit circle at the origin
  std::vector<Point2> contactPoints;               // per edge id
  PackingResiduals residuals;
  double tol = 1e-10;
};

/// Iterative angle-sum radius adjustment on the vertex-face kite structure,
/// then center layout by traversal. Normalization: outer circle = unit circle
/// at the origin, first outer edge contact anchored at (1, 0).
/// Throws ClassificationError unless emb.graph is planar and 3-connected,
/// ConvergenceError when the residual target is not met within maxIter sweeps.
PrimalDualPacking computePacking(const PlaneEmbedding& emb, double tol = 1e-10,
                                 int maxIter = 200000);

/// The strongly monotone drawing of Theorem 1: vertices at their circle
/// centers.
Drawing drawingFromPacking(const PrimalDualPacking& p);

/// Witness path for the pair (u, v) from the partition of segment p_u p_v
/// into vertex and face disk regions, with the upper/lower chain rule and
/// explicit degeneracy handling (vertex center on the segment, contact point
/// on the segment, face center on the segment).
std::vector<int> witnessFromPacking(const PrimalDualPacking& p, int u, int v);

}  // namespace monodraw
