#pragma once

#include <vector>

#include "monodraw/graph.hpp"
#include "monodraw/verifier.hpp"

namespace monodraw {

/// Embedding with two dummy leaves attached to every original vertex inside
/// the outer face. Vertices 0..originalN-1 are the originals; the dummies of
/// vertex v are originalN + 2v and originalN + 2v + 1.
struct AugmentedEmbedding {
  PlaneEmbedding emb;
  int originalN = 0;
};

/// Adds the dummy vertices of Theorem 3: the augmented graph is outerplanar
/// and has no vertex of degree 2.
AugmentedEmbedding augmentWithDummies(const PlaneEmbedding& emb);

struct SpanningTreeResult {
  Graph tree;
  std::vector<std::vector<int>> rotation;  // inherited from the host embedding
  std::vector<bool> inTree;                // indexed by host edge id
};

/// Spanning tree of the augmented graph keeping every dummy edge (so no tree
/// vertex has degree 2) together with the inherited rotation.
SpanningTreeResult spanningTreeRespectingRotation(const PlaneEmbedding& embH);

/// Adds the non-tree edges of embH back into the tree drawing (positions are
/// unchanged; each insertion is checked to split one face into two strictly
/// convex faces). Returns the drawing of the full augmented graph.
/// Throws InvariantError when an insertion breaks convexity.
Drawing reinsertEdges(const Drawing& treeDrawing, const PlaneEmbedding& embH,
                      const std::vector<bool>& inTree);

/// Convex strongly monotone drawing of a connected outerplanar graph
/// (Theorem 3). Throws ClassificationError when g is not outerplanar.
Drawing drawOuterplanar(const Graph& g);

}  // namespace monodraw
