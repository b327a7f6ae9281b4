#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace monodraw {

/// Simple undirected graph with vertex ids 0..n-1 and indexed edges.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n) {}

  int vertexCount() const { return n_; }
  int edgeCount() const { return static_cast<int>(edges_.size()); }

  /// Adds the edge (a, b); rejects loops and duplicates. Returns the edge id.
  int addEdge(int a, int b);

  bool hasEdge(int a, int b) const;
  /// Edge id of (a, b), or -1.
  int edgeId(int a, int b) const;

  const std::pair<int, int>& edge(int e) const { return edges_[e]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int otherEnd(int e, int v) const {
    return edges_[e].first == v ? edges_[e].second : edges_[e].first;
  }

  bool isConnected() const;
  /// Connected after deleting the given vertices (ignoring them entirely).
  bool isConnectedWithout(const std::vector<int>& removed) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;  // neighbor vertex ids
};

/// A face as the cyclic sequence of darts (directed edges) on its boundary.
struct Face {
  std::vector<int> vertices;  // boundary cycle, vertices[i] -> vertices[i+1]
  std::vector<int> edgeIds;   // edgeIds[i] joins vertices[i] and vertices[i+1]
  int length() const { return static_cast<int>(vertices.size()); }
};

/// Combinatorial embedding: a rotation system plus a designated outer face.
struct PlaneEmbedding {
  Graph graph;
  /// rotation[v] = cyclic order of neighbor vertices around v.
  std::vector<std::vector<int>> rotation;
  int outerFace = 0;

  /// Index of u in rotation[v], or -1.
  int rotIndex(int v, int u) const;
  /// Successor of u in the cyclic order around v.
  int rotNext(int v, int u) const;
  int rotPrev(int v, int u) const;
};

struct FacesResult {
  std::vector<Face> faces;
  /// faceAt[v][i] = face to the left of dart v -> rotation[v][i] under the
  /// traversal rule nextDart(u->v) = (v, rotNext(v, u)).
  std::vector<std::vector<int>> faceOfDart;
  Graph dual;  // one node per face, one edge per primal edge
  /// dualEdgeOf[e] = edge id in dual corresponding to primal edge e.
  std::vector<int> dualEdgeOf;
};

/// Traverses all faces of an embedding and builds the dual graph.
/// Throws ValidationError on an inconsistent rotation system.
FacesResult facesOf(const PlaneEmbedding& emb);

struct ClassTags {
  bool tree = false;
  bool irreducibleTree = false;
  bool outerplanar = false;
  bool twoTree = false;
  bool planar3Connected = false;
};

/// Recognizes the supported graph classes. Throws ValidationError if g is
/// disconnected or empty.
ClassTags classify(const Graph& g);

bool isPlanar(const Graph& g);
bool isThreeConnected(const Graph& g);

/// Planar embedding of a connected planar graph (Demoucron-style incremental
/// insertion). Returns nullopt when g is not planar. The outer face of the
/// returned embedding is arbitrary (longest face, lowest id on ties).
std::optional<PlaneEmbedding> planarEmbedding(const Graph& g);

/// Embedding of an outerplanar graph with every vertex on the outer face.
/// Throws ClassificationError when g is not outerplanar.
PlaneEmbedding outerplanarEmbedding(const Graph& g);

/// One construction step of a 2-tree: all vertices stacked onto one edge.
struct StackingStep {
  std::pair<int, int> activeEdge;
  std::vector<int> stackedVertices;
};

struct StackingPlan {
  std::pair<int, int> baseEdge;
  std::vector<StackingStep> steps;  // in activation order; every edge appears once
};

/// Decomposes a 2-tree into its stacking plan (deterministic: peel the
/// lowest-id eligible vertex, reverse the order).
/// Throws ClassificationError when g is not a 2-tree.
StackingPlan twoTreePlan(const Graph& g);

/// Rebuilds the edge set described by a stacking plan (for round-trip checks).
Graph replayStackingPlan(const StackingPlan& plan, int n);

}  // namespace monodraw
