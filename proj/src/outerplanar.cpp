#include "monodraw/outerplanar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "monodraw/errors.hpp"
#include "monodraw/tree_drawer.hpp"

namespace monodraw {

namespace {

/// The dummy leaves all lie inside the final outer face, so at every
/// intermediate insertion stage the (unique) face containing a degree-1
/// vertex is the outer one. This is combinatorial, unlike an area test,
/// which ties when only one bounded face exists.
int outerFaceByDummies(const Graph& h, const PlaneEmbedding& pe, const FacesResult& fr) {
  for (int v = 0; v < h.vertexCount(); ++v)
    if (h.degree(v) == 1) return fr.faceOfDart[v][0];
  throw InvariantError("outerFaceByDummies: host graph has no dummy leaves");
}

PlaneEmbedding restrictEmbedding(const PlaneEmbedding& embH, const Graph& sub) {
  PlaneEmbedding e;
  e.graph = sub;
  e.rotation.resize(sub.vertexCount());
  for (int v = 0; v < sub.vertexCount(); ++v)
    for (int u : embH.rotation[v])
      if (sub.hasEdge(v, u)) e.rotation[v].push_back(u);
  return e;
}

bool visitsAllOnce(const Face& f, int n) {
  if (f.length() != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : f.vertices) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// Biconnected case: the outer face is a Hamiltonian cycle. Place it as a
/// regular n-gon in boundary order and reinsert the chords one at a time with
/// the same per-insertion strict-convexity check as reinsertEdges. Every
/// chordal path along the shorter boundary arc is strictly monotone, so the
/// result is strongly monotone with slack on the order of pi/n. Unlike the
/// dummy-tree pipeline this stays well-conditioned at n = 25 and beyond.
Drawing drawFromOuterCycle(const Graph& g, const PlaneEmbedding& emb, const Face& outer) {
  const int n = g.vertexCount();
  Drawing d;
  d.pos.assign(n, {});
  for (int i = 0; i < n; ++i) {
    const double phi = kTwoPi * i / n;
    d.pos[outer.vertices[i]] = {std::cos(phi), std::sin(phi)};
  }

  Graph current(n);
  for (int i = 0; i < n; ++i)
    current.addEdge(outer.vertices[i], outer.vertices[(i + 1) % n]);
  for (int e = 0; e < g.edgeCount(); ++e) {  // chords in ascending edge id
    const auto& [a, b] = g.edge(e);
    if (current.hasEdge(a, b)) continue;
    current.addEdge(a, b);
    d.graph = current;
    PlaneEmbedding pe = restrictEmbedding(emb, current);
    FacesResult fr = facesOf(pe);
    const int fa = fr.faceOfDart[a][pe.rotIndex(a, b)];
    const int fb = fr.faceOfDart[b][pe.rotIndex(b, a)];
    for (int f : {fa, fb}) {
      if (visitsAllOnce(fr.faces[f], n)) continue;  // full boundary = outer face
      if (!faceStrictlyConvex(d, fr.faces[f].vertices))
        throw InvariantError("drawOuterplanar: chord insertion created a non-convex face");
    }
  }
  d.graph = g;
  return d;
}

}  // namespace

AugmentedEmbedding augmentWithDummies(const PlaneEmbedding& emb) {
  const Graph& g = emb.graph;
  const int n = g.vertexCount();
  FacesResult fr = facesOf(emb);

  Graph h(n + 2 * n);
  for (const auto& [a, b] : g.edges()) h.addEdge(a, b);

  AugmentedEmbedding out;
  out.originalN = n;
  out.emb.graph = h;  // edges of the dummies added below
  out.emb.rotation.assign(n + 2 * n, {});

  for (int v = 0; v < n; ++v) {
    const int d1 = n + 2 * v, d2 = n + 2 * v + 1;
    out.emb.graph.addEdge(v, d1);
    out.emb.graph.addEdge(v, d2);
    // Corner of the outer face at v: the corner before rotation[v][j] belongs
    // to the face of the dart v -> rotation[v][j].
    int j = -1;
    for (size_t i = 0; i < emb.rotation[v].size(); ++i)
      if (fr.faceOfDart[v][i] == emb.outerFace) {
        j = static_cast<int>(i);
        break;
      }
    if (j < 0) throw InvariantError("augmentWithDummies: vertex not on the outer face");
    std::vector<int> rot(emb.rotation[v].begin(), emb.rotation[v].begin() + j);
    rot.push_back(d1);
    rot.push_back(d2);
    rot.insert(rot.end(), emb.rotation[v].begin() + j, emb.rotation[v].end());
    out.emb.rotation[v] = std::move(rot);
    out.emb.rotation[d1] = {v};
    out.emb.rotation[d2] = {v};
  }

  // The dummies lie on the outer face only; the face containing the first
  // dummy is the outer face of the augmented embedding.
  FacesResult frH = facesOf(out.emb);
  out.emb.outerFace = frH.faceOfDart[n][0];
  for (int v = 0; v < out.emb.graph.vertexCount(); ++v)
    if (out.emb.graph.degree(v) == 2)
      throw InvariantError("augmentWithDummies: degree-2 vertex survived");
  return out;
}

SpanningTreeResult spanningTreeRespectingRotation(const PlaneEmbedding& embH) {
  const Graph& h = embH.graph;
  const int n = h.vertexCount();
  SpanningTreeResult res;
  res.inTree.assign(h.edgeCount(), false);

  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  Graph tree(n);
  for (int e = 0; e < h.edgeCount(); ++e) {
    const auto& [a, b] = h.edge(e);
    const int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    uf[ra] = rb;
    tree.addEdge(a, b);
    res.inTree[e] = true;
  }
  if (tree.edgeCount() != n - 1)
    throw ValidationError("spanningTreeRespectingRotation: host graph disconnected");

  res.rotation.resize(n);
  for (int v = 0; v < n; ++v)
    for (int u : embH.rotation[v])
      if (tree.hasEdge(v, u)) res.rotation[v].push_back(u);
  for (int v = 0; v < n; ++v)
    if (tree.degree(v) == 2)
      throw InvariantError("spanningTreeRespectingRotation: tree vertex of degree 2");
  res.tree = std::move(tree);
  return res;
}

Drawing reinsertEdges(const Drawing& treeDrawing, const PlaneEmbedding& embH,
                      const std::vector<bool>& inTree) {
  const Graph& h = embH.graph;
  if (static_cast<int>(treeDrawing.pos.size()) != h.vertexCount())
    throw ValidationError("reinsertEdges: drawing size mismatch");

  Graph current(h.vertexCount());
  for (int e = 0; e < h.edgeCount(); ++e)
    if (inTree[e]) current.addEdge(h.edge(e).first, h.edge(e).second);

  Drawing d;
  d.pos = treeDrawing.pos;
  for (int e = 0; e < h.edgeCount(); ++e) {
    if (inTree[e]) continue;
    const auto& [a, b] = h.edge(e);
    current.addEdge(a, b);
    // The insertion must split one face into two strictly convex faces.
    PlaneEmbedding pe = restrictEmbedding(embH, current);
    d.graph = current;
    FacesResult fr = facesOf(pe);
    const int outer = outerFaceByDummies(h, pe, fr);
    const int fa = fr.faceOfDart[a][pe.rotIndex(a, b)];
    const int fb = fr.faceOfDart[b][pe.rotIndex(b, a)];
    for (int f : {fa, fb}) {
      if (f == outer) continue;
      // The realized orientation of the host rotation may be mirrored.
      std::vector<int> rev(fr.faces[f].vertices.rbegin(), fr.faces[f].vertices.rend());
      if (!faceStrictlyConvex(d, fr.faces[f].vertices) && !faceStrictlyConvex(d, rev))
        throw InvariantError("reinsertEdges: inserted edge created a non-convex face");
    }
  }
  d.graph = h;
  return d;
}

Drawing drawOuterplanar(const Graph& g) {
  const int n = g.vertexCount();
  if (n == 0) throw ValidationError("drawOuterplanar: empty graph");
  if (!g.isConnected()) throw ValidationError("drawOuterplanar: disconnected graph");
  if (n == 1) {
    Drawing d;
    d.graph = g;
    d.pos = {{0.0, 0.0}};
    return d;
  }
  PlaneEmbedding emb = outerplanarEmbedding(g);  // throws ClassificationError
  if (n >= 3) {
    FacesResult fr = facesOf(emb);
    if (visitsAllOnce(fr.faces[emb.outerFace], n))
      return drawFromOuterCycle(g, emb, fr.faces[emb.outerFace]);
  }
  // Cut vertices present: fall back to the dummy-leaf/spanning-tree pipeline.
  // Its slice radii shrink super-exponentially with host-tree depth, so deep
  // instances may raise PrecisionError.
  AugmentedEmbedding aug = augmentWithDummies(emb);
  SpanningTreeResult st = spanningTreeRespectingRotation(aug.emb);
  Drawing treeDrawing = drawTree(st.tree, st.rotation);
  Drawing full = reinsertEdges(treeDrawing, aug.emb, st.inTree);

  Drawing out;
  out.graph = g;
  out.pos.assign(full.pos.begin(), full.pos.begin() + n);
  return out;
}

}  // namespace monodraw
