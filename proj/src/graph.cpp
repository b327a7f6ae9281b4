#include "monodraw/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "monodraw/errors.hpp"

namespace monodraw {

int Graph::addEdge(int a, int b) {
  if (a == b) throw ValidationError("loop edge rejected");
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw ValidationError("edge endpoint out of range");
  if (hasEdge(a, b)) throw ValidationError("duplicate edge rejected");
  if (static_cast<int>(adj_.size()) < n_) adj_.resize(n_);
  if (a > b) std::swap(a, b);
  edges_.emplace_back(a, b);
  adj_[a].push_back(b);
  adj_[b].push_back(a);
  return static_cast<int>(edges_.size()) - 1;
}

bool Graph::hasEdge(int a, int b) const { return edgeId(a, b) >= 0; }

int Graph::edgeId(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (int e = 0; e < edgeCount(); ++e)
    if (edges_[e].first == a && edges_[e].second == b) return e;
  return -1;
}

bool Graph::isConnected() const { return isConnectedWithout({}); }

bool Graph::isConnectedWithout(const std::vector<int>& removed) const {
  if (n_ == 0) return false;
  std::vector<bool> gone(n_, false);
  for (int v : removed) gone[v] = true;
  int start = -1, alive = 0;
  for (int v = 0; v < n_; ++v)
    if (!gone[v]) {
      if (start < 0) start = v;
      ++alive;
    }
  if (alive <= 1) return true;
  std::vector<bool> seen(n_, false);
  std::queue<int> q;
  q.push(start);
  seen[start] = true;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (static_cast<int>(adj_.size()) <= v) continue;
    for (int w : adj_[v]) {
      if (!gone[w] && !seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
    }
  }
  return count == alive;
}

int PlaneEmbedding::rotIndex(int v, int u) const {
  const auto& r = rotation[v];
  for (int i = 0; i < static_cast<int>(r.size()); ++i)
    if (r[i] == u) return i;
  return -1;
}

int PlaneEmbedding::rotNext(int v, int u) const {
  const int i = rotIndex(v, u);
  if (i < 0) throw ValidationError("rotNext: vertex not in rotation");
  const auto& r = rotation[v];
  return r[(i + 1) % r.size()];
}

int PlaneEmbedding::rotPrev(int v, int u) const {
  const int i = rotIndex(v, u);
  if (i < 0) throw ValidationError("rotPrev: vertex not in rotation");
  const auto& r = rotation[v];
  return r[(i + static_cast<int>(r.size()) - 1) % r.size()];
}

FacesResult facesOf(const PlaneEmbedding& emb) {
  const Graph& g = emb.graph;
  const int n = g.vertexCount();
  if (static_cast<int>(emb.rotation.size()) != n)
    throw ValidationError("facesOf: rotation size mismatch");
  for (int v = 0; v < n; ++v) {
    std::vector<int> a = g.neighbors(v), r = emb.rotation[v];
    std::sort(a.begin(), a.end());
    std::sort(r.begin(), r.end());
    if (a != r) throw ValidationError("facesOf: rotation is not a permutation of the neighbors");
  }

  FacesResult res;
  res.faceOfDart.assign(n, {});
  for (int v = 0; v < n; ++v) res.faceOfDart[v].assign(emb.rotation[v].size(), -1);

  auto dartFace = [&](int v, int i) -> int& { return res.faceOfDart[v][i]; };

  for (int v0 = 0; v0 < n; ++v0) {
    for (int i0 = 0; i0 < static_cast<int>(emb.rotation[v0].size()); ++i0) {
      if (dartFace(v0, i0) >= 0) continue;
      Face face;
      const int fid = static_cast<int>(res.faces.size());
      int u = v0, i = i0;
      do {
        int v = emb.rotation[u][i];
        dartFace(u, i) = fid;
        face.vertices.push_back(u);
        face.edgeIds.push_back(g.edgeId(u, v));
        // next dart: (v, rotNext(v, u))
        int j = emb.rotIndex(v, u);
        if (j < 0) throw ValidationError("facesOf: asymmetric rotation");
        j = (j + 1) % static_cast<int>(emb.rotation[v].size());
        u = v;
        i = j;
      } while (!(u == v0 && i == i0));
      res.faces.push_back(std::move(face));
    }
  }

  // Euler check per connected component count.
  int components = 0;
  {
    std::vector<bool> seen(n, false);
    for (int v = 0; v < n; ++v) {
      if (seen[v]) continue;
      ++components;
      std::queue<int> q;
      q.push(v);
      seen[v] = true;
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int w : g.neighbors(x))
          if (!seen[w]) {
            seen[w] = true;
            q.push(w);
          }
      }
    }
  }
  const int f = static_cast<int>(res.faces.size());
  if (n - g.edgeCount() + f != 1 + components)
    throw ValidationError("facesOf: rotation system violates Euler's formula");

  res.dual = Graph(f);
  res.dualEdgeOf.assign(g.edgeCount(), -1);
  // Each primal edge has two darts; find the two faces they lie on.
  std::vector<std::pair<int, int>> sides(g.edgeCount(), {-1, -1});
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < static_cast<int>(emb.rotation[v].size()); ++i) {
      const int e = g.edgeId(v, emb.rotation[v][i]);
      if (sides[e].first < 0)
        sides[e].first = res.faceOfDart[v][i];
      else
        sides[e].second = res.faceOfDart[v][i];
    }
  }
  for (int e = 0; e < g.edgeCount(); ++e) {
    auto [fa, fb] = sides[e];
    if (fa != fb && !res.dual.hasEdge(fa, fb))
      res.dualEdgeOf[e] = res.dual.addEdge(fa, fb);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Planarity / embedding (Demoucron-style incremental path insertion)
// ---------------------------------------------------------------------------

namespace {

// Embeds a 2-connected graph; returns per-vertex rotation or nullopt.
std::optional<std::vector<std::vector<int>>> embedBiconnected(const Graph& g) {
  const int n = g.vertexCount();
  const int m = g.edgeCount();
  if (m > 3 * n - 6 && n >= 3) return std::nullopt;

  // Initial cycle: close a BFS-tree non-tree edge through the LCA.
  std::vector<int> cycle;
  {
    std::vector<int> parent(n, -1), depth(n, -1);
    std::queue<int> q;
    q.push(0);
    depth[0] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbors(v))
        if (depth[w] < 0) {
          depth[w] = depth[v] + 1;
          parent[w] = v;
          q.push(w);
        }
    }
    std::pair<int, int> nonTree = {-1, -1};
    for (const auto& [a, b] : g.edges())
      if (parent[a] != b && parent[b] != a) {
        nonTree = {a, b};
        break;
      }
    if (nonTree.first < 0) return std::nullopt;  // acyclic, not 2-connected
    int a = nonTree.first, b = nonTree.second;
    std::vector<int> pa, pb;
    while (depth[a] > depth[b]) {
      pa.push_back(a);
      a = parent[a];
    }
    while (depth[b] > depth[a]) {
      pb.push_back(b);
      b = parent[b];
    }
    while (a != b) {
      pa.push_back(a);
      pb.push_back(b);
      a = parent[a];
      b = parent[b];
    }
    pa.push_back(a);  // the LCA
    cycle = pa;
    cycle.insert(cycle.end(), pb.rbegin(), pb.rend());
  }

  std::vector<bool> inH(n, false);
  std::vector<bool> edgeInH(m, false);
  for (size_t i = 0; i < cycle.size(); ++i) {
    inH[cycle[i]] = true;
    edgeInH[g.edgeId(cycle[i], cycle[(i + 1) % cycle.size()])] = true;
  }
  std::vector<std::vector<int>> faces;  // directed vertex cycles
  faces.push_back(cycle);
  std::vector<int> rev(cycle.rbegin(), cycle.rend());
  faces.push_back(rev);

  int embedded = static_cast<int>(cycle.size());

  struct Fragment {
    std::vector<int> path;  // attachment, interior..., attachment
    std::set<int> attachments;
  };

  while (embedded < m) {
    // Collect fragments of G relative to H.
    std::vector<Fragment> frags;
    // (a) single edges between H-vertices
    for (int e = 0; e < m; ++e) {
      if (edgeInH[e]) continue;
      auto [a, b] = g.edge(e);
      if (inH[a] && inH[b]) {
        Fragment fr;
        fr.path = {a, b};
        fr.attachments = {a, b};
        frags.push_back(std::move(fr));
      }
    }
    // (b) components of G - V(H)
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int v = 0; v < n; ++v) {
      if (inH[v] || comp[v] >= 0) continue;
      std::queue<int> q;
      q.push(v);
      comp[v] = nc;
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int w : g.neighbors(x))
          if (!inH[w] && comp[w] < 0) {
            comp[w] = nc;
            q.push(w);
          }
      }
      ++nc;
    }
    std::vector<Fragment> compFrags(nc);
    for (int v = 0; v < n; ++v) {
      if (comp[v] < 0) continue;
      for (int w : g.neighbors(v))
        if (inH[w]) compFrags[comp[v]].attachments.insert(w);
    }
    for (int c = 0; c < nc; ++c) {
      Fragment& fr = compFrags[c];
      if (fr.attachments.size() < 2) return std::nullopt;  // not 2-connected
      // BFS from one attachment through the component to another attachment.
      int a = *fr.attachments.begin();
      std::map<int, int> pred;
      std::queue<int> q;
      for (int w : g.neighbors(a))
        if (comp[w] == c && !pred.count(w)) {
          pred[w] = a;
          q.push(w);
        }
      int b = -1;
      while (!q.empty() && b < 0) {
        int x = q.front();
        q.pop();
        for (int w : g.neighbors(x)) {
          if (inH[w] && w != a) {
            pred[w] = x;
            b = w;
            break;
          }
          if (comp[w] == c && !pred.count(w)) {
            pred[w] = x;
            q.push(w);
          }
        }
      }
      if (b < 0) return std::nullopt;
      std::vector<int> path;
      for (int x = b; x != a; x = pred[x]) path.push_back(x);
      path.push_back(a);
      std::reverse(path.begin(), path.end());
      fr.path = std::move(path);
      frags.push_back(std::move(fr));
    }

    if (frags.empty()) return std::nullopt;  // should not happen for connected G

    // Admissible faces per fragment.
    int pick = -1, pickFace = -1;
    size_t bestCount = SIZE_MAX;
    for (size_t fi = 0; fi < frags.size(); ++fi) {
      size_t count = 0;
      int firstFace = -1;
      for (size_t k = 0; k < faces.size(); ++k) {
        std::set<int> fv(faces[k].begin(), faces[k].end());
        bool ok = true;
        for (int a : frags[fi].attachments)
          if (!fv.count(a)) {
            ok = false;
            break;
          }
        if (ok) {
          ++count;
          if (firstFace < 0) firstFace = static_cast<int>(k);
        }
      }
      if (count == 0) return std::nullopt;  // nonplanar
      if (count < bestCount) {
        bestCount = count;
        pick = static_cast<int>(fi);
        pickFace = firstFace;
        if (count == 1) break;
      }
    }

    // Embed the picked fragment's path into the face, splitting it.
    const std::vector<int>& P = frags[pick].path;
    std::vector<int> F = faces[pickFace];
    const int k = static_cast<int>(F.size());
    int ia = -1, ib = -1;
    for (int i = 0; i < k; ++i) {
      if (F[i] == P.front()) ia = i;
      if (F[i] == P.back()) ib = i;
    }
    std::vector<int> f1(P.begin(), P.end());  // a..b then F from b+1 .. a-1
    for (int i = (ib + 1) % k; i != ia; i = (i + 1) % k) f1.push_back(F[i]);
    std::vector<int> f2(P.rbegin(), P.rend());  // b..a then F from a+1 .. b-1
    for (int i = (ia + 1) % k; i != ib; i = (i + 1) % k) f2.push_back(F[i]);
    faces[pickFace] = std::move(f1);
    faces.push_back(std::move(f2));

    for (size_t i = 0; i + 1 < P.size(); ++i) {
      edgeInH[g.edgeId(P[i], P[i + 1])] = true;
      ++embedded;
    }
    for (int v : P) inH[v] = true;
  }

  // Derive the rotation system from the directed face cycles.
  std::vector<std::map<int, int>> nextAround(n);  // at v: incoming u -> outgoing w
  for (const auto& F : faces) {
    const int k = static_cast<int>(F.size());
    for (int i = 0; i < k; ++i) {
      int u = F[i], v = F[(i + 1) % k], w = F[(i + 2) % k];
      nextAround[v][u] = w;
    }
  }
  std::vector<std::vector<int>> rotation(n);
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0) continue;
    int u0 = g.neighbors(v)[0];
    int u = u0;
    do {
      rotation[v].push_back(u);
      auto it = nextAround[v].find(u);
      if (it == nextAround[v].end()) return std::nullopt;
      u = it->second;
    } while (u != u0 && static_cast<int>(rotation[v].size()) <= g.degree(v));
    if (static_cast<int>(rotation[v].size()) != g.degree(v)) return std::nullopt;
  }
  return rotation;
}

// Biconnected components as edge lists (DFS lowpoint).
std::vector<std::vector<int>> biconnectedComponents(const Graph& g) {
  const int n = g.vertexCount();
  std::vector<int> num(n, -1), low(n, 0), parentV(n, -1);
  std::vector<std::vector<int>> blocks;
  std::vector<int> edgeStack;
  int counter = 0;

  struct Frame {
    int v;
    size_t i;
  };
  for (int root = 0; root < n; ++root) {
    if (num[root] >= 0) continue;
    std::vector<Frame> st = {{root, 0}};
    num[root] = counter++;
    low[root] = num[root];
    while (!st.empty()) {
      Frame& fr = st.back();
      int v = fr.v;
      if (fr.i < g.neighbors(v).size()) {
        int w = g.neighbors(v)[fr.i++];
        int e = g.edgeId(v, w);
        if (num[w] < 0) {
          edgeStack.push_back(e);
          parentV[w] = v;
          num[w] = counter++;
          low[w] = num[w];
          st.push_back({w, 0});
        } else if (num[w] < num[v] && w != parentV[v]) {
          edgeStack.push_back(e);
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        st.pop_back();
        if (!st.empty()) {
          int p = st.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] >= num[p]) {
            // p is a cut vertex (or root); pop the block.
            std::vector<int> block;
            int pe = g.edgeId(p, v);
            while (!edgeStack.empty()) {
              int e = edgeStack.back();
              edgeStack.pop_back();
              block.push_back(e);
              if (e == pe) break;
            }
            blocks.push_back(std::move(block));
          }
        }
      }
    }
  }
  return blocks;
}

}  // namespace

std::optional<PlaneEmbedding> planarEmbedding(const Graph& g) {
  const int n = g.vertexCount();
  if (n == 0) return std::nullopt;

  std::vector<std::vector<int>> rotation(n);
  for (const auto& block : biconnectedComponents(g)) {
    if (block.size() == 1) {
      auto [a, b] = g.edge(block[0]);
      rotation[a].push_back(b);
      rotation[b].push_back(a);
      continue;
    }
    // Induced subgraph of the block.
    std::set<int> vs;
    for (int e : block) {
      vs.insert(g.edge(e).first);
      vs.insert(g.edge(e).second);
    }
    std::vector<int> toLocal(n, -1), toGlobal(vs.begin(), vs.end());
    for (size_t i = 0; i < toGlobal.size(); ++i) toLocal[toGlobal[i]] = static_cast<int>(i);
    Graph sub(static_cast<int>(toGlobal.size()));
    for (int e : block) sub.addEdge(toLocal[g.edge(e).first], toLocal[g.edge(e).second]);
    auto rot = embedBiconnected(sub);
    if (!rot) return std::nullopt;
    for (size_t i = 0; i < toGlobal.size(); ++i)
      for (int u : (*rot)[i]) rotation[toGlobal[i]].push_back(toGlobal[u]);
  }

  PlaneEmbedding emb;
  emb.graph = g;
  emb.rotation = std::move(rotation);
  // Default outer face: longest boundary, lowest id on ties.
  if (g.edgeCount() > 0) {
    FacesResult fr = facesOf(emb);
    int best = 0;
    for (size_t i = 1; i < fr.faces.size(); ++i)
      if (fr.faces[i].length() > fr.faces[best].length()) best = static_cast<int>(i);
    emb.outerFace = best;
  }
  return emb;
}

bool isPlanar(const Graph& g) { return planarEmbedding(g).has_value(); }

bool isThreeConnected(const Graph& g) {
  const int n = g.vertexCount();
  if (n < 4) return false;
  if (!g.isConnected()) return false;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!g.isConnectedWithout({a, b})) return false;
  return true;
}

namespace {

// Peels degree-2 vertices with adjacent neighbors; returns peel order with
// the neighbor pair at peel time, or nullopt when g is not a 2-tree.
std::optional<std::vector<std::tuple<int, int, int>>> peelTwoTree(const Graph& g) {
  const int n = g.vertexCount();
  if (n < 2) return std::nullopt;
  if (g.edgeCount() != 2 * n - 3 && n >= 2) {
    if (!(n == 2 && g.edgeCount() == 1)) return std::nullopt;
  }
  std::vector<std::set<int>> adj(n);
  for (const auto& [a, b] : g.edges()) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<bool> gone(n, false);
  std::vector<std::tuple<int, int, int>> order;
  for (int round = 0; round < n - 2; ++round) {
    int pick = -1;
    for (int v = 0; v < n && pick < 0; ++v) {
      if (gone[v] || adj[v].size() != 2) continue;
      auto it = adj[v].begin();
      int a = *it++, b = *it;
      if (adj[a].count(b)) pick = v;
    }
    if (pick < 0) return std::nullopt;
    auto it = adj[pick].begin();
    int a = *it++, b = *it;
    order.emplace_back(pick, a, b);
    adj[a].erase(pick);
    adj[b].erase(pick);
    adj[pick].clear();
    gone[pick] = true;
  }
  // Exactly one edge must remain.
  int remaining = 0;
  for (int v = 0; v < n; ++v)
    if (!gone[v]) remaining += static_cast<int>(adj[v].size());
  if (remaining != 2) return std::nullopt;
  return order;
}

}  // namespace

ClassTags classify(const Graph& g) {
  const int n = g.vertexCount();
  if (n == 0) throw ValidationError("classify: empty graph");
  if (!g.isConnected()) throw ValidationError("classify: graph must be connected");

  ClassTags tags;
  tags.tree = g.edgeCount() == n - 1;
  if (tags.tree) {
    tags.irreducibleTree = true;
    for (int v = 0; v < n; ++v)
      if (g.degree(v) == 2) tags.irreducibleTree = false;
  }
  tags.twoTree = peelTwoTree(g).has_value();

  // Outerplanar iff the apex extension is planar.
  {
    Graph apexed(n + 1);
    for (const auto& [a, b] : g.edges()) apexed.addEdge(a, b);
    for (int v = 0; v < n; ++v) apexed.addEdge(v, n);
    tags.outerplanar = isPlanar(apexed);
  }
  tags.planar3Connected = isThreeConnected(g) && isPlanar(g);
  return tags;
}

PlaneEmbedding outerplanarEmbedding(const Graph& g) {
  const int n = g.vertexCount();
  if (n == 0) throw ValidationError("outerplanarEmbedding: empty graph");
  if (!g.isConnected()) throw ValidationError("outerplanarEmbedding: graph must be connected");

  Graph apexed(n + 1);
  for (const auto& [a, b] : g.edges()) apexed.addEdge(a, b);
  for (int v = 0; v < n; ++v) apexed.addEdge(v, n);
  auto embA = planarEmbedding(apexed);
  if (!embA) throw ClassificationError("graph is not outerplanar");

  PlaneEmbedding emb;
  emb.graph = g;
  emb.rotation.resize(n);
  for (int v = 0; v < n; ++v)
    for (int u : embA->rotation[v])
      if (u != n) emb.rotation[v].push_back(u);

  if (g.edgeCount() > 0) {
    FacesResult fr = facesOf(emb);
    int outer = -1;
    for (size_t i = 0; i < fr.faces.size(); ++i) {
      std::set<int> fv(fr.faces[i].vertices.begin(), fr.faces[i].vertices.end());
      if (static_cast<int>(fv.size()) == n) outer = static_cast<int>(i);
    }
    if (outer < 0) throw InvariantError("outerplanarEmbedding: no face visits every vertex");
    emb.outerFace = outer;
  }
  return emb;
}

StackingPlan twoTreePlan(const Graph& g) {
  auto peel = peelTwoTree(g);
  if (!peel) throw ClassificationError("graph is not a 2-tree");

  auto key = [](int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };

  // Index the edges and the triangles of the construction (one per peeled
  // vertex); together they form a bipartite tree under incidence.
  std::vector<std::pair<int, int>> edgeOf;
  std::map<std::pair<int, int>, int> edgeId;
  for (const auto& [a, b] : g.edges()) {
    edgeId[key(a, b)] = static_cast<int>(edgeOf.size());
    edgeOf.push_back(key(a, b));
  }
  const int m = static_cast<int>(edgeOf.size());
  const int t = static_cast<int>(peel->size());
  std::vector<std::vector<int>> adj(m + t);  // 0..m-1 edges, m.. triangles
  for (int i = 0; i < t; ++i) {
    auto [w, a, b] = (*peel)[i];
    for (auto e : {key(a, b), key(a, w), key(b, w)}) {
      adj[edgeId.at(e)].push_back(m + i);
      adj[m + i].push_back(edgeId.at(e));
    }
  }

  // Base edge: center of the bipartite tree among edge nodes, so the chain of
  // dependent stacking steps is as shallow as possible.
  int base = 0;
  int bestEcc = m + t + 1;
  for (int s = 0; s < m; ++s) {
    std::vector<int> dist(m + t, -1);
    std::vector<int> q = {s};
    dist[s] = 0;
    int ecc = 0;
    for (size_t h = 0; h < q.size(); ++h)
      for (int u : adj[q[h]])
        if (dist[u] < 0) {
          dist[u] = dist[q[h]] + 1;
          ecc = std::max(ecc, dist[u]);
          q.push_back(u);
        }
    if (ecc < bestEcc) {
      bestEcc = ecc;
      base = s;
    }
  }

  // Root the tree at the base edge; each triangle's far vertex is stacked on
  // the edge through which the triangle was reached.
  StackingPlan plan;
  plan.baseEdge = edgeOf[base];
  std::vector<bool> seen(m + t, false);
  std::vector<int> order = {base};
  seen[base] = true;
  for (size_t h = 0; h < order.size(); ++h) {
    const auto [a, b] = edgeOf[order[h]];
    StackingStep step;
    step.activeEdge = {a, b};
    for (int tn : adj[order[h]]) {
      if (seen[tn]) continue;
      seen[tn] = true;
      auto [w0, a0, b0] = (*peel)[tn - m];
      int w = w0 + a0 + b0 - a - b;
      step.stackedVertices.push_back(w);
      for (auto e : {key(a, w), key(b, w)}) {
        const int id = edgeId.at(e);
        if (!seen[id]) {
          seen[id] = true;
          order.push_back(id);
        }
      }
    }
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

Graph replayStackingPlan(const StackingPlan& plan, int n) {
  Graph g(n);
  g.addEdge(plan.baseEdge.first, plan.baseEdge.second);
  for (const auto& step : plan.steps) {
    for (int w : step.stackedVertices) {
      g.addEdge(step.activeEdge.first, w);
      g.addEdge(step.activeEdge.second, w);
    }
  }
  return g;
}

}  // namespace monodraw
