#include "generators.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

namespace monodraw::testsupport {

Graph pathGraph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.addEdge(i, i + 1);
  return g;
}

Graph cycleGraph(int n) {
  Graph g = pathGraph(n);
  if (n >= 3) g.addEdge(n - 1, 0);
  return g;
}

Graph starGraph(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.addEdge(0, i);
  return g;
}

Graph completeGraph(int n) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.addEdge(a, b);
  return g;
}

Graph wheelGraph(int rim) {
  Graph g(rim + 1);
  for (int i = 0; i < rim; ++i) {
    g.addEdge(i, (i + 1) % rim);
    g.addEdge(i, rim);
  }
  return g;
}

Graph prismGraph(int k) {
  Graph g(2 * k);
  for (int i = 0; i < k; ++i) {
    g.addEdge(i, (i + 1) % k);
    g.addEdge(k + i, k + (i + 1) % k);
    g.addEdge(i, k + i);
  }
  return g;
}

Graph octahedronGraph() {
  // C4 rim 0..3 plus two hubs 4, 5.
  Graph g(6);
  for (int i = 0; i < 4; ++i) {
    g.addEdge(i, (i + 1) % 4);
    g.addEdge(i, 4);
    g.addEdge(i, 5);
  }
  return g;
}

Graph cubeGraph() { return prismGraph(4); }

Graph randomTree(int n, Rng& rng) {
  Graph g(n);
  if (n == 2) {
    g.addEdge(0, 1);
    return g;
  }
  if (n < 2) return g;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> pruefer(n - 2);
  for (int& x : pruefer) x = pick(rng);
  std::vector<int> deg(n, 1);
  for (int x : pruefer) ++deg[x];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.insert(v);
  for (int x : pruefer) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    g.addEdge(leaf, x);
    if (--deg[x] == 1) leaves.insert(x);
  }
  auto it = leaves.begin();
  int a = *it++;
  g.addEdge(a, *it);
  return g;
}

Graph randomTwoTree(int n, Rng& rng) {
  Graph g(n);
  g.addEdge(0, 1);
  for (int v = 2; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, g.edgeCount() - 1);
    auto [a, b] = g.edge(pick(rng));
    g.addEdge(a, v);
    g.addEdge(b, v);
  }
  return g;
}

namespace {

void triangulateRange(Graph& g, const std::vector<int>& poly, int lo, int hi, Rng& rng) {
  // poly[lo..hi] is a chain whose endpoints are already joined.
  if (hi - lo < 2) return;
  std::uniform_int_distribution<int> pick(lo + 1, hi - 1);
  const int k = pick(rng);
  if (k - lo >= 2) g.addEdge(poly[lo], poly[k]);
  if (hi - k >= 2) g.addEdge(poly[k], poly[hi]);
  triangulateRange(g, poly, lo, k, rng);
  triangulateRange(g, poly, k, hi, rng);
}

}  // namespace

Graph randomMaximalOuterplanar(int n, Rng& rng) {
  if (n <= 2) return pathGraph(n);
  Graph g = cycleGraph(n);
  std::vector<int> poly(n);
  std::iota(poly.begin(), poly.end(), 0);
  triangulateRange(g, poly, 0, n - 1, rng);
  return g;
}

Graph randomConnectedOuterplanar(int n, Rng& rng) {
  Graph full = randomMaximalOuterplanar(n, rng);
  if (n <= 3) return full;
  Graph g(n);
  std::bernoulli_distribution keep(0.6);
  for (const auto& [a, b] : full.edges()) {
    const bool outer = (b - a == 1) || (a == 0 && b == n - 1);
    if (outer || keep(rng)) g.addEdge(a, b);
  }
  return g;
}

Graph randomPlanarTriangulation(int n, Rng& rng) {
  // Stacked triangulation, tracked as a triangle list so we can flip.
  struct Tri {
    std::array<int, 3> v;
  };
  std::vector<Tri> tris = {{{0, 1, 2}}};  // bounded faces; outer face is (0,1,2)
  Graph g = completeGraph(3);
  if (n <= 3) return pathGraph(n <= 1 ? n : n);
  for (int v = 3; v < n; ++v) {
    std::uniform_int_distribution<size_t> pick(0, tris.size() - 1);
    const size_t t = pick(rng);
    auto [a, b, c] = tris[t].v;
    Graph g2(v + 1);
    for (const auto& [x, y] : g.edges()) g2.addEdge(x, y);
    g2.addEdge(a, v);
    g2.addEdge(b, v);
    g2.addEdge(c, v);
    g = std::move(g2);
    tris[t] = {{a, b, v}};
    tris.push_back({{b, c, v}});
    tris.push_back({{a, c, v}});
  }
  // Random diagonal flips for variety (kept simple and 3-connected by
  // refusing flips that would create parallel edges).
  std::uniform_int_distribution<size_t> pickTri(0, tris.size() - 1);
  const int flips = 3 * n;
  for (int it = 0; it < flips; ++it) {
    const size_t i = pickTri(rng);
    const size_t j = pickTri(rng);
    if (i == j) continue;
    std::vector<int> shared, onlyI, onlyJ;
    for (int x : tris[i].v)
      if (std::count(tris[j].v.begin(), tris[j].v.end(), x))
        shared.push_back(x);
      else
        onlyI.push_back(x);
    for (int x : tris[j].v)
      if (!std::count(tris[i].v.begin(), tris[i].v.end(), x)) onlyJ.push_back(x);
    if (shared.size() != 2) continue;
    const int a = shared[0], b = shared[1], c = onlyI[0], dd = onlyJ[0];
    if (g.hasEdge(c, dd)) continue;
    // Keep the outer triangle 0,1,2 intact.
    if ((a == 0 || a == 1 || a == 2) && (b == 0 || b == 1 || b == 2)) {
      std::set<int> o = {a, b};
      if (o.count(0) + o.count(1) + o.count(2) == 2 && n > 3) {
        // flipping an outer-cycle edge is fine only if (a,b) is not an outer edge
        bool outerEdge = (a < 3 && b < 3);
        if (outerEdge) continue;
      }
    }
    Graph g2(g.vertexCount());
    for (const auto& [x, y] : g.edges())
      if (!((x == std::min(a, b) && y == std::max(a, b)))) g2.addEdge(x, y);
    g2.addEdge(c, dd);
    if (!isThreeConnected(g2)) continue;
    g = std::move(g2);
    tris[i] = {{a, c, dd}};
    tris[j] = {{b, c, dd}};
  }
  return g;
}

Graph randomConnectedGraph(int n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (coin(rng)) g.addEdge(a, b);
    if (g.isConnected()) return g;
  }
  return completeGraph(n);
}

Drawing randomDrawing(const Graph& g, Rng& rng, double scale) {
  std::uniform_real_distribution<double> coord(-scale, scale);
  Drawing d;
  d.graph = g;
  d.pos.resize(g.vertexCount());
  for (auto& p : d.pos) p = {coord(rng), coord(rng)};
  return d;
}

namespace {

uint64_t adjacencyMask(const Graph& g, const std::vector<int>& perm) {
  uint64_t mask = 0;
  int bit = 0;
  const int n = g.vertexCount();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++bit)
      if (g.hasEdge(perm[a], perm[b])) mask |= (uint64_t{1} << bit);
  return mask;
}

}  // namespace

std::vector<Graph> connectedGraphClasses(int n) {
  std::vector<Graph> out;
  const int pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> pairList;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairList.emplace_back(a, b);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<uint64_t> seen;
  for (uint64_t mask = 0; mask < (uint64_t{1} << pairs); ++mask) {
    Graph g(n);
    for (int i = 0; i < pairs; ++i)
      if (mask & (uint64_t{1} << i)) g.addEdge(pairList[i].first, pairList[i].second);
    if (!g.isConnected()) continue;
    uint64_t canon = UINT64_MAX;
    std::vector<int> p = perm;
    do {
      canon = std::min(canon, adjacencyMask(g, p));
    } while (std::next_permutation(p.begin(), p.end()));
    if (seen.insert(canon).second) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace monodraw::testsupport
