#include "monodraw/tree_drawer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

#include "monodraw/errors.hpp"

namespace monodraw {

namespace {

void checkRotationSystem(const Graph& g, const std::vector<std::vector<int>>& rot) {
  if (static_cast<int>(rot.size()) != g.vertexCount())
    throw ValidationError("childOrder: wrong vertex count");
  for (int v = 0; v < g.vertexCount(); ++v) {
    std::multiset<int> a(rot[v].begin(), rot[v].end());
    std::multiset<int> b(g.neighbors(v).begin(), g.neighbors(v).end());
    if (a != b) throw ValidationError("childOrder: rotation does not list the neighbors");
  }
}

double coordSpan(const PlacementState& s) {
  double span = 1.0;
  for (int v = 0; v < s.drawing.graph.vertexCount(); ++v)
    if (s.placed[v])
      span = std::max({span, std::abs(s.drawing.pos[v].x), std::abs(s.drawing.pos[v].y)});
  return span;
}

}  // namespace

PlacementState initPlacement(const Graph& t,
                             const std::optional<std::vector<std::vector<int>>>& childOrder) {
  const int n = t.vertexCount();
  if (n < 1 || t.edgeCount() != n - 1 || !t.isConnected())
    throw std::invalid_argument("drawTree: input is not a tree");
  if (childOrder) checkRotationSystem(t, *childOrder);

  PlacementState s;
  s.tree = &t;
  s.drawing.graph = t;
  s.drawing.pos.assign(n, {});
  s.placed.assign(n, false);
  s.parent.assign(n, -1);
  s.children.assign(n, {});

  // Root at a tree center (peel leaf layers until <= 2 remain): the slice
  // radii shrink geometrically with depth, so minimizing the height buys
  // precision headroom. Ties broken toward higher degree, then lower id.
  std::vector<int> deg(n);
  std::vector<bool> peeled(n, false);
  for (int v = 0; v < n; ++v) deg[v] = t.degree(v);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      peeled[v] = true;
      --remaining;
      for (int u : t.neighbors(v))
        if (!peeled[u] && --deg[u] == 1) next.push_back(u);
    }
    layer = std::move(next);
  }
  int root = -1;
  for (int v = 0; v < n; ++v) {
    if (peeled[v]) continue;
    if (root < 0 || t.degree(v) > t.degree(root)) root = v;
  }
  s.root = root;

  // Rooted children order: the prescribed rotation cut after the parent, or
  // plain adjacency order.
  std::deque<int> bfs = {root};
  std::vector<int> bfsOrder;
  std::vector<bool> seen(n, false);
  seen[root] = true;
  while (!bfs.empty()) {
    const int v = bfs.front();
    bfs.pop_front();
    std::vector<int> order = childOrder ? (*childOrder)[v] : t.neighbors(v);
    if (s.parent[v] != -1) {
      auto it = std::find(order.begin(), order.end(), s.parent[v]);
      std::rotate(order.begin(), it, order.end());
      order.erase(order.begin());  // drop the parent, keep ccw order after it
    }
    for (int c : order) {
      if (seen[c]) continue;
      seen[c] = true;
      s.parent[c] = v;
      s.children[v].push_back(c);
      bfs.push_back(c);
    }
    bfsOrder.push_back(v);
  }

  s.subtreeHeight.assign(n, 0);
  for (auto it = bfsOrder.rbegin(); it != bfsOrder.rend(); ++it)
    for (int c : s.children[*it])
      s.subtreeHeight[*it] = std::max(s.subtreeHeight[*it], s.subtreeHeight[c] + 1);

  // Without a prescribed rotation the children order is free: put the tall
  // subtrees at the ends of the placement arc, where the cone sweeps stay
  // wide, and the shallow ones in the middle.
  if (!childOrder) {
    for (int v = 0; v < n; ++v) {
      std::vector<int>& kids = s.children[v];
      std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) {
        return s.subtreeHeight[a] > s.subtreeHeight[b];
      });
      std::vector<int> head, tail;
      for (size_t j = 0; j < kids.size(); ++j)
        (j % 2 == 0 ? head : tail).push_back(kids[j]);
      kids = std::move(head);
      kids.insert(kids.end(), tail.rbegin(), tail.rend());
    }
  }

  // Base case: root at the origin, children on a regular k-gon.
  s.drawing.pos[root] = {0.0, 0.0};
  s.placed[root] = true;
  const int k = static_cast<int>(s.children[root].size());
  for (int j = 0; j < k; ++j) {
    const double phi = kTwoPi * j / k;
    const int c = s.children[root][j];
    s.drawing.pos[c] = {std::cos(phi), std::sin(phi)};
    s.placed[c] = true;
    s.hullLeaves.push_back(c);
  }
  return s;
}

Cone leafCone(const PlacementState& s, int hullIndex) {
  const int l = static_cast<int>(s.hullLeaves.size());
  const int ai = s.hullLeaves[hullIndex];
  const int prev = s.hullLeaves[(hullIndex + l - 1) % l];
  const int next = s.hullLeaves[(hullIndex + 1) % l];
  const Point2 pa = s.drawing.pos[ai];
  Cone c;
  c.apex = pa;
  if (l == 1) {
    // Root of a path: the whole plane minus the parent direction. Use the
    // half-plane beyond the perpendicular of the parent edge.
    const Vec2 dp = pa - s.drawing.pos[s.parent[ai]];
    c.dirLo = -dp.perp();
    c.dirHi = dp.perp();
    return c;
  }
  c.dirLo = (s.drawing.pos[prev] - pa).perp();
  c.dirHi = (pa - s.drawing.pos[next]).perp();
  const Vec2 dp = pa - s.drawing.pos[s.parent[ai]];
  const double sweep = c.sweep();
  const double toProlong = ccwSweep(c.dirLo, dp);
  if (sweep <= 0.0 || toProlong <= 0.0 || toProlong >= sweep)
    throw InvariantError("leafCone: prolongation outside C(a_i) (I2 violated)");
  return c;
}

Cone visibilityCone(const PlacementState& s, int y, int ai) {
  if (y == ai || !s.placed[y] || !s.placed[ai])
    throw std::invalid_argument("visibilityCone: invalid endpoints");
  // Tree path y -> ai through the placement forest (parent pointers).
  std::vector<int> upY = {y}, upA = {ai};
  {
    std::vector<int> depth(2, 0);
    auto depthOf = [&](int v) {
      int d = 0;
      for (int x = v; s.parent[x] != -1; x = s.parent[x]) ++d;
      return d;
    };
    int dy = depthOf(y), da = depthOf(ai);
    int a = y, b = ai;
    while (dy > da) {
      a = s.parent[a];
      upY.push_back(a);
      --dy;
    }
    while (da > dy) {
      b = s.parent[b];
      upA.push_back(b);
      --da;
    }
    while (a != b) {
      a = s.parent[a];
      b = s.parent[b];
      upY.push_back(a);
      upA.push_back(b);
    }
  }
  std::vector<int> path = upY;  // y .. lca
  for (int i = static_cast<int>(upA.size()) - 2; i >= 0; --i) path.push_back(upA[i]);

  const Vec2 toA = s.drawing.pos[ai] - s.drawing.pos[y];
  const double ref = toA.angle();
  double lo = -kPi / 2.0, hi = kPi / 2.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const Vec2 e = s.drawing.pos[path[i + 1]] - s.drawing.pos[path[i]];
    // Relative angle of the edge; I4 guarantees |c| < pi/2.
    double c = e.angle() - ref;
    while (c > kPi) c -= kTwoPi;
    while (c <= -kPi) c += kTwoPi;
    if (std::abs(c) >= kPi / 2.0)
      throw InvariantError("visibilityCone: path not monotone toward a_i (I4 violated)");
    lo = std::max(lo, c - kPi / 2.0);
    hi = std::min(hi, c + kPi / 2.0);
  }
  if (lo >= hi) throw InvariantError("visibilityCone: empty cone");
  return {s.drawing.pos[y], dirFromAngle(ref + lo), dirFromAngle(ref + hi)};
}

void expandLeaf(PlacementState& s, int hullIndex) {
  const int ai = s.hullLeaves[hullIndex];
  const std::vector<int>& kids = s.children[ai];
  const int k = static_cast<int>(kids.size());
  if (k == 0) return;

  const Cone ca = leafCone(s, hullIndex);
  const Point2 pa = s.drawing.pos[ai];
  const Vec2 prolong = (pa - s.drawing.pos[s.parent[ai]]).normalized();

  // delta: radius of an open disk at a_i inside every visibility cone C(y).
  double delta = std::numeric_limits<double>::infinity();
  const int n = s.drawing.graph.vertexCount();
  for (int y = 0; y < n; ++y) {
    if (!s.placed[y] || y == ai) continue;
    delta = std::min(delta, maxDiskRadiusInCone(pa, visibilityCone(s, y, ai)));
  }
  // Fractions close to 1 keep the per-level shrink geometric; any radius < delta
  // and half-width < min sweep preserve I1-I4.
  const double radius = 0.9 * delta;

  const double phi = prolong.angle();
  const double toLo = ccwSweep(ca.dirLo, prolong);
  const double toHi = ccwSweep(prolong, ca.dirHi);
  // The fan may be asymmetric about the prolongation; I1-I4 only need the
  // children strictly inside C(a_i) and on both sides of the prolongation.
  const double hLo = std::min(0.8 * toLo, kPi / 4.0);
  const double hHi = std::min(0.8 * toHi, kPi / 4.0);

  if (!(radius > 1e-3 * kDefaultAngleEps * coordSpan(s)) ||
      !(std::min(hLo, hHi) > 1e-3 * kDefaultAngleEps))
    throw PrecisionError("expandLeaf: pizza slice degenerated below the precision floor");

  // Interior gaps are weighted by subtree height: the visibility slab a
  // sibling leaves for its neighbor's descendants shrinks like gap^2, so
  // every gap next to a deep subtree gets exponentially more room.
  std::vector<double> ang(k, phi);
  if (k > 1) {
    std::vector<double> w(k - 1);
    double total = 0.0;
    for (int j = 0; j + 1 < k; ++j) {
      const int need =
          std::min(std::max(s.subtreeHeight[kids[j]], s.subtreeHeight[kids[j + 1]]), 40);
      total += w[j] = std::exp2(need);
    }
    ang[0] = phi - hLo;
    for (int j = 1; j < k; ++j) ang[j] = ang[j - 1] + (hLo + hHi) * w[j - 1] / total;
  }
  for (int j = 0; j < k; ++j) {
    const int c = kids[j];
    s.drawing.pos[c] = pa + radius * dirFromAngle(ang[j]);
    s.placed[c] = true;
  }
  s.hullLeaves.erase(s.hullLeaves.begin() + hullIndex);
  s.hullLeaves.insert(s.hullLeaves.begin() + hullIndex, kids.begin(), kids.end());
}

Drawing drawTree(const Graph& t, const std::optional<std::vector<std::vector<int>>>& childOrder) {
  const int n = t.vertexCount();
  if (n == 1) {
    Drawing d;
    d.graph = t;
    d.pos = {{0.0, 0.0}};
    return d;
  }
  if (n == 2) {
    if (t.edgeCount() != 1) throw std::invalid_argument("drawTree: input is not a tree");
    Drawing d;
    d.graph = t;
    d.pos = {{0.0, 0.0}, {1.0, 0.0}};
    return d;
  }
  PlacementState s = initPlacement(t, childOrder);
  std::deque<int> queue(s.hullLeaves.begin(), s.hullLeaves.end());
  while (!queue.empty()) {
    const int ai = queue.front();
    queue.pop_front();
    if (s.children[ai].empty()) continue;
    const auto it = std::find(s.hullLeaves.begin(), s.hullLeaves.end(), ai);
    if (it == s.hullLeaves.end()) throw InvariantError("drawTree: vertex fell off the hull");
    expandLeaf(s, static_cast<int>(it - s.hullLeaves.begin()));
    for (int c : s.children[ai]) queue.push_back(c);
  }
  for (int v = 0; v < n; ++v)
    if (!s.placed[v]) throw InvariantError("drawTree: unplaced vertex");
  return s.drawing;
}

}  // namespace monodraw
