#include "monodraw/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "monodraw/errors.hpp"

namespace monodraw {

void Drawing::validate() const {
  const int n = graph.vertexCount();
  if (static_cast<int>(pos.size()) != n)
    throw ValidationError("drawing: position count does not match vertex count");
  for (const Point2& p : pos)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError("drawing: non-finite coordinate");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (pos[a] == pos[b]) throw ValidationError("drawing: coincident vertices");
}

namespace detail {

namespace {
double edgeSlack(const Drawing& d, int a, int b, Vec2 dir) {
  return kPi / 2.0 - angleBetween(d.pos[b] - d.pos[a], dir);
}
}  // namespace

// Bottleneck Dijkstra: maximize the minimum edge slack along a u-v path.
PairWitness widestSlackPath(const Drawing& d, int u, int v, double epsAngle) {
  const int n = d.graph.vertexCount();
  const Vec2 dir = d.pos[v] - d.pos[u];
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, -inf);
  std::vector<int> pred(n, -1);
  std::vector<bool> done(n, false);
  best[u] = inf;
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry> pq;
  pq.push({inf, u});
  while (!pq.empty()) {
    auto [slack, x] = pq.top();
    pq.pop();
    if (done[x]) continue;
    done[x] = true;
    if (x == v) break;
    for (int y : d.graph.neighbors(x)) {
      if (done[y]) continue;
      const double s = std::min(slack, edgeSlack(d, x, y, dir));
      if (s > best[y]) {
        best[y] = s;
        pred[y] = x;
        pq.push({s, y});
      }
    }
  }

  PairWitness w;
  w.slack = best[v];
  if (best[v] > epsAngle)
    w.verdict = PairVerdict::Yes;
  else if (best[v] >= -epsAngle)
    w.verdict = PairVerdict::Degenerate;
  else
    w.verdict = PairVerdict::No;
  if (w.verdict == PairVerdict::Yes) {
    for (int x = v; x != -1; x = pred[x]) w.path.push_back(x);
    std::reverse(w.path.begin(), w.path.end());
  }
  return w;
}

}  // namespace detail

using detail::widestSlackPath;

PairWitness stronglyMonotonePair(const Drawing& d, int u, int v, double epsAngle) {
  if (u == v) throw std::invalid_argument("stronglyMonotonePair: u == v");
  d.validate();
  return widestSlackPath(d, u, v, epsAngle);
}

WitnessReport stronglyMonotone(const Drawing& d, double epsAngle) {
  d.validate();
  WitnessReport rep;
  rep.stronglyMonotone = true;
  rep.alpha = kPi / 2.0;
  const int n = d.graph.vertexCount();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      PairWitness w = widestSlackPath(d, u, v, epsAngle);
      if (w.verdict != PairVerdict::Yes) rep.stronglyMonotone = false;
      if (w.verdict == PairVerdict::Degenerate) rep.degenerate = true;
      rep.alpha = std::min(rep.alpha, w.slack);
      rep.perPair[{u, v}] = std::move(w);
    }
  }
  if (!rep.stronglyMonotone) rep.alpha = 0.0;
  return rep;
}

bool monotone(const Drawing& d, double epsAngle) {
  d.validate();
  const int n = d.graph.vertexCount();
  const int m = d.graph.edgeCount();
  if (n <= 1) return true;

  // One representative direction per arc of the circle subdivision induced by
  // the edge normals: the monotone edge set is constant on each open arc.
  std::vector<double> bounds;
  bounds.reserve(2 * m);
  for (const auto& [a, b] : d.graph.edges()) {
    const double t = (d.pos[b] - d.pos[a]).angle();
    bounds.push_back(normalizeAngle(t + kPi / 2.0));
    bounds.push_back(normalizeAngle(t - kPi / 2.0));
  }
  std::sort(bounds.begin(), bounds.end());
  std::vector<double> dirs;
  for (size_t i = 0; i < bounds.size(); ++i) {
    const double a = bounds[i];
    const double b = i + 1 < bounds.size() ? bounds[i + 1] : bounds[0] + kTwoPi;
    if (b - a > 1e-12) dirs.push_back((a + b) / 2.0);
  }
  if (dirs.empty()) dirs.push_back(0.0);

  // reach[k] = reachability matrix for direction k (n small at desk scale).
  std::vector<std::vector<std::vector<bool>>> reach;
  reach.reserve(dirs.size());
  for (double theta : dirs) {
    const Vec2 dir = dirFromAngle(theta);
    std::vector<std::vector<int>> out(n);
    for (const auto& [a, b] : d.graph.edges()) {
      const double dot = (d.pos[b] - d.pos[a]).dot(dir);
      if (dot > 0.0)
        out[a].push_back(b);
      else if (dot < 0.0)
        out[b].push_back(a);
    }
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int s = 0; s < n; ++s) {
      std::queue<int> q;
      q.push(s);
      r[s][s] = true;
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : out[x])
          if (!r[s][y]) {
            r[s][y] = true;
            q.push(y);
          }
      }
    }
    reach.push_back(std::move(r));
  }

  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool found = false;
      for (size_t k = 0; k < reach.size() && !found; ++k)
        if (reach[k][u][v] || reach[k][v][u]) found = true;
      if (!found) return false;
    }
  return true;
}

double safety(const Drawing& d, double epsAngle) {
  WitnessReport rep = stronglyMonotone(d, epsAngle);
  if (!rep.stronglyMonotone) {
    for (const auto& [pair, w] : rep.perPair)
      if (w.verdict != PairVerdict::Yes)
        throw InvariantError("safety: drawing is not strongly monotone at pair (" +
                             std::to_string(pair.first) + ", " + std::to_string(pair.second) +
                             ")");
  }
  return rep.alpha;
}

CrossingReport crossingFree(const Drawing& d) {
  d.validate();
  CrossingReport rep;
  const int m = d.graph.edgeCount();
  for (int e = 0; e < m && rep.crossingFree; ++e) {
    for (int f = e + 1; f < m; ++f) {
      const auto& [a, b] = d.graph.edge(e);
      const auto& [c, g] = d.graph.edge(f);
      if (segmentsIntersect(d.pos[a], d.pos[b], d.pos[c], d.pos[g])) {
        rep.crossingFree = false;
        rep.offendingEdges = {e, f};
        break;
      }
    }
  }
  return rep;
}

TreeConvexity treeConvexity(const Drawing& d, double epsAngle) {
  d.validate();
  const Graph& g = d.graph;
  const int n = g.vertexCount();
  if (g.edgeCount() != n - 1 || !g.isConnected())
    throw std::invalid_argument("treeConvexity: graph is not a tree");
  if (n <= 1) return TreeConvexity::StrictlyConvex;

  // Augmentation: every leaf edge continues as a ray across the leaf.
  struct Ray {
    int leaf;
    Point2 origin;
    Vec2 dir;
  };
  std::vector<Ray> rays;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) == 1) {
      const int p = g.neighbors(v)[0];
      rays.push_back({v, d.pos[v], (d.pos[v] - d.pos[p]).normalized()});
    }

  double span = 1.0;
  for (const Point2& p : d.pos) span = std::max({span, std::abs(p.x), std::abs(p.y)});

  // Angle gaps at every vertex of the augmented drawing. A vector computed
  // from rounded positions carries an angular uncertainty of about
  // eps_mach * span / |v|, so short edges in a large drawing widen the
  // tolerance accordingly.
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() * span;
  bool strict = true;
  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<double, double>> corners;  // angle, 1/length
    for (int w : g.neighbors(v)) {
      const Vec2 e = d.pos[w] - d.pos[v];
      corners.push_back({e.angle(), 1.0 / e.norm()});
    }
    if (g.degree(v) == 1) {
      const Vec2 e = d.pos[v] - d.pos[g.neighbors(v)[0]];
      corners.push_back({e.angle(), 1.0 / e.norm()});
    }
    if (corners.size() < 2) continue;
    std::sort(corners.begin(), corners.end());
    for (size_t i = 0; i < corners.size(); ++i) {
      const auto& [ang, invLen] = corners[i];
      const auto& [angNext, invLenNext] =
          corners[i + 1 < corners.size() ? i + 1 : 0];
      const double gap = (i + 1 < corners.size() ? angNext : angNext + kTwoPi) - ang;
      const double tol = epsAngle + noise * (invLen + invLenNext);
      if (gap > kPi + tol) return TreeConvexity::NotConvex;
      if (gap >= kPi - tol) strict = false;
    }
  }

  // Crossing-freeness of edges, rays, and edge-ray pairs.
  const int m = g.edgeCount();
  for (int e = 0; e < m; ++e)
    for (int f = e + 1; f < m; ++f) {
      const auto& [a, b] = g.edge(e);
      const auto& [c, h] = g.edge(f);
      if (segmentsIntersect(d.pos[a], d.pos[b], d.pos[c], d.pos[h]))
        return TreeConvexity::NotConvex;
    }
  const double skip = 1e-12 * span;
  for (const Ray& r : rays) {
    for (int e = 0; e < m; ++e) {
      const auto& [a, b] = g.edge(e);
      if (a == r.leaf || b == r.leaf) continue;
      if (segmentIntersectsRay(d.pos[a], d.pos[b], r.origin, r.dir, skip))
        return TreeConvexity::NotConvex;
    }
  }
  for (size_t i = 0; i < rays.size(); ++i)
    for (size_t j = i + 1; j < rays.size(); ++j)
      if (raysIntersect(rays[i].origin, rays[i].dir, rays[j].origin, rays[j].dir, skip))
        return TreeConvexity::NotConvex;

  return strict ? TreeConvexity::StrictlyConvex : TreeConvexity::Convex;
}

bool faceStrictlyConvex(const Drawing& d, const std::vector<int>& cycle, double epsAngle) {
  const int k = static_cast<int>(cycle.size());
  if (k < 3) return false;
  std::set<int> distinct(cycle.begin(), cycle.end());
  if (static_cast<int>(distinct.size()) != k) return false;
  int sign = 0;
  for (int i = 0; i < k; ++i) {
    const Point2 a = d.pos[cycle[i]];
    const Point2 b = d.pos[cycle[(i + 1) % k]];
    const Point2 c = d.pos[cycle[(i + 2) % k]];
    const Vec2 e1 = b - a, e2 = c - b;
    const double sine = e1.cross(e2) / (e1.norm() * e2.norm());
    // Straight corners and cusps both have a vanishing cross product.
    if (std::abs(sine) <= std::sin(epsAngle)) return false;
    const int s = sine > 0.0 ? 1 : -1;
    if (sign == 0)
      sign = s;
    else if (s != sign)
      return false;
  }
  return true;
}

bool convexFaces(const Drawing& d, const PlaneEmbedding& emb, double epsAngle) {
  d.validate();
  if (emb.graph.vertexCount() != d.graph.vertexCount() ||
      emb.graph.edgeCount() != d.graph.edgeCount())
    throw ValidationError("convexFaces: drawing/embedding mismatch");
  if (!crossingFree(d).crossingFree) return false;
  FacesResult fr = facesOf(emb);
  for (size_t i = 0; i < fr.faces.size(); ++i) {
    if (static_cast<int>(i) == emb.outerFace) continue;
    if (!faceStrictlyConvex(d, fr.faces[i].vertices, epsAngle)) return false;
  }
  return true;
}

bool witnessPathValid(const Drawing& d, const std::vector<int>& path) {
  if (path.size() < 2) return false;
  std::set<int> seen(path.begin(), path.end());
  if (seen.size() != path.size()) return false;
  const Vec2 dir = d.pos[path.back()] - d.pos[path.front()];
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    if (!d.graph.hasEdge(path[i], path[i + 1])) return false;
    if ((d.pos[path[i + 1]] - d.pos[path[i]]).dot(dir) <= 0.0) return false;
  }
  return true;
}

}  // namespace monodraw
