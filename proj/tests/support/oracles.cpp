#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace monodraw::testsupport {

namespace {

// Visit every simple u-v path.
void forEachPath(const Graph& g, int u, int v,
                 const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> path = {u};
  std::vector<bool> used(g.vertexCount(), false);
  used[u] = true;
  std::function<void()> rec = [&] {
    const int x = path.back();
    if (x == v) {
      visit(path);
      return;
    }
    for (int y : g.neighbors(x)) {
      if (used[y]) continue;
      used[y] = true;
      path.push_back(y);
      rec();
      path.pop_back();
      used[y] = false;
    }
  };
  rec();
}

double pathSlack(const Drawing& d, const std::vector<int>& path) {
  const Vec2 dir = d.pos[path.back()] - d.pos[path.front()];
  double slack = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const Vec2 e = d.pos[path[i + 1]] - d.pos[path[i]];
    slack = std::min(slack, kPi / 2.0 - angleBetween(e, dir));
  }
  return slack;
}

bool pathFitsHalfPlane(const Drawing& d, const std::vector<int>& path) {
  std::vector<double> angles;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    angles.push_back((d.pos[path[i + 1]] - d.pos[path[i]]).angle());
  std::sort(angles.begin(), angles.end());
  const size_t k = angles.size();
  for (size_t i = 0; i < k; ++i) {
    const double next = i + 1 < k ? angles[i + 1] : angles[0] + kTwoPi;
    if (next - angles[i] > kPi) return true;
  }
  return false;
}

}  // namespace

double bruteBestSlack(const Drawing& d, int u, int v) {
  double best = -std::numeric_limits<double>::infinity();
  forEachPath(d.graph, u, v, [&](const std::vector<int>& p) {
    best = std::max(best, pathSlack(d, p));
  });
  return best;
}

bool bruteStronglyMonotone(const Drawing& d, double epsAngle) {
  const int n = d.graph.vertexCount();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (bruteBestSlack(d, u, v) <= epsAngle) return false;
  return true;
}

double bruteSafety(const Drawing& d) {
  const int n = d.graph.vertexCount();
  double alpha = kPi / 2.0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) alpha = std::min(alpha, bruteBestSlack(d, u, v));
  return alpha;
}

bool bruteMonotone(const Drawing& d) {
  const int n = d.graph.vertexCount();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool ok = false;
      forEachPath(d.graph, u, v, [&](const std::vector<int>& p) {
        if (!ok && pathFitsHalfPlane(d, p)) ok = true;
      });
      if (!ok) return false;
    }
  return true;
}

double sampledMaxDiskRadiusInCone(const Cone& cone, int samples) {
  const double lo = cone.dirLo.angle();
  const double sweep = cone.sweep();
  double best = 0.0;
  // Candidate centers on the bisector, geometric spacing in distance.
  const double mid = lo + sweep / 2.0;
  const Vec2 bis = dirFromAngle(mid);
  for (int i = 1; i <= samples; ++i) {
    const double t = std::exp(-20.0 + 25.0 * i / samples);
    const Point2 c = {cone.apex.x + t * bis.x, cone.apex.y + t * bis.y};
    // Radius limited by the two boundary rays (and the apex for wide cones).
    double r = std::numeric_limits<double>::infinity();
    for (const Vec2& b : {cone.dirLo, cone.dirHi}) {
      const Vec2 v = c - cone.apex;
      const double along = v.dot(b);
      if (along <= 0.0)
        r = std::min(r, v.norm());
      else
        r = std::min(r, std::abs(v.cross(b)));
    }
    best = std::max(best, r);
  }
  return best;
}

bool hasMinor(const Graph& host, const Graph& minor) {
  const int n = host.vertexCount();
  const int k = minor.vertexCount();
  if (k > n) return false;
  // assign[v] in {-1, 0..k-1}: branch set of host vertex v (-1 = unused).
  std::vector<int> assign(n, -1);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == n) {
      std::vector<std::vector<int>> branch(k);
      for (int x = 0; x < n; ++x)
        if (assign[x] >= 0) branch[assign[x]].push_back(x);
      for (int b = 0; b < k; ++b) {
        if (branch[b].empty()) return false;
        // connectivity of the branch set inside host
        std::vector<bool> in(n, false), seen(n, false);
        for (int x : branch[b]) in[x] = true;
        std::vector<int> stack = {branch[b][0]};
        seen[branch[b][0]] = true;
        int cnt = 1;
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (int y : host.neighbors(x))
            if (in[y] && !seen[y]) {
              seen[y] = true;
              ++cnt;
              stack.push_back(y);
            }
        }
        if (cnt != static_cast<int>(branch[b].size())) return false;
      }
      for (const auto& [a, b] : minor.edges()) {
        bool found = false;
        for (int x : branch[a])
          for (int y : branch[b])
            if (host.hasEdge(x, y)) found = true;
        if (!found) return false;
      }
      return true;
    }
    for (int b = -1; b < k; ++b) {
      assign[v] = b;
      if (rec(v + 1)) return true;
    }
    assign[v] = -1;
    return false;
  };
  return rec(0);
}

namespace {

Graph completeBipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.addEdge(i, a + j);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.addEdge(a, b);
  return g;
}

}  // namespace

bool planarByMinors(const Graph& g) {
  return !hasMinor(g, complete(5)) && !hasMinor(g, completeBipartite(3, 3));
}

bool outerplanarByMinors(const Graph& g) {
  return !hasMinor(g, complete(4)) && !hasMinor(g, completeBipartite(2, 3));
}

double spanningTreeCount(const Graph& g) {
  const int n = g.vertexCount();
  if (n <= 1) return 1.0;
  std::vector<std::vector<double>> L(n - 1, std::vector<double>(n - 1, 0.0));
  for (const auto& [a, b] : g.edges()) {
    if (a < n - 1) L[a][a] += 1.0;
    if (b < n - 1) L[b][b] += 1.0;
    if (a < n - 1 && b < n - 1) {
      L[a][b] -= 1.0;
      L[b][a] -= 1.0;
    }
  }
  // Gaussian elimination with partial pivoting.
  double det = 1.0;
  for (int c = 0; c < n - 1; ++c) {
    int piv = c;
    for (int r = c + 1; r < n - 1; ++r)
      if (std::abs(L[r][c]) > std::abs(L[piv][c])) piv = r;
    if (std::abs(L[piv][c]) < 1e-12) return 0.0;
    if (piv != c) {
      std::swap(L[piv], L[c]);
      det = -det;
    }
    det *= L[c][c];
    for (int r = c + 1; r < n - 1; ++r) {
      const double f = L[r][c] / L[c][c];
      for (int cc = c; cc < n - 1; ++cc) L[r][cc] -= f * L[c][cc];
    }
  }
  return std::round(det);
}

namespace {

bool isSimplicialDeg2(const Graph& g, int v, const std::vector<bool>& gone) {
  std::vector<int> nb;
  for (int y : g.neighbors(v))
    if (!gone[y]) nb.push_back(y);
  return nb.size() == 2 && g.hasEdge(nb[0], nb[1]);
}

bool peelRec(const Graph& g, std::vector<bool>& gone, int remaining) {
  if (remaining == 2) return true;
  for (int v = 0; v < g.vertexCount(); ++v) {
    if (gone[v] || !isSimplicialDeg2(g, v, gone)) continue;
    gone[v] = true;
    if (peelRec(g, gone, remaining - 1)) return true;
    gone[v] = false;
  }
  return false;
}

}  // namespace

bool isTwoTreeOracle(const Graph& g) {
  const int n = g.vertexCount();
  if (n < 2 || !g.isConnected()) return false;
  if (n == 2) return g.edgeCount() == 1;
  if (g.edgeCount() != 2 * n - 3) return false;
  std::vector<bool> gone(n, false);
  return peelRec(g, gone, n);
}

}  // namespace monodraw::testsupport
