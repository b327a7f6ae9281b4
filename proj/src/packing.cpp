#include "monodraw/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>

#include "monodraw/errors.hpp"

namespace monodraw {

namespace {

struct KiteStructure {
  int n = 0;
  int numFaces = 0;
  int outer = -1;
  /// cornerFaces[v][j] = face of the corner between rotation[v][j-1] and
  /// rotation[v][j].
  std::vector<std::vector<int>> cornerFaces;
  std::vector<bool> onOuter;
};

KiteStructure kiteStructure(const PlaneEmbedding& emb, const FacesResult& fr) {
  KiteStructure ks;
  ks.n = emb.graph.vertexCount();
  ks.numFaces = static_cast<int>(fr.faces.size());
  ks.outer = emb.outerFace;
  ks.cornerFaces.resize(ks.n);
  ks.onOuter.assign(ks.n, false);
  for (int v = 0; v < ks.n; ++v) {
    for (size_t j = 0; j < emb.rotation[v].size(); ++j) {
      const int f = fr.faceOfDart[v][j];
      ks.cornerFaces[v].push_back(f);
      if (f == ks.outer) ks.onOuter[v] = true;
    }
  }
  return ks;
}

/// Angle sum at a vertex node; outer-face corners contribute
/// 2*pi - 2*atan(ro/rv) (ro = 1).
double vertexAngleSum(const KiteStructure& ks, const std::vector<double>& rv,
                      const std::vector<double>& rf, int v) {
  double s = 0.0;
  for (int f : ks.cornerFaces[v])
    s += f == ks.outer ? kTwoPi - 2.0 * std::atan(1.0 / rv[v])
                       : 2.0 * std::atan(rf[f] / rv[v]);
  return s;
}

double faceAngleSum(const FacesResult& fr, const std::vector<double>& rv,
                    const std::vector<double>& rf, int f) {
  double s = 0.0;
  for (int v : fr.faces[f].vertices) s += 2.0 * std::atan(rv[v] / rf[f]);
  return s;
}

double maxAngleResidual(const KiteStructure& ks, const FacesResult& fr,
                        const std::vector<double>& rv, const std::vector<double>& rf) {
  double m = 0.0;
  for (int v = 0; v < ks.n; ++v)
    m = std::max(m, std::abs(vertexAngleSum(ks, rv, rf, v) - kTwoPi));
  for (int f = 0; f < ks.numFaces; ++f) {
    if (f == ks.outer) continue;
    m = std::max(m, std::abs(faceAngleSum(fr, rv, rf, f) - kTwoPi));
  }
  return m;
}

/// One Gauss-Seidel sweep: each node's radius is rescaled so that its angle
/// sum hits the target under the uniform-neighbor model.
void sweep(const KiteStructure& ks, const FacesResult& fr, std::vector<double>& rv,
           std::vector<double>& rf) {
  for (int v = 0; v < ks.n; ++v) {
    const int deg = static_cast<int>(ks.cornerFaces[v].size());
    if (!ks.onOuter[v]) {
      double theta = 0.0;
      for (int f : ks.cornerFaces[v]) theta += 2.0 * std::atan(rf[f] / rv[v]);
      const double rhat = rv[v] * std::tan(theta / (2.0 * deg));
      rv[v] = rhat / std::tan(kPi / deg);
      continue;
    }
    // Outer vertex: the bounded corners must sum to 2*atan(ro/rv). Freezing
    // that target at the current radius makes the update monotone; the sweep
    // below rescales the whole family so the outer radius stays 1.
    int k = 0;
    double theta = 0.0;
    for (int f : ks.cornerFaces[v])
      if (f != ks.outer) {
        theta += 2.0 * std::atan(rf[f] / rv[v]);
        ++k;
      }
    const double rhat = rv[v] * std::tan(std::min(theta / (2.0 * k), kPi / 2.0 - 1e-12));
    const double target = 2.0 * std::atan(1.0 / rv[v]);
    rv[v] = rhat / std::tan(target / (2.0 * k));
  }
  for (int f = 0; f < ks.numFaces; ++f) {
    if (f == ks.outer) continue;
    const int k = fr.faces[f].length();
    double theta = 0.0;
    for (int v : fr.faces[f].vertices) theta += 2.0 * std::atan(rv[v] / rf[f]);
    const double rhat = rf[f] * std::tan(theta / (2.0 * k));
    rf[f] = rhat / std::tan(kPi / k);
  }
  // Renormalize: solve the outer node's angle-sum equation for the implied
  // outer radius and rescale so it is 1 again. This pins the global scale the
  // runaway mode would otherwise drift along.
  auto outerSum = [&](double ro) {
    double s = 0.0;
    for (int v = 0; v < ks.n; ++v)
      if (ks.onOuter[v]) s += 2.0 * std::atan(rv[v] / ro);
    return s - kTwoPi;
  };
  double lo = 1e-14, hi = 1e14;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    (outerSum(mid) > 0.0 ? lo : hi) = mid;
  }
  const double ro = std::sqrt(lo * hi);
  for (double& x : rv) x /= ro;
  for (int f = 0; f < ks.numFaces; ++f)
    if (f != ks.outer) rf[f] /= ro;
}

struct LayoutResult {
  std::vector<Point2> pv;
  std::vector<std::optional<Point2>> pf;
  double layoutResidual = 0.0;
};

LayoutResult layoutCenters(const PlaneEmbedding& emb, const FacesResult& fr,
                           const KiteStructure& ks, const std::vector<double>& rv,
                           const std::vector<double>& rf, double sign) {
  const int n = ks.n;
  LayoutResult res;
  res.pv.assign(n, {});
  res.pf.assign(ks.numFaces, std::nullopt);
  std::vector<bool> placed(n, false);

  const Face& outerFace = fr.faces[ks.outer];
  const int w0 = outerFace.vertices[0], w1 = outerFace.vertices[1];
  res.pv[w0] = {1.0, -rv[w0]};
  placed[w0] = true;
  std::vector<bool> processed(n, false);
  // (vertex, anchor neighbor, direction angle vertex -> anchor)
  std::queue<std::tuple<int, int, double>> q;
  q.push({w0, w1, kPi / 2.0});

  auto cornerAngle = [&](int v, int f) {
    return f == ks.outer ? kTwoPi - 2.0 * std::atan(1.0 / rv[v])
                         : 2.0 * std::atan(rf[f] / rv[v]);
  };

  while (!q.empty()) {
    const auto [v, anchor, theta0] = q.front();
    q.pop();
    if (processed[v]) continue;
    processed[v] = true;
    const auto& rot = emb.rotation[v];
    const int deg = static_cast<int>(rot.size());
    const int j0 = emb.rotIndex(v, anchor);
    double theta = theta0;
    for (int step = 0; step <= deg; ++step) {
      const int j = (j0 + step) % deg;
      const int u = rot[j];
      if (step > 0) {
        const Point2 cand = res.pv[v] + (rv[v] + rv[u]) * dirFromAngle(theta);
        if (!placed[u]) {
          res.pv[u] = cand;
          placed[u] = true;
          q.push({u, v, theta + kPi});
        } else {
          res.layoutResidual = std::max(res.layoutResidual, dist(cand, res.pv[u]));
          if (!processed[u]) q.push({u, v, theta + kPi});
        }
      }
      if (step == deg) break;
      // Crossing the corner between rot[j] and rot[j+1].
      const int f = ks.cornerFaces[v][(j + 1) % deg];
      const double a = cornerAngle(v, f);
      if (f != ks.outer) {
        const Point2 cand =
            res.pv[v] + std::sqrt(rv[v] * rv[v] + rf[f] * rf[f]) *
                            dirFromAngle(theta + sign * a / 2.0);
        if (!res.pf[f])
          res.pf[f] = cand;
        else
          res.layoutResidual = std::max(res.layoutResidual, dist(cand, *res.pf[f]));
      }
      theta += sign * a;
    }
  }
  for (int v = 0; v < n; ++v)
    if (!placed[v]) throw InvariantError("layoutCenters: unreached vertex");
  return res;
}

PackingResiduals computeResiduals(const PlaneEmbedding& emb, const FacesResult& fr,
                                  const KiteStructure& ks, const std::vector<double>& rv,
                                  const std::vector<double>& rf, const LayoutResult& lay,
                                  const std::vector<Point2>& contacts) {
  PackingResiduals r;
  r.layout = lay.layoutResidual;
  r.angle = maxAngleResidual(ks, fr, rv, rf);
  {
    double s = 0.0;  // the redundant equation at the outer node
    for (int v = 0; v < ks.n; ++v)
      if (ks.onOuter[v]) s += 2.0 * std::atan(rv[v]);
    r.angle = std::max(r.angle, std::abs(s - kTwoPi));
  }
  const Graph& g = emb.graph;
  for (int e = 0; e < g.edgeCount(); ++e) {
    const auto& [a, b] = g.edge(e);
    r.tangency = std::max(
        r.tangency, std::abs(dist(lay.pv[a], lay.pv[b]) - (rv[a] + rv[b])));
    const int fa = fr.faceOfDart[a][emb.rotIndex(a, b)];
    const int fb = fr.faceOfDart[b][emb.rotIndex(b, a)];
    const Point2 c = contacts[e];
    for (int f : {fa, fb}) {
      if (f == ks.outer) {
        r.inscribed = std::max(r.inscribed, std::abs((c - Point2{0, 0}).norm() - 1.0));
        continue;
      }
      r.orthogonality = std::max(
          r.orthogonality,
          std::abs(dist(lay.pv[a], *lay.pf[f]) - std::hypot(rv[a], rf[f])));
    }
    if (fa != ks.outer && fb != ks.outer)
      r.tangency = std::max(
          r.tangency, std::abs(dist(*lay.pf[fa], *lay.pf[fb]) - (rf[fa] + rf[fb])));
    else if (fa != ks.outer || fb != ks.outer) {
      const int f = fa != ks.outer ? fa : fb;
      r.tangency = std::max(
          r.tangency, std::abs((*lay.pf[f] - Point2{0, 0}).norm() - (1.0 - rf[f])));
    }
  }
  for (int v = 0; v < ks.n; ++v) {
    const double dv = (lay.pv[v] - Point2{0, 0}).norm();
    if (ks.onOuter[v])
      r.orthogonality = std::max(r.orthogonality, std::abs(dv - std::hypot(rv[v], 1.0)));
    else
      r.inscribed = std::max(r.inscribed, std::max(0.0, dv + rv[v] - 1.0));
  }
  for (int f = 0; f < ks.numFaces; ++f)
    if (f != ks.outer)
      r.inscribed = std::max(
          r.inscribed, std::max(0.0, (*lay.pf[f] - Point2{0, 0}).norm() + rf[f] - 1.0));
  return r;
}

}  // namespace

PrimalDualPacking computePacking(const PlaneEmbedding& emb, double tol, int maxIter) {
  const Graph& g = emb.graph;
  if (g.vertexCount() < 4 || !isPlanar(g) || !isThreeConnected(g))
    throw ClassificationError("computePacking: graph is not planar and 3-connected");

  PrimalDualPacking p;
  p.emb = emb;
  p.faces = facesOf(emb);
  p.tol = tol;
  const KiteStructure ks = kiteStructure(emb, p.faces);

  std::vector<double> rv(ks.n, 1.0), rf(ks.numFaces, 1.0);
  std::vector<double> prevRv, prevRf;
  double prevResid = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int it = 0; it < maxIter; ++it) {
    prevRv = rv;
    prevRf = rf;
    sweep(ks, p.faces, rv, rf);
    double resid = maxAngleResidual(ks, p.faces, rv, rf);
    if (resid < tol) {
      converged = true;
      break;
    }
    // Acceleration: extrapolate the sweep step by the observed contraction
    // ratio, keeping the result only when it helps.
    if (std::isfinite(prevResid) && resid < prevResid && resid > 0.0) {
      const double lam = std::min(resid / prevResid, 0.999);
      const double fac = std::min(lam / (1.0 - lam), 30.0);
      std::vector<double> av = rv, af = rf;
      for (int v = 0; v < ks.n; ++v) av[v] *= std::pow(rv[v] / prevRv[v], fac);
      for (int f = 0; f < ks.numFaces; ++f)
        if (f != ks.outer) af[f] *= std::pow(rf[f] / prevRf[f], fac);
      const double ar = maxAngleResidual(ks, p.faces, av, af);
      if (ar < resid) {
        rv = std::move(av);
        rf = std::move(af);
        resid = ar;
        if (resid < tol) {
          converged = true;
          break;
        }
      }
    }
    prevResid = resid;
  }
  if (!converged)
    throw ConvergenceError("computePacking: angle residual target not reached");

  // The rotation system's geometric orientation is unknown; lay out both ways
  // and keep the one whose circles actually touch correctly.
  p.outerCircle = {{0.0, 0.0}, 1.0};
  bool have = false;
  for (double sign : {1.0, -1.0}) {
    LayoutResult lay = layoutCenters(emb, p.faces, ks, rv, rf, sign);
    std::vector<Point2> contacts(g.edgeCount());
    for (int e = 0; e < g.edgeCount(); ++e) {
      const auto& [a, b] = g.edge(e);
      contacts[e] = lay.pv[a] + rv[a] * (lay.pv[b] - lay.pv[a]).normalized();
    }
    PackingResiduals res = computeResiduals(emb, p.faces, ks, rv, rf, lay, contacts);
    const double score = std::max({res.tangency, res.orthogonality, res.layout});
    const double bestScore = std::max(
        {p.residuals.tangency, p.residuals.orthogonality, p.residuals.layout});
    if (!have || score < bestScore) {
      have = true;
      p.vertexCircles.resize(ks.n);
      for (int v = 0; v < ks.n; ++v) p.vertexCircles[v] = {lay.pv[v], rv[v]};
      p.faceCircles.assign(ks.numFaces, std::nullopt);
      for (int f = 0; f < ks.numFaces; ++f)
        if (f != ks.outer) p.faceCircles[f] = Circle{*lay.pf[f], rf[f]};
      p.contactPoints = std::move(contacts);
      p.residuals = res;
    }
  }
  return p;
}

Drawing drawingFromPacking(const PrimalDualPacking& p) {
  Drawing d;
  d.graph = p.emb.graph;
  for (const Circle& c : p.vertexCircles) d.pos.push_back(c.center);
  d.validate();
  return d;
}

namespace {

struct Region {
  bool isFace = false;
  int id = -1;
  bool operator==(const Region& o) const { return isFace == o.isFace && id == o.id; }
};

std::optional<std::pair<double, double>> circleInterval(Point2 a, Vec2 dirx, double len,
                                                        const Circle& c) {
  const double tc = (c.center - a).dot(dirx);
  const double h2 = (c.center - a).norm2() - tc * tc;
  const double d2 = c.radius * c.radius - h2;
  if (d2 <= 0.0) return std::nullopt;
  const double dt = std::sqrt(d2);
  const double lo = std::max((tc - dt) / len, 0.0), hi = std::min((tc + dt) / len, 1.0);
  if (lo >= hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

struct WitnessCtx {
  const PrimalDualPacking* p;
  double degenTol;
  double scale;
};

/// Shared edge between two bounded faces, or -1.
int sharedEdge(const PrimalDualPacking& p, int f, int g) {
  const Face& ff = p.faces.faces[f];
  for (size_t i = 0; i < ff.edgeIds.size(); ++i) {
    const int e = ff.edgeIds[i];
    const auto& [a, b] = p.emb.graph.edge(e);
    const int f1 = p.faces.faceOfDart[a][p.emb.rotIndex(a, b)];
    const int f2 = p.faces.faceOfDart[b][p.emb.rotIndex(b, a)];
    if ((f1 == f && f2 == g) || (f1 == g && f2 == f)) return e;
  }
  return -1;
}

std::vector<int> witnessRec(const WitnessCtx& cx, int u, int v, int depth);

/// Appends the chain of face f from a to b chosen by the upper/lower rule.
void appendChain(const WitnessCtx& cx, std::vector<int>& path, int f, int a, int b,
                 Point2 origin, Vec2 dirx, Vec2 diry) {
  const PrimalDualPacking& p = *cx.p;
  auto sigY = [&](Point2 q) { return (q - origin).dot(diry); };
  const std::vector<int>& cyc = p.faces.faces[f].vertices;
  const int k = static_cast<int>(cyc.size());
  int ia = -1, ib = -1;
  for (int i = 0; i < k; ++i) {
    if (cyc[i] == a) ia = i;
    if (cyc[i] == b) ib = i;
  }
  if (ia < 0 || ib < 0)
    throw InvariantError("witnessFromPacking: region vertex not on its face");
  std::vector<int> arc1, arc2;
  for (int i = ia; cyc[i % k] != b || arc1.empty(); ++i) arc1.push_back(cyc[i % k]);
  arc1.push_back(b);
  for (int i = ib; cyc[i % k] != a || arc2.empty(); ++i) arc2.push_back(cyc[i % k]);
  arc2.push_back(a);
  std::reverse(arc2.begin(), arc2.end());  // both arcs now run a..b

  auto sideOf = [&](const std::vector<int>& arc) {
    if (arc.size() == 2) {
      const int e = p.emb.graph.edgeId(arc[0], arc[1]);
      return sigY(p.contactPoints[e]);
    }
    double s = 0.0;
    for (size_t i = 1; i + 1 < arc.size(); ++i) s += sigY(p.vertexCircles[arc[i]].center);
    return s / static_cast<double>(arc.size() - 2);
  };
  const bool useUpper = sigY(p.faceCircles[f]->center) <= cx.degenTol;
  const std::vector<int>& pick =
      (sideOf(arc1) >= sideOf(arc2)) == useUpper ? arc1 : arc2;
  for (size_t i = 1; i < pick.size(); ++i) path.push_back(pick[i]);
}

std::vector<int> witnessRec(const WitnessCtx& cx, int u, int v, int depth) {
  const PrimalDualPacking& p = *cx.p;
  const Graph& g = p.emb.graph;
  if (depth > g.vertexCount())
    throw InvariantError("witnessFromPacking: degeneracy recursion did not terminate");
  if (g.hasEdge(u, v)) return {u, v};

  const Point2 A = p.vertexCircles[u].center, B = p.vertexCircles[v].center;
  const double len = dist(A, B);
  const Vec2 dirx = (B - A) / len, diry = dirx.perp();
  auto sigY = [&](Point2 q) { return (q - A).dot(diry); };

  // Degeneracy: a vertex center (essentially) on the segment splits the pair.
  int split = -1;
  double splitT = 2.0;
  for (int w = 0; w < g.vertexCount(); ++w) {
    if (w == u || w == v) continue;
    const Point2 pw = p.vertexCircles[w].center;
    const double t = (pw - A).dot(dirx) / len;
    if (t > cx.degenTol / len && t < 1.0 - cx.degenTol / len &&
        std::abs(sigY(pw)) <= cx.degenTol && t < splitT) {
      split = w;
      splitT = t;
    }
  }
  if (split >= 0) {
    std::vector<int> left = witnessRec(cx, u, split, depth + 1);
    std::vector<int> right = witnessRec(cx, split, v, depth + 1);
    left.insert(left.end(), right.begin() + 1, right.end());
    return left;
  }

  // Partition of the segment into vertex-disk and face-disk regions; face
  // disks take priority where they overlap a vertex disk.
  std::vector<double> cuts = {0.0, 1.0};
  std::vector<std::pair<Region, std::pair<double, double>>> intervals;
  auto addRegion = [&](Region reg, const Circle& c) {
    if (auto iv = circleInterval(A, dirx, len, c)) {
      intervals.push_back({reg, *iv});
      cuts.push_back(iv->first);
      cuts.push_back(iv->second);
    }
  };
  for (int w = 0; w < g.vertexCount(); ++w)
    addRegion({false, w}, p.vertexCircles[w]);
  for (size_t f = 0; f < p.faceCircles.size(); ++f)
    if (p.faceCircles[f]) addRegion({true, static_cast<int>(f)}, *p.faceCircles[f]);
  std::sort(cuts.begin(), cuts.end());

  const double covTol = cx.degenTol / len;
  std::vector<Region> runs = {{false, u}};
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 1e-15) continue;
    const double m = (cuts[i] + cuts[i + 1]) / 2.0;
    const Point2 pm = A + m * len * dirx;
    Region best;
    double bestDepth = -std::numeric_limits<double>::infinity();
    auto pick = [&](bool faces) {
      for (const auto& [reg, iv] : intervals) {
        if (reg.isFace != faces) continue;
        const Circle& c = reg.isFace ? *p.faceCircles[reg.id] : p.vertexCircles[reg.id];
        const double dep = c.radius - dist(pm, c.center);
        if (dep > bestDepth) {
          best = reg;
          bestDepth = dep;
        }
      }
    };
    pick(true);
    if (bestDepth <= 0.0) pick(false);  // no face strictly covers the midpoint
    if (bestDepth < -covTol * len || best.id < 0)
      throw InvariantError("witnessFromPacking: uncovered gap in the region partition");
    if (!(best == runs.back())) runs.push_back(best);
  }
  if (!(runs.back() == Region{false, v})) runs.push_back({false, v});

  std::vector<int> path = {u};
  int cur = u;
  int pendingFace = -1;
  for (size_t i = 1; i < runs.size(); ++i) {
    const Region& r = runs[i];
    if (r.isFace) {
      if (pendingFace >= 0) {
        // Two face disks in a row: their contact point lies on the segment;
        // route through the shared edge's endpoint above the segment.
        const int e = sharedEdge(p, pendingFace, r.id);
        if (e < 0)
          throw InvariantError("witnessFromPacking: ambiguous region transition");
        const auto& [a, b] = g.edge(e);
        const int w = sigY(p.vertexCircles[a].center) >= sigY(p.vertexCircles[b].center)
                          ? a
                          : b;
        if (w != cur) {
          appendChain(cx, path, pendingFace, cur, w, A, dirx, diry);
          cur = w;
        }
      }
      pendingFace = r.id;
    } else {
      if (r.id == cur) {
        pendingFace = -1;
        continue;
      }
      if (pendingFace >= 0) {
        appendChain(cx, path, pendingFace, cur, r.id, A, dirx, diry);
        pendingFace = -1;
      } else if (g.hasEdge(cur, r.id)) {
        path.push_back(r.id);
      } else {
        throw InvariantError("witnessFromPacking: ambiguous region transition");
      }
      cur = r.id;
    }
  }
  if (cur != v) throw InvariantError("witnessFromPacking: path did not reach the target");

  // Loop erasure: numerical chain choices may revisit a vertex.
  std::vector<int> clean;
  for (int w : path) {
    auto it = std::find(clean.begin(), clean.end(), w);
    if (it != clean.end())
      clean.erase(it + 1, clean.end());
    else
      clean.push_back(w);
  }
  return clean;
}

}  // namespace

std::vector<int> witnessFromPacking(const PrimalDualPacking& p, int u, int v) {
  const int n = p.emb.graph.vertexCount();
  if (u < 0 || v < 0 || u >= n || v >= n || u == v)
    throw ValidationError("witnessFromPacking: invalid vertex pair");
  double scale = 1.0;
  for (const Circle& c : p.vertexCircles)
    scale = std::max(scale, (c.center - Point2{0, 0}).norm());
  WitnessCtx cx{&p, 1e3 * p.tol * scale, scale};
  return witnessRec(cx, u, v, 0);
}

}  // namespace monodraw
