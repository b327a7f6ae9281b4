#include "monodraw/two_tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>

#include "monodraw/errors.hpp"

namespace monodraw {

namespace {

std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }
std::pair<int, int> key(std::pair<int, int> e) { return key(e.first, e.second); }

double segSegDist(Point2 a, Point2 b, Point2 c, Point2 d) {
  if (segmentsIntersect(a, b, c, d)) return 0.0;
  return std::min(std::min(pointSegmentDistance(a, c, d), pointSegmentDistance(b, c, d)),
                  std::min(pointSegmentDistance(c, a, b), pointSegmentDistance(d, a, b)));
}

using Tri = std::array<Point2, 3>;

bool pointInTri(Point2 p, const Tri& t) {
  const double d0 = orientationDet(t[0], t[1], p);
  const double d1 = orientationDet(t[1], t[2], p);
  const double d2 = orientationDet(t[2], t[0], p);
  const bool hasNeg = d0 < 0 || d1 < 0 || d2 < 0;
  const bool hasPos = d0 > 0 || d1 > 0 || d2 > 0;
  return !(hasNeg && hasPos);
}

double pointTriDist(Point2 p, const Tri& t) {
  if (pointInTri(p, t)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) d = std::min(d, pointSegmentDistance(p, t[i], t[(i + 1) % 3]));
  return d;
}

double segTriDist(Point2 a, Point2 b, const Tri& t) {
  if (pointInTri(a, t) || pointInTri(b, t)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const Point2 c = t[i], e = t[(i + 1) % 3];
    if (c == e) {
      d = std::min(d, pointSegmentDistance(c, a, b));
      continue;
    }
    d = std::min(d, segSegDist(a, b, c, e));
  }
  return d;
}

Tri corridorTri(const BubbledDrawing& st, const Bubble& b) {
  return {st.drawing.pos[b.edge.first], st.drawing.pos[b.edge.second], b.certCircle.center};
}

double coordSpan(const BubbledDrawing& st) {
  double s = 1.0;
  for (size_t v = 0; v < st.placed.size(); ++v)
    if (st.placed[v])
      s = std::max({s, std::abs(st.drawing.pos[v].x), std::abs(st.drawing.pos[v].y)});
  return s;
}

struct ExtraPt {
  Point2 p;
  int far;
  int near;
};

/// Minimum maximin slack over every pair that involves one of the extra
/// points: the incremental part of the finite certification. Pairs of
/// certification points of one and the same bubble are not part of the
/// scheme (mutual slack of same-bubble stackings comes from the arc
/// construction); samePairs opts back in for arc placements, whose extras
/// become real vertices. Returns early once the slack drops to stopBelow.
double certifyIncremental(const BubbledDrawing& st, const std::pair<int, int>* skipBubble,
                          const std::vector<ExtraPt>& extras, bool samePairs,
                          double stopBelow) {
  const int n = st.drawing.graph.vertexCount();
  std::vector<int> extOf(n, -1);
  Drawing ext;
  std::vector<std::pair<int, int>> anchorOf;
  for (int v = 0; v < n; ++v)
    if (st.placed[v]) {
      extOf[v] = static_cast<int>(ext.pos.size());
      ext.pos.push_back(st.drawing.pos[v]);
      anchorOf.push_back({-1, -1});
    }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : st.drawing.graph.edges()) edges.push_back({extOf[a], extOf[b]});

  auto addAnchored = [&](Point2 p, int far, int near) {
    const int id = static_cast<int>(ext.pos.size());
    ext.pos.push_back(p);
    anchorOf.push_back(key(far, near));
    edges.push_back({extOf[far], id});
    edges.push_back({extOf[near], id});
    return id;
  };
  for (const auto& [k, b] : st.bubbles) {
    if (skipBubble && k == *skipBubble) continue;
    for (Point2 p : certPoints(b)) addAnchored(p, b.edge.first, b.edge.second);
  }
  const int firstNew = static_cast<int>(ext.pos.size());
  for (const ExtraPt& e : extras) addAnchored(e.p, e.far, e.near);

  Graph g(static_cast<int>(ext.pos.size()));
  for (const auto& [a, b] : edges) g.addEdge(a, b);
  ext.graph = std::move(g);

  double minSlack = kPi / 2.0;
  const int total = ext.graph.vertexCount();
  for (int i = firstNew; i < total; ++i)
    for (int j = 0; j < i; ++j) {
      if (anchorOf[j].first >= 0 && anchorOf[j] == anchorOf[i] &&
          !(samePairs && j >= firstNew))
        continue;
      const double s = detail::widestSlackPath(ext, i, j, kDefaultAngleEps).slack;
      minSlack = std::min(minSlack, s);
      if (minSlack <= stopBelow) {
        if (std::getenv("MONODRAW_DBG2"))
          std::fprintf(stderr,
                       "  cert stop pair i=%d(%.5g,%.5g anc %d,%d) j=%d(%.5g,%.5g anc %d,%d) s=%.3g\n",
                       i, ext.pos[i].x, ext.pos[i].y, anchorOf[i].first, anchorOf[i].second, j,
                       ext.pos[j].x, ext.pos[j].y, anchorOf[j].first, anchorOf[j].second, s);
        return minSlack;
      }
    }
  return minSlack;
}

/// The new corridor conv(seg(far,w) + disk(c,r)) must not meet any element it
/// is not incident to. Corridors sharing an endpoint must keep each other's
/// disks out and stay apart away from the shared point: the stacked edges a
/// corridor will later receive run from its endpoints into its disk, so an
/// overlap would let them cross.
bool corridorClear(const BubbledDrawing& st, int far, int w, Point2 c, double r) {
  const Point2 pfar = st.drawing.pos[far], pww = st.drawing.pos[w];
  const Tri tri = {pfar, pww, c};
  const int n = st.drawing.graph.vertexCount();
  for (int y = 0; y < n; ++y) {
    if (!st.placed[y] || y == far || y == w) continue;
    if (pointTriDist(st.drawing.pos[y], tri) <= r) return false;
  }
  for (const auto& [a, b] : st.drawing.graph.edges()) {
    const bool inc = a == far || b == far || a == w || b == w;
    if (inc) {
      // Incident edges may touch the triangle at the shared endpoint but must
      // keep out of the stacking disk.
      if ((a == far && b == w) || (a == w && b == far)) continue;
      if (pointSegmentDistance(c, st.drawing.pos[a], st.drawing.pos[b]) <= 1.05 * r) return false;
      continue;
    }
    if (segTriDist(st.drawing.pos[a], st.drawing.pos[b], tri) <= r) return false;
  }
  for (const auto& [k, b] : st.bubbles) {
    const Tri other = corridorTri(st, b);
    const double margin = r + b.certCircle.radius;
    int shared = -1;
    for (int s : {far, w})
      if (b.edge.first == s || b.edge.second == s) shared = s;
    if (shared < 0) {
      for (int i = 0; i < 3; ++i)
        if (segTriDist(other[i], other[(i + 1) % 3], tri) <= margin) return false;
      continue;
    }
    const Point2 ps = st.drawing.pos[shared];
    // Corridors sharing an endpoint may legitimately run in almost the same
    // direction there (bubbles hanging off close-by siblings are angularly
    // indistinguishable from the far vertex); the real conflict is one
    // bubble's disk intruding into the other's corridor, through which stack
    // edges will later be drawn.
    if (pointTriDist(b.certCircle.center, tri) <= margin) return false;
    if (pointTriDist(c, other) <= margin) return false;
    // Away from the shared endpoint the corridors must still keep their
    // distance; side pairs that both end at it always touch and are governed
    // by the disk tests instead.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Point2 a1 = tri[i], a2 = tri[(i + 1) % 3];
        const Point2 b1 = other[j], b2 = other[(j + 1) % 3];
        const bool oursAtS = a1 == ps || a2 == ps;
        const bool theirsAtS = b1 == ps || b2 == ps;
        if (oursAtS && theirsAtS) continue;
        if (segSegDist(a1, a2, b1, b2) <= margin) return false;
      }
  }
  return true;
}

}  // namespace

std::vector<Point2> certPoints(const Bubble& b) {
  std::vector<Point2> pts = {b.certCircle.center};
  for (int i = 0; i < 8; ++i)
    pts.push_back(b.certCircle.center +
                  b.certCircle.radius * dirFromAngle(kTwoPi * i / 8.0));
  return pts;
}

double certifiedAlpha(const BubbledDrawing& st) {
  // Full (non-incremental) certification: every pair, via the same extension.
  BubbledDrawing empty = st;
  empty.bubbles.clear();
  std::vector<ExtraPt> extras;
  for (const auto& [k, b] : st.bubbles)
    for (Point2 p : certPoints(b)) extras.push_back({p, b.edge.first, b.edge.second});
  // Vertex-vertex pairs are not covered by certifyIncremental; fold them in
  // through the verifier on the placed subgraph.
  double minSlack = certifyIncremental(empty, nullptr, extras, false, -kPi);
  const int n = st.drawing.graph.vertexCount();
  for (int a = 0; a < n; ++a) {
    if (!st.placed[a]) continue;
    for (int b = a + 1; b < n; ++b) {
      if (!st.placed[b]) continue;
      minSlack =
          std::min(minSlack, detail::widestSlackPath(st.drawing, a, b, kDefaultAngleEps).slack);
    }
  }
  return minSlack;
}

BubbledDrawing beginTwoTree(const Graph& g, std::pair<int, int> baseEdge, bool withBubble) {
  BubbledDrawing st;
  st.drawing.graph = Graph(g.vertexCount());
  st.drawing.pos.assign(g.vertexCount(), {});
  st.placed.assign(g.vertexCount(), false);
  const auto [a, b] = baseEdge;
  st.drawing.graph.addEdge(a, b);
  st.drawing.pos[a] = {0.0, 0.0};
  st.drawing.pos[b] = {1.0, 0.0};
  st.placed[a] = st.placed[b] = true;
  st.alpha = kPi / 2.0;
  if (withBubble) {
    // Unit base edge; any interior point of this disk sees it under an obtuse
    // angle (the disk is internally tangent to the Thales circle).
    Bubble bub;
    bub.edge = {a, b};
    bub.certCircle = {{0.5, 0.25}, 0.25};
    bub.circle = {{0.5, 0.25}, 0.125};
    bub.eps = dist(st.drawing.pos[b], bub.certCircle.center);
    std::vector<ExtraPt> extras;
    for (Point2 p : certPoints(bub)) extras.push_back({p, a, b});
    const double s = certifyIncremental(st, nullptr, extras, false, kDefaultAngleEps);
    if (s <= kDefaultAngleEps)
      throw InvariantError("beginTwoTree: base bubble failed certification");
    st.alpha = std::min(st.alpha, s);
    st.bubbles[key(a, b)] = bub;
  }
  return st;
}

namespace {

/// Finds and commits a certified bubble for the single child edge (f, w);
/// pother is the third vertex of the stacked triangle. See makeBubbles.
// Returns the chosen direction phi so that a caller can ban it and force a
// different basin when the choice turns out to strand a descendant.
double makeOneBubble(BubbledDrawing& st, int w, int f, int other,
                     const std::vector<double>& bannedPhi = {}, int skipN = 0) {
  const Point2 pw = st.drawing.pos[w], pother = st.drawing.pos[other];
  const double span = coordSpan(st);
  const double floor = 5e-15 * span;

  // Candidate bubbles for child edge (f, w), all disks of radius proportional
  // to a constant fraction of the local scale (so that deep stacking chains
  // lose only a constant size factor per level, not one proportional to the
  // shrinking angular slack). The center is placed along a ray from w at
  // angle phi off the edge toward the empty side (away from the third
  // triangle vertex), halfway along the Thales chord in that direction and
  // scaled by lam. All candidates stay strictly inside the Thales disk of
  // the edge, so condition (C) holds by construction; corridorClear rules
  // out crossings and certifyIncremental is the actual acceptance gate.
  auto place = [&](double lam, double phi, double q, Bubble& out) {
    const Point2 pf = st.drawing.pos[f];
    const double L = dist(pf, pw);
    const Point2 mid = {(pf.x + pw.x) / 2.0, (pf.y + pw.y) / 2.0};
    const Vec2 e1 = (1.0 / L) * (pf - pw);
    Vec2 nhat = e1.perp();
    if (nhat.dot(pother - mid) > 0.0) nhat = -1.0 * nhat;
    const Vec2 d = std::cos(phi) * e1 + std::sin(phi) * nhat;
    const double chord = L * d.dot(e1);  // Thales-disk diameter along d
    if (chord <= 0.0) return false;
    const Point2 c = pw + (0.5 * lam * chord) * d;
    const double pen = L / 2.0 - dist(c, mid);  // Thales margin
    if (pen <= 0.0) return false;
    // q is the angular half-width of the bubble as seen from w: wide bubbles
    // hand the most separation slack to the next level, narrow ones fit
    // through tight witness-prefix margins left by close-by arc siblings.
    // The disk stays strictly on one side of the line through (f, w), else
    // the edge itself would run through the stacking region.
    const double off = dist(pw, c) * std::abs(std::sin(phi));
    double r = std::min({q * dist(pw, c), 0.45 * pen, off / 1.2});
    if (r < floor) return false;
    out = Bubble{{f, w}, {c, r / 2.0}, {c, r}, dist(pw, c)};
    return corridorClear(st, f, w, c, r);
  };

  // Greedy over the ladder: the scan order (largest scale first, widest
  // bubbles first) already encodes the geometry that deep stacking chains
  // need. The feasible bubble directions at a given scale form a narrow
  // angular window (its width is the separation slack of w from its arc
  // siblings, but it exists at macroscopic scale when aimed precisely), so
  // the direction phi is located by a coarse sweep plus iterative zoom on the
  // best basin -- the certified slack is a continuous, basin-shaped function
  // of phi, growing toward the window center even outside it. At the best
  // direction the angular half-width q is then pushed up by bisection: the
  // sibling separation q grants to the next level is ~0.9 q, so a q well
  // below the window width compounds into exponential scale loss down the
  // chain.
  auto tryCertify = [&](const Bubble& b, double stopBelow) {
    std::vector<ExtraPt> extras;
    for (Point2 p : certPoints(b)) extras.push_back({p, f, w});
    return certifyIncremental(st, nullptr, extras, false, stopBelow);
  };
  const double phiProl = [&] {
    const Point2 pf = st.drawing.pos[f];
    const Point2 mid = {(pf.x + pw.x) / 2.0, (pf.y + pw.y) / 2.0};
    const Vec2 e1 = (pf - pw).normalized();
    Vec2 nhat = e1.perp();
    if (nhat.dot(pother - mid) > 0.0) nhat = -1.0 * nhat;
    const Vec2 d = (pw - pother).normalized();
    return std::atan2(d.dot(nhat), d.dot(e1));
  }();
  constexpr double kPhiLo = -1.55, kPhiHi = 1.55;
  constexpr double kLams[] = {0.9, 0.25};
  // Place with exact target radius rT (the next level inherits rT as its
  // scale, so rT is the quantity the ladder descends on); a direction whose
  // Thales margin cannot host rT is rejected.
  auto placeR = [&](double lam, double phi, double rT, Bubble& b) {
    if (!place(lam, phi, 0.8, b) || b.certCircle.radius < rT) return false;
    return place(lam, phi, rT / b.eps, b);  // eps = dist(w, center)
  };
  // Largest radius any direction can host, top of the ladder.
  double rMax = 0.0;
  for (double lam : kLams)
    for (int i = 0; i < 32; ++i) {
      Bubble b;
      if (place(lam, kPhiLo + (kPhiHi - kPhiLo) * (i + 0.5) / 32.0, 0.8, b))
        rMax = std::max(rMax, b.certCircle.radius);
    }

  const double bars[3] = {std::min(0.5 * st.alpha, 0.05), std::min(0.05 * st.alpha, 0.005),
                          kDefaultAngleEps};
  double lastPhi = phiProl;
  // Pinned candidates: center on the prolongation of the other incident
  // edge of w, radius a small fraction of eps and of the remaining angular
  // budget. Any witness ending at w continues onto the prolongation with
  // only a tiny turn, so the certified slack converges to a positive limit
  // as eps shrinks. This is the fallback for cramped regions where the
  // sweep below finds nothing.
  auto prolPhase = [&](double bar) -> bool {
    {
      const Point2 pf = st.drawing.pos[f];
      const double L = dist(pf, pw);
      const Vec2 dp = (pw - pother).normalized();
      const Vec2 e1 = (1.0 / L) * (pf - pw);
      const Point2 mid = {(pf.x + pw.x) / 2.0, (pf.y + pw.y) / 2.0};
      const double A = std::min(1.0, st.alpha);
      auto tryProl = [&](double eps, double qf, Bubble& b, double stopBelow) {
        const double r = qf * A * eps;
        if (r < floor) return -4.0;
        const Point2 c = pw + eps * dp;
        const double pen = 0.5 * L - dist(c, mid);  // Thales margin, ~eps for small eps
        if (r >= 0.45 * pen) return -5.0;           // obtusity
        if (r > std::abs(e1.cross(c - pw)) / 1.2) return -6.0;  // off the edge line
        b = Bubble{{f, w}, {c, r / 2.0}, {c, r}, eps};
        if (!corridorClear(st, f, w, c, r)) return -7.0;
        return tryCertify(b, stopBelow);
      };
      // First pass: descend the ladder until the certified slack saturates
      // (it converges to the reroute limit as eps shrinks); remember the
      // optimum. Accepting the first level that merely clears the bar would
      // poison every deeper level with a nearly exhausted budget.
      // The slack is not monotone in eps: it dips while eps crosses the
      // distance to the nearest sibling, then rises to the reroute limit.
      // So only stop once the optimum both clears the bar and saturates.
      double bestVal = -kPi;
      int staleLvls = 0;
      for (double eps = L / 3.0; eps >= floor && !(staleLvls >= 2 && bestVal > bar);
           eps /= 4.0) {
        double lvl = -kPi;
        const bool dbg3 = std::getenv("MONODRAW_DBG3") != nullptr;
        for (double qf : {0.4, 0.13, 0.04}) {
          Bubble b;
          const double v = tryProl(eps, qf, b, dbg3 ? -10.0 : bestVal);
          if (dbg3)
            std::fprintf(stderr, "prolP w=%d f=%d bar=%.3g eps=%.3g qf=%.2g v=%.4g best=%.4g\n", w,
                         f, bar, eps, qf, v, bestVal);
          lvl = std::max(lvl, v);
        }
        if (lvl > bestVal * 1.05 || (lvl > bestVal && bestVal <= 0.0)) {
          bestVal = lvl;
          staleLvls = 0;
        } else if (lvl > -3.0) {
          ++staleLvls;
        }
      }
      // Second pass: take the shallowest candidate above the bar, i.e. the
      // largest acceptable bubble. Chasing the optimum instead would pick
      // needlessly tiny bubbles whose stacked children cluster so tightly
      // that every deeper level runs out of scale.
      // skipN walks further down on retries after a descendant of the
      // accepted bubble got stranded: a smaller bubble at the same spot
      // leaves the next level proportionally more room.
      if (bestVal > bar) {
        // Scale headroom beats slack: descendants of a deep bubble run out of
        // representable coordinates long before a modest alpha hurts anyone.
        // So a shallow candidate that clears only a tenth of the bar still
        // wins unless a bar-clearing one exists within ~2 decades of it.
        const double lowBar = std::max(0.1 * bar, kDefaultAngleEps);
        Bubble shB;
        double shCs = 0.0, shEps = 0.0;
        bool haveSh = false;
        int accepted = 0;
        for (double eps = L / 3.0; eps >= floor; eps /= 4.0)
          for (double qf : {0.4, 0.13, 0.04}) {
            Bubble b;
            const double cs = tryProl(eps, qf, b, lowBar);
            if (cs <= lowBar) continue;
            if (accepted++ < skipN) continue;
            if (!haveSh) {
              shB = b;
              shCs = cs;
              shEps = eps;
              haveSh = true;
            }
            if (cs <= bar) continue;
            if (eps < shEps / 64.0) {
              b = shB;
              // cs of the shallow fallback re-certifies identically.
            } else {
              shCs = cs;
            }
            if (std::getenv("MONODRAW_DBG"))
              std::fprintf(stderr,
                           "makeOneBubble prol w=%d f=%d eps=%.3g r=%.3g cert=%.3g alpha->%.3g\n",
                           w, f, b.eps, b.certCircle.radius, shCs, std::min(st.alpha, shCs));
            st.bubbles[key(f, w)] = b;
            st.alpha = std::min(st.alpha, shCs);
            return true;
          }
      }
    }
    return false;
  };
  // Sweep phase: free search over direction, scale and radius. In open
  // regions it finds bubbles with far more slack than the pinned reroute
  // bound, which is what deep stacking chains feed on.
  auto gridPhase = [&](double bar) -> bool {
    double barBest = -kPi;
    int stale = 0;
    for (double rT = rMax; rT >= floor; rT /= 2.0) {
      double bestPhi = 0.0, bestLam = 0.0, bestVal = -kPi;
      auto probe = [&](double lam, double phi) {
        if (phi < kPhiLo || phi > kPhiHi) return;
        for (double b : bannedPhi)
          if (std::abs(phi - b) < 0.2) return;
        Bubble b;
        if (!placeR(lam, phi, rT, b)) return;
        const double cs = tryCertify(b, bestVal);
        if (cs > bestVal) {
          bestVal = cs;
          bestPhi = phi;
          bestLam = lam;
        }
      };
      // Probe at scales tracking the target radius, spanning r/eps ratios
      // from needle-thin (large m: the bubble hugs the edge prolongation,
      // where rerouted witnesses lose almost no slack) to fat (small m: the
      // bubble sits close to w, clearing corridors of close-by siblings).
      const double L0 = dist(pw, st.drawing.pos[f]);
      double lams[5];
      int nl = 0;
      for (double m : {4096.0, 512.0, 64.0, 8.0, 2.7}) {
        const double lam = std::min(0.9, m * rT / L0);
        if (nl == 0 || lam < 0.999 * lams[nl - 1]) lams[nl++] = lam;
      }
      for (int li = 0; li < nl; ++li) {
        for (int i = 0; i < 32; ++i) probe(lams[li], kPhiLo + (kPhiHi - kPhiLo) * (i + 0.5) / 32.0);
        probe(lams[li], phiProl);
      }
      // Zoom on the best basin: the certified slack is a continuous,
      // basin-shaped function of phi, growing toward the feasible window
      // even outside it, so following the argmax locates windows far
      // narrower than the sweep step.
      double span = (kPhiHi - kPhiLo) / 32.0;
      for (int round = 0; round < 4 && bestVal < 0.35 && bestLam > 0.0; ++round) {
        const double c0 = bestPhi;
        for (int i = 0; i <= 8; ++i)
          if (i != 4) probe(bestLam, c0 - span + 2.0 * span * i / 8.0);
        span /= 4.0;
      }
      // The per-level optimum converges as the geometry becomes scale-free;
      // once it stops improving the rest of the ladder is hopeless.
      if (bestVal > -3.0) {
        if (bestVal > barBest + 1e-3) {
          barBest = bestVal;
          stale = 0;
        } else if (++stale >= 8) {
          break;
        }
      }
      if (bestVal <= bar) continue;

      Bubble b;
      if (!placeR(bestLam, bestPhi, rT, b)) continue;
      if (std::getenv("MONODRAW_DBG"))
        std::fprintf(stderr,
                     "makeOneBubble ok w=%d f=%d lam=%.3g phi=%.3g r=%.3g cert=%.3g alpha->%.3g\n",
                     w, f, bestLam, bestPhi, b.certCircle.radius, bestVal,
                     std::min(st.alpha, bestVal));
      st.bubbles[key(f, w)] = b;
      st.alpha = std::min(st.alpha, bestVal);
      lastPhi = bestPhi;
      return true;
    }
    return false;
  };
  // First attempts favor the sweep (better slack in open regions); retries
  // after a stranded descendant favor the pinned ladder, whose skipN descent
  // shrinks the bubble at the same principled spot.
  for (double bar : bars) {
    if (skipN == 0) {
      if (gridPhase(bar)) return lastPhi;
      if (prolPhase(bar)) return phiProl;
    } else {
      if (prolPhase(bar)) return phiProl;
      if (gridPhase(bar)) return lastPhi;
    }
  }
  if (std::getenv("MONODRAW_SCAN")) {
    const double Lp = dist(pw, st.drawing.pos[f]);
    const Vec2 dp = (pw - pother).normalized();
    for (double epsf : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8, 1e-10})
      for (double q : {1e-1, 1e-2, 1e-3}) {
        const double eps = epsf * Lp;
        const Point2 c = pw + eps * dp;
        Bubble b{{f, w}, {c, q * eps / 2.0}, {c, q * eps}, eps};
        const bool cc = corridorClear(st, f, w, c, q * eps);
        const double cs = cc ? tryCertify(b, -kPi) : -9.0;
        std::fprintf(stderr, "prol eps=%.1eL q=%.0e cc=%d cert=%.4g\n", epsf, q, (int)cc, cs);
      }
    for (double rT = rMax; rT >= floor; rT /= 16.0) {
      const double L0 = dist(pw, st.drawing.pos[f]);
      for (double m : {64.0, 8.0, 2.7}) {
        const double lam = std::min(0.9, m * rT / L0);
        double bv = -kPi, bp = 0.0;
        for (int i = 0; i < 256; ++i) {
          const double phi = kPhiLo + (kPhiHi - kPhiLo) * (i + 0.5) / 256.0;
          Bubble b;
          if (!placeR(lam, phi, rT, b)) continue;
          const double cs = tryCertify(b, -kPi);
          if (cs > bv) { bv = cs; bp = phi; }
        }
        std::fprintf(stderr, "scan rT=%.3g lam=%.3g best=%.4g at phi=%.4g\n", rT, lam, bv, bp);
        if (bv > -3.0) {
          Bubble b;
          if (placeR(lam, bp, rT, b)) tryCertify(b, bv + 1e-6);
        }
      }
    }
  }
  if (std::getenv("MONODRAW_DBG")) {
    std::fprintf(stderr, "makeOneBubble fail w=%d f=%d floor=%.3g alpha=%.3g\n", w, f, floor,
                 st.alpha);
    for (size_t y = 0; y < st.placed.size(); ++y)
      if (st.placed[y])
        std::fprintf(stderr, "  pos[%zu]=(%.17g,%.17g)\n", y, st.drawing.pos[y].x,
                     st.drawing.pos[y].y);
    for (const auto& [kk, bb] : st.bubbles)
      std::fprintf(stderr, "  bubble (%d,%d) c=(%.17g,%.17g) r=%.3g\n", bb.edge.first,
                   bb.edge.second, bb.certCircle.center.x, bb.certCircle.center.y,
                   bb.certCircle.radius);
  }
  throw PrecisionError("makeBubbles: parameter search hit the floor");
}

}  // namespace

void makeBubbles(BubbledDrawing& st, int w, int u, int v, bool needB1, bool needB2) {
  if (!needB1 && !needB2) return;
  const Point2 pw = st.drawing.pos[w], pu = st.drawing.pos[u], pv = st.drawing.pos[v];
  if ((pu - pw).dot(pv - pw) >= 0.0)
    throw InvariantError("makeBubbles: stacked vertex does not see its edge obtusely");
  // One edge at a time: the second search certifies against the first bubble
  // through the incremental context, so the two directions stay decoupled.
  if (needB1) makeOneBubble(st, w, u, v);
  if (needB2) makeOneBubble(st, w, v, u);
}

void stackIntoBubble(BubbledDrawing& st, std::pair<int, int> e, const std::vector<int>& verts) {
  auto it = st.bubbles.find(key(e));
  if (verts.empty()) {
    if (it != st.bubbles.end()) st.bubbles.erase(it);
    return;
  }
  if (it == st.bubbles.end())
    throw InvariantError("stackIntoBubble: active edge has no bubble");
  Bubble bub = it->second;
  const int far = bub.edge.first, near = bub.edge.second;
  const Point2 pf = st.drawing.pos[far];
  const Point2 pnear = st.drawing.pos[near];
  const int k = static_cast<int>(verts.size());
  const double span = coordSpan(st);

  for (int attempt = 0; attempt < 80; ++attempt) {
    if (bub.circle.radius < 1e-15 * span)
      throw PrecisionError("stackIntoBubble: bubble collapsed before placement succeeded");
    // Arc around the near endpoint: the stacked vertices are equidistant from
    // it, so the pairwise path w_i -> near -> w_j has slack exactly half their
    // angular separation. The bubble subtends a much larger angle at the near
    // endpoint than at the far one, which keeps that separation of the order
    // of the angular budget instead of the (exponentially decaying) ratio of
    // bubble radius to edge length.
    const double d = dist(pnear, bub.circle.center);
    // Spread as widely as the bubble allows: the sibling separation angle at
    // the near endpoint is the slack currency of every deeper level, so use
    // nearly the full chord (the radial sag of the arc is second order).
    const double betaMax = std::asin(std::min(1.0, 0.9 * bub.circle.radius / d));
    const double base = (bub.circle.center - pnear).angle();
    std::vector<Point2> pts;
    for (int j = 0; j < k; ++j) {
      const double ang = k == 1 ? base : base - betaMax + 2.0 * betaMax * j / (k - 1);
      pts.push_back(pnear + d * dirFromAngle(ang));
    }

    bool ok = true;
    const Point2 pn = st.drawing.pos[near];
    const Point2 mid = {(pf.x + pn.x) / 2.0, (pf.y + pn.y) / 2.0};
    for (const Point2& p : pts) {
      if (!bub.circle.containsStrict(p)) ok = false;
      if (dist(p, mid) >= dist(pf, pn) / 2.0) ok = false;  // obtusity (Thales)
    }
    if (ok) {
      for (size_t y = 0; y < st.placed.size() && ok; ++y)
        if (st.placed[y])
          for (const Point2& p : pts)
            if (p == st.drawing.pos[y]) ok = false;
      for (const Point2& p : pts) {
        if (!ok) break;
        for (const auto& [a, b] : st.drawing.graph.edges()) {
          const Point2 pa = st.drawing.pos[a], pb = st.drawing.pos[b];
          if ((a != far && b != far && segmentsIntersect(pf, p, pa, pb)) ||
              (a != near && b != near && segmentsIntersect(pn, p, pa, pb))) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      const std::pair<int, int> skip = key(e);
      std::vector<ExtraPt> extras;
      for (const Point2& p : pts) extras.push_back({p, far, near});
      const double s = certifyIncremental(st, &skip, extras, true, kDefaultAngleEps);
      if (s > kDefaultAngleEps) {
        if (std::getenv("MONODRAW_DBG"))
          std::fprintf(stderr, "stack ok e=(%d,%d) k=%d attempt=%d rad=%.3g s=%.3g alpha->%.3g\n",
                       far, near, k, attempt, bub.circle.radius, s, std::min(st.alpha, s));
        st.bubbles.erase(key(e));
        for (int j = 0; j < k; ++j) {
          const int wv = verts[j];
          st.drawing.pos[wv] = pts[j];
          st.placed[wv] = true;
          st.drawing.graph.addEdge(far, wv);
          st.drawing.graph.addEdge(near, wv);
        }
        st.alpha = std::min(st.alpha, s);
        return;
      }
    }
    bub.circle.radius /= 2.0;
  }
  throw PrecisionError("stackIntoBubble: retries exhausted");
}

std::vector<Point2> rerouteWitness(const BubbledDrawing& st, int y, Point2 x,
                                   std::pair<int, int> bubbleEdge) {
  const int far = bubbleEdge.first, near = bubbleEdge.second;
  if (y == near) return {st.drawing.pos[y], x};
  PairWitness w = detail::widestSlackPath(st.drawing, y, near, kDefaultAngleEps);
  if (w.verdict != PairVerdict::Yes)
    throw InvariantError("rerouteWitness: no certified path to the bubble edge");
  std::vector<Point2> pts;
  const size_t len = w.path.size();
  if (len >= 2 && w.path[len - 2] == far) {
    for (size_t i = 0; i + 1 < len; ++i) pts.push_back(st.drawing.pos[w.path[i]]);
  } else {
    for (int vid : w.path) pts.push_back(st.drawing.pos[vid]);
  }
  pts.push_back(x);
  return pts;
}

Drawing drawTwoTree(const Graph& g) {
  StackingPlan plan = twoTreePlan(g);  // throws ClassificationError
  const int n = g.vertexCount();
  std::set<std::pair<int, int>> needBubble;
  for (const StackingStep& s : plan.steps)
    if (!s.stackedVertices.empty()) needBubble.insert(key(s.activeEdge));

  // Flatten the plan into a list of operations so that a failure can roll
  // back to the operation that created the implicated bubble. A stack (or a
  // child-bubble search) can fail only because the bubble it lives in was
  // aimed at a direction whose surroundings leave no room one level down;
  // re-running that bubble's search with the old direction banned picks a
  // different basin, which moves the whole subtree macroscopically.
  struct Op {
    bool isStack;
    std::pair<int, int> edge;  // stack: active edge; bubble: (f, w)
    std::vector<int> verts;    // stack only
    int other = -1;            // bubble only: third triangle vertex
  };
  std::vector<Op> ops;
  std::map<int, std::pair<int, int>> stackedOn;
  for (const StackingStep& s : plan.steps) {
    ops.push_back({true, s.activeEdge, s.stackedVertices, -1});
    const auto [u, v] = s.activeEdge;
    for (int w : s.stackedVertices) {
      stackedOn[w] = s.activeEdge;
      if (needBubble.count(key(u, w))) ops.push_back({false, {u, w}, {}, v});
      if (needBubble.count(key(v, w))) ops.push_back({false, {v, w}, {}, u});
    }
  }
  std::map<std::pair<int, int>, int> creator;  // bubble key -> op index
  for (int i = 0; i < (int)ops.size(); ++i)
    if (!ops[i].isStack) creator[key(ops[i].edge)] = i;

  std::map<std::pair<int, int>, std::vector<double>> banned;
  std::map<std::pair<int, int>, double> chosenPhi;
  std::vector<BubbledDrawing> snap(ops.size());
  int budget = 60;
  BubbledDrawing st = beginTwoTree(g, plan.baseEdge, needBubble.count(key(plan.baseEdge)) > 0);
  for (int i = 0; i < (int)ops.size();) {
    snap[i] = st;
    try {
      const Op& op = ops[i];
      if (op.isStack) {
        stackIntoBubble(st, op.edge, op.verts);
      } else {
        const auto [f, w] = op.edge;
        const Point2 pw = st.drawing.pos[w];
        if ((st.drawing.pos[f] - pw).dot(st.drawing.pos[op.other] - pw) >= 0.0)
          throw InvariantError("drawTwoTree: stacked vertex does not see its edge obtusely");
        chosenPhi[key(op.edge)] = makeOneBubble(st, w, f, op.other, banned[key(op.edge)],
                                                (int)banned[key(op.edge)].size());
      }
      ++i;
    } catch (const PrecisionError&) {
      if (--budget < 0) throw;
      // Ban the direction of the bubble the failing element lives in; when
      // that bubble has no variants left, escalate to its own parent bubble
      // (whose move invalidates the stale bans below it). A failed bubble op
      // first blames its already-placed sibling bubble (the other edge of the
      // same stacked vertex), which is its closest obstruction.
      std::pair<int, int> pk;
      if (ops[i].isStack) {
        pk = key(ops[i].edge);
      } else {
        const auto sib = key(ops[i].other, ops[i].edge.second);
        const auto sit = creator.find(sib);
        pk = (sit != creator.end() && sit->second < i) ? sib
                                                       : key(stackedOn.at(ops[i].edge.second));
      }
      for (;;) {
        const auto it = creator.find(pk);
        if (it == creator.end() || !chosenPhi.count(pk)) throw;
        if (banned[pk].size() < 6) {
          banned[pk].push_back(chosenPhi[pk]);
          if (std::getenv("MONODRAW_DBG"))
            std::fprintf(stderr, "backtrack op=%d (%s %d,%d) ban bubble (%d,%d) phi=%.3g nban=%zu\n",
                         i, ops[i].isStack ? "stack" : "bubble", ops[i].edge.first,
                         ops[i].edge.second, pk.first, pk.second, chosenPhi[pk],
                         banned[pk].size());
          i = it->second;
          st = snap[i];
          break;
        }
        banned[pk].clear();
        pk = key(stackedOn.at(ops[it->second].edge.second));
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (!st.placed[v]) throw InvariantError("drawTwoTree: unplaced vertex");

  Drawing out;
  out.graph = g;
  out.pos = st.drawing.pos;
  return out;
}

}  // namespace monodraw
