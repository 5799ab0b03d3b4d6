#include "arw/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "arw/almost_period.hpp"
#include "arw/errors.hpp"
#include "arw/parallel.hpp"
#include "arw/rng.hpp"

namespace arw {

namespace {

constexpr double kVertexNudge = 1e-12;

// Share of nodal length allowed below the pointwise margin |grad| >=
// 10 h |Hess| before extraction is declared untrustworthy. Gaussian waves
// put a few percent of their length at locally small gradients in any
// realization; only a large share signals an actually degenerate zero set.
constexpr double kLowMarginLengthShare = 0.10;

struct Grid {
  double x0 = 0, y0 = 0, hx = 0, hy = 0;
  std::int32_t nx = 0, ny = 0;        // cell counts
  std::vector<double> values;         // (nx+1) x (ny+1), row-major in j

  double at(std::int32_t i, std::int32_t j) const {
    return values[static_cast<std::size_t>(j) * (nx + 1) + i];
  }
  double x_of(std::int32_t i) const { return x0 + i * hx; }
  double y_of(std::int32_t j) const { return y0 + j * hy; }
};

Grid evaluate_grid(const ScalarField& f, const Window& w, double h) {
  if (h <= 0) throw std::invalid_argument("extract_nodal: h must be positive");
  const auto [bx0, by0, bx1, by1] = w.bbox();
  Grid g;
  g.nx = std::max<std::int32_t>(1, static_cast<std::int32_t>(std::lround((bx1 - bx0) / h)));
  g.ny = std::max<std::int32_t>(1, static_cast<std::int32_t>(std::lround((by1 - by0) / h)));
  g.x0 = bx0;
  g.y0 = by0;
  g.hx = (bx1 - bx0) / g.nx;
  g.hy = (by1 - by0) / g.ny;
  g.values.resize(static_cast<std::size_t>(g.nx + 1) * (g.ny + 1));
  parallel_for(static_cast<std::size_t>(g.ny + 1), 0, [&](std::size_t j) {
    const double y = g.y_of(static_cast<std::int32_t>(j));
    for (std::int32_t i = 0; i <= g.nx; ++i)
      g.values[j * (g.nx + 1) + i] = f(g.x_of(i), y);
  });

  double amplitude = 0.0;
  for (double v : g.values) amplitude = std::max(amplitude, std::abs(v));
  if (amplitude == 0.0)
    throw DegenerateGridError("extract_nodal: field vanishes on the whole grid");
  for (double& v : g.values)
    if (v == 0.0) v = kVertexNudge * amplitude;
  return g;
}

bool clip_to_disk(double cx, double cy, double r, NodalSegment& s) {
  const double dx = s.x2 - s.x1, dy = s.y2 - s.y1;
  const double fx = s.x1 - cx, fy = s.y1 - cy;
  const double a = dx * dx + dy * dy;
  const double b = 2.0 * (fx * dx + fy * dy);
  const double c = fx * fx + fy * fy - r * r;
  if (a == 0.0) return c <= 0.0;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return false;  // line misses the disk
  const double sq = std::sqrt(disc);
  double t0 = (-b - sq) / (2.0 * a);
  double t1 = (-b + sq) / (2.0 * a);
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  if (t0 >= t1) return false;
  const double nx1 = s.x1 + t0 * dx, ny1 = s.y1 + t0 * dy;
  const double nx2 = s.x1 + t1 * dx, ny2 = s.y1 + t1 * dy;
  s.x1 = nx1;
  s.y1 = ny1;
  s.x2 = nx2;
  s.y2 = ny2;
  return true;
}

}  // namespace

Window Window::rect(double x0, double y0, double x1, double y1) {
  if (!(x1 > x0 && y1 > y0)) throw std::invalid_argument("Window::rect: empty rectangle");
  Window w;
  w.shape = Shape::rect;
  w.x0 = x0;
  w.y0 = y0;
  w.x1 = x1;
  w.y1 = y1;
  return w;
}

Window Window::disk(double cx, double cy, double r) {
  if (!(r > 0)) throw std::invalid_argument("Window::disk: radius must be positive");
  Window w;
  w.shape = Shape::disk;
  w.cx = cx;
  w.cy = cy;
  w.r = r;
  return w;
}

Window Window::parse(const std::string& spec) {
  auto parse_numbers = [](const std::string& s, std::size_t expected) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t next = s.find(',', pos);
      if (next == std::string::npos) next = s.size();
      out.push_back(std::stod(s.substr(pos, next - pos)));
      pos = next + 1;
    }
    if (out.size() != expected) throw std::invalid_argument("window spec: wrong field count");
    return out;
  };
  if (spec.rfind("disk:", 0) == 0) {
    const auto v = parse_numbers(spec.substr(5), 3);
    return disk(v[0], v[1], v[2]);
  }
  const auto v = parse_numbers(spec, 4);
  return rect(v[0], v[1], v[2], v[3]);
}

std::array<double, 4> Window::bbox() const {
  if (shape == Shape::rect) return {x0, y0, x1, y1};
  return {cx - r, cy - r, cx + r, cy + r};
}

bool Window::contains(double x, double y) const {
  if (shape == Shape::rect) return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  const double dx = x - cx, dy = y - cy;
  return dx * dx + dy * dy <= r * r;
}

Window Window::shifted(double dx, double dy) const {
  Window w = *this;
  if (shape == Shape::rect) {
    w.x0 += dx;
    w.x1 += dx;
    w.y0 += dy;
    w.y1 += dy;
  } else {
    w.cx += dx;
    w.cy += dy;
  }
  return w;
}

std::string Window::to_string() const {
  char buf[128];
  if (shape == Shape::rect)
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", x0, y0, x1, y1);
  else
    std::snprintf(buf, sizeof buf, "disk:%.17g,%.17g,%.17g", cx, cy, r);
  return buf;
}

double NodalSegment::length() const { return std::hypot(x2 - x1, y2 - y1); }

double NodalCurveSet::total_length() const {
  double s = 0.0;
  for (const auto& seg : segments) s += seg.length();
  return s;
}

NodalCurveSet extract_nodal(const ScalarField& f, const Window& window, double h) {
  const Grid g = evaluate_grid(f, window, h);
  NodalCurveSet out;
  out.window = window;
  out.hx = g.hx;
  out.hy = g.hy;
  out.cells_x = g.nx;
  out.cells_y = g.ny;

  const bool disk = window.shape == Window::Shape::disk;
  const double cell_diag = std::hypot(g.hx, g.hy);

  for (std::int32_t j = 0; j < g.ny; ++j) {
    for (std::int32_t i = 0; i < g.nx; ++i) {
      const double v0 = g.at(i, j);
      const double v1 = g.at(i + 1, j);
      const double v2 = g.at(i + 1, j + 1);
      const double v3 = g.at(i, j + 1);
      const int mask = (v0 > 0 ? 1 : 0) | (v1 > 0 ? 2 : 0) | (v2 > 0 ? 4 : 0) | (v3 > 0 ? 8 : 0);
      if (mask == 0 || mask == 15) continue;

      if (disk) {
        // skip cells fully outside the disk
        const double mx = g.x_of(i) + 0.5 * g.hx, my = g.y_of(j) + 0.5 * g.hy;
        const double d = std::hypot(mx - window.cx, my - window.cy);
        if (d > window.r + cell_diag) continue;
      }

      const double xl = g.x_of(i), xr = g.x_of(i + 1);
      const double yb = g.y_of(j), yt = g.y_of(j + 1);
      const auto bottom = [&] { return std::array<double, 2>{xl + g.hx * v0 / (v0 - v1), yb}; };
      const auto right = [&] { return std::array<double, 2>{xr, yb + g.hy * v1 / (v1 - v2)}; };
      const auto top = [&] { return std::array<double, 2>{xl + g.hx * v3 / (v3 - v2), yt}; };
      const auto left = [&] { return std::array<double, 2>{xl, yb + g.hy * v0 / (v0 - v3)}; };

      std::array<std::array<double, 2>, 4> pts;
      int npts = 0;
      auto emit = [&](std::array<double, 2> p, std::array<double, 2> q) {
        pts[npts++] = p;
        pts[npts++] = q;
      };

      switch (mask) {
        case 1: case 14: emit(left(), bottom()); break;
        case 2: case 13: emit(bottom(), right()); break;
        case 3: case 12: emit(left(), right()); break;
        case 4: case 11: emit(right(), top()); break;
        case 6: case 9: emit(bottom(), top()); break;
        case 7: case 8: emit(left(), top()); break;
        case 5: case 10: {
          // Opposite corners share a sign: the cell-center sample picks the
          // pairing.
          double c = f(xl + 0.5 * g.hx, yb + 0.5 * g.hy);
          if (c == 0.0) c = kVertexNudge;
          const bool plus_diagonal_connected = (mask == 5) == (c > 0);
          if (plus_diagonal_connected) {
            emit(bottom(), right());
            emit(top(), left());
          } else {
            emit(bottom(), left());
            emit(top(), right());
          }
          break;
        }
        default: break;
      }

      for (int s = 0; s + 1 < npts; s += 2) {
        NodalSegment seg;
        seg.x1 = pts[s][0];
        seg.y1 = pts[s][1];
        seg.x2 = pts[s + 1][0];
        seg.y2 = pts[s + 1][1];
        seg.cell_i = i;
        seg.cell_j = j;
        if (disk && !clip_to_disk(window.cx, window.cy, window.r, seg)) continue;
        if (seg.length() == 0.0) continue;
        out.segments.push_back(seg);
      }
    }
  }
  return out;
}

NodalCurveSet extract_nodal(const FieldRealization& f, const Window& window, double h) {
  return extract_nodal([&f](double x, double y) { return f.eval(x, y); }, window, h);
}

double nodal_length(const ScalarField& f, const Window& window, double h) {
  return extract_nodal(f, window, h).total_length();
}

double nodal_length(const FieldRealization& f, const Window& window, double h) {
  return extract_nodal(f, window, h).total_length();
}

double weighted_gamma_of_curves(const NodalCurveSet& curves, const ScalarField& phi) {
  double s = 0.0;
  for (const auto& seg : curves.segments)
    s += phi(0.5 * (seg.x1 + seg.x2), 0.5 * (seg.y1 + seg.y2)) * seg.length();
  return s;
}

double weighted_gamma(const ScalarField& f, const ScalarField& phi, const Window& window, double h) {
  return weighted_gamma_of_curves(extract_nodal(f, window, h), phi);
}

double weighted_gamma(const FieldRealization& f, const ScalarField& phi, const Window& window,
                      double h) {
  return weighted_gamma_of_curves(extract_nodal(f, window, h), phi);
}

NodalObservable observe_curves(const NodalCurveSet& curves, const ScalarField& phi,
                               const GradientField& grad,
                               const std::function<double(double, double)>& hessian_norm) {
  NodalObservable o;
  o.regular_margin = std::numeric_limits<double>::infinity();
  double boundary_len = 0.0, low_margin_len = 0.0;
  const double h = std::max(curves.hx, curves.hy);
  for (const auto& seg : curves.segments) {
    const double len = seg.length();
    const double mx = 0.5 * (seg.x1 + seg.x2), my = 0.5 * (seg.y1 + seg.y2);
    o.length += len;
    o.weighted_integral += phi(mx, my) * len;
    const auto gv = grad(mx, my);
    const double gn = std::hypot(gv[0], gv[1]);
    o.regular_margin = std::min(o.regular_margin, gn);
    if (hessian_norm && gn < 10.0 * h * hessian_norm(mx, my)) low_margin_len += len;

    bool boundary = false;
    if (curves.window.shape == Window::Shape::rect) {
      boundary = seg.cell_i == 0 || seg.cell_i == curves.cells_x - 1 || seg.cell_j == 0 ||
                 seg.cell_j == curves.cells_y - 1;
    } else {
      const double d = std::hypot(mx - curves.window.cx, my - curves.window.cy);
      boundary = d > curves.window.r - std::hypot(curves.hx, curves.hy);
    }
    if (boundary) boundary_len += len;
  }
  if (curves.segments.empty()) o.regular_margin = 0.0;
  if (o.length > 0) {
    o.boundary_fraction = boundary_len / o.length;
    o.low_margin_fraction = low_margin_len / o.length;
  }
  return o;
}

double coarea_estimate(const ScalarField& f, const GradientField& grad, const ScalarField& phi,
                       const Window& window, double h) {
  const auto [bx0, by0, bx1, by1] = window.bbox();
  const auto nx = std::max<std::int64_t>(1, std::llround((bx1 - bx0) / h));
  const auto ny = std::max<std::int64_t>(1, std::llround((by1 - by0) / h));
  const double hx = (bx1 - bx0) / nx, hy = (by1 - by0) / ny;

  double max_grad = 0.0;
  std::vector<double> fv(static_cast<std::size_t>(nx) * ny), gv(fv.size()), pv(fv.size());
  std::vector<char> inside(fv.size());
  std::size_t idx = 0;
  for (std::int64_t j = 0; j < ny; ++j) {
    for (std::int64_t i = 0; i < nx; ++i, ++idx) {
      const double x = bx0 + (i + 0.5) * hx, y = by0 + (j + 0.5) * hy;
      inside[idx] = window.contains(x, y);
      if (!inside[idx]) continue;
      fv[idx] = f(x, y);
      const auto g = grad(x, y);
      gv[idx] = std::hypot(g[0], g[1]);
      pv[idx] = phi(x, y);
      max_grad = std::max(max_grad, gv[idx]);
    }
  }
  const double eps = 5.0 * std::max(hx, hy) * max_grad;
  if (eps == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < fv.size(); ++k)
    if (inside[k] && std::abs(fv[k]) <= eps) sum += pv[k] * gv[k];
  return sum * hx * hy / (2.0 * eps);
}

double hausdorff_midpoint_distance(const NodalCurveSet& a, const NodalCurveSet& b) {
  auto midpoints = [](const NodalCurveSet& c) {
    std::vector<std::array<double, 2>> m;
    m.reserve(c.segments.size());
    for (const auto& s : c.segments) m.push_back({0.5 * (s.x1 + s.x2), 0.5 * (s.y1 + s.y2)});
    return m;
  };
  const auto pa = midpoints(a);
  const auto pb = midpoints(b);
  if (pa.empty() || pb.empty())
    return pa.empty() && pb.empty() ? 0.0 : std::numeric_limits<double>::infinity();

  // Bucketed nearest-neighbour sweep; bucket size tracks the grid scale.
  struct Buckets {
    double x0, y0, cell;
    std::int64_t nx, ny;
    std::vector<std::vector<std::uint32_t>> bins;
    const std::vector<std::array<double, 2>>* pts;
  };
  auto build = [](const std::vector<std::array<double, 2>>& pts, double cell) {
    Buckets bk;
    bk.cell = cell;
    bk.pts = &pts;
    double x0 = pts[0][0], x1 = x0, y0 = pts[0][1], y1 = y0;
    for (const auto& p : pts) {
      x0 = std::min(x0, p[0]);
      x1 = std::max(x1, p[0]);
      y0 = std::min(y0, p[1]);
      y1 = std::max(y1, p[1]);
    }
    bk.x0 = x0;
    bk.y0 = y0;
    bk.nx = std::max<std::int64_t>(1, static_cast<std::int64_t>((x1 - x0) / cell) + 1);
    bk.ny = std::max<std::int64_t>(1, static_cast<std::int64_t>((y1 - y0) / cell) + 1);
    bk.bins.resize(static_cast<std::size_t>(bk.nx * bk.ny));
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
      auto bi = std::min<std::int64_t>(bk.nx - 1, static_cast<std::int64_t>((pts[i][0] - x0) / cell));
      auto bj = std::min<std::int64_t>(bk.ny - 1, static_cast<std::int64_t>((pts[i][1] - y0) / cell));
      bk.bins[static_cast<std::size_t>(bj * bk.nx + bi)].push_back(i);
    }
    return bk;
  };
  auto nearest = [](const Buckets& bk, const std::array<double, 2>& q) {
    const auto bi = std::clamp<std::int64_t>(static_cast<std::int64_t>((q[0] - bk.x0) / bk.cell), 0, bk.nx - 1);
    const auto bj = std::clamp<std::int64_t>(static_cast<std::int64_t>((q[1] - bk.y0) / bk.cell), 0, bk.ny - 1);
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t ring = 0; ring < bk.nx + bk.ny + 2; ++ring) {
      if (ring > 1 && best < (ring - 1) * bk.cell) break;
      for (std::int64_t dj = -ring; dj <= ring; ++dj) {
        for (std::int64_t di = -ring; di <= ring; ++di) {
          if (std::max(std::abs(di), std::abs(dj)) != ring) continue;
          const std::int64_t ci = bi + di, cj = bj + dj;
          if (ci < 0 || cj < 0 || ci >= bk.nx || cj >= bk.ny) continue;
          for (std::uint32_t id : bk.bins[static_cast<std::size_t>(cj * bk.nx + ci)]) {
            const auto& p = (*bk.pts)[id];
            best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
          }
        }
      }
    }
    return best;
  };
  const double cell = 4.0 * std::max(std::max(a.hx, a.hy), std::max(b.hx, b.hy));
  const auto ba = build(pa, cell);
  const auto bb = build(pb, cell);
  double d = 0.0;
  for (const auto& p : pa) d = std::max(d, nearest(bb, p));
  for (const auto& p : pb) d = std::max(d, nearest(ba, p));
  return d;
}

namespace {

ScalarField bump_weight(const Window& w) {
  double cx, cy, sx, sy;
  if (w.shape == Window::Shape::rect) {
    cx = 0.5 * (w.x0 + w.x1);
    cy = 0.5 * (w.y0 + w.y1);
    sx = 0.5 * (w.x1 - w.x0);
    sy = 0.5 * (w.y1 - w.y0);
  } else {
    cx = w.cx;
    cy = w.cy;
    sx = sy = w.r;
  }
  return [cx, cy, sx, sy](double x, double y) {
    const double u = (x - cx) / sx, v = (y - cy) / sy;
    const double q2 = u * u + v * v;
    return q2 < 1.0 ? std::exp(-1.0 / (1.0 - q2)) : 0.0;
  };
}

}  // namespace

ReplicationReport replication_compare(const FieldRealization& f, const std::vector<double>& tau,
                                      double eps_certified, const Window& window, double h) {
  if (tau.size() != 2) throw std::invalid_argument("replication_compare: tau must be 2-dimensional");
  const auto ft = translated_field(f, {tau[0], tau[1]});

  const auto curves = extract_nodal(f, window, h);
  const auto curves_t = extract_nodal(ft, window, h);

  const GradientField grad_f = [&f](double x, double y) { return f.gradient(x, y); };
  const GradientField grad_t = [&ft](double x, double y) { return ft.gradient(x, y); };
  const auto hess_f = [&f](double x, double y) {
    const auto H = f.hessian(x, y);
    return std::sqrt(H[0] * H[0] + 2.0 * H[1] * H[1] + H[2] * H[2]);
  };
  const ScalarField one = [](double, double) { return 1.0; };

  const auto obs = observe_curves(curves, one, grad_f, hess_f);
  const auto obs_t = observe_curves(curves_t, one, grad_t, {});
  if (obs.low_margin_fraction > kLowMarginLengthShare)
    throw SkippedLowMarginError("replication: " + std::to_string(obs.low_margin_fraction * 100) +
                                "% of nodal length sits at near-singular zeros for this grid");

  ReplicationReport rep;
  rep.n = f.n;
  rep.seed = f.seed;
  rep.tau = tau;
  rep.eps_certified = eps_certified;
  rep.regular_margin_base = obs.regular_margin;
  rep.regular_margin_translated = obs_t.regular_margin;
  rep.boundary_fraction_base = obs.boundary_fraction;

  const ScalarField coordx = [](double x, double) { return x; };
  const auto bump = bump_weight(window);
  const std::pair<const char*, const ScalarField*> bank[] = {
      {"const", &one}, {"coordx", &coordx}, {"bump", &bump}};
  for (const auto& [name, phi] : bank) {
    ReplicationRow row;
    row.phi = name;
    row.gamma_base = weighted_gamma_of_curves(curves, *phi);
    row.gamma_translated = weighted_gamma_of_curves(curves_t, *phi);
    row.abs_diff = std::abs(row.gamma_base - row.gamma_translated);
    row.rel_diff = row.abs_diff / std::max(std::abs(row.gamma_base), 1e-12);
    rep.rows.push_back(row);
  }
  rep.hausdorff_midpoints = hausdorff_midpoint_distance(curves, curves_t);
  return rep;
}

ReplicationReport replication_experiment(std::int64_t n, std::uint64_t seed, int m,
                                         const Window& window, double h) {
  const auto fs = enumerate_lattice(n);
  const auto kernel = rescaled_kernel(fs);
  const auto ap = almost_period_of_kernel(kernel, m);
  const auto f = sample_arw(fs, seed, /*rescaled=*/true);
  auto rep = replication_compare(f, ap.tau, ap.epsilon_certified, window, h);
  rep.m = m;
  return rep;
}

ExpectedLengthReport expected_length_check(std::int64_t n, int trials, std::uint64_t seed,
                                           int threads) {
  if (trials < 1) throw std::invalid_argument("expected_length_check: trials must be >= 1");
  const auto fs = enumerate_lattice(n);
  const double root = std::sqrt(static_cast<double>(n));
  const auto cells = static_cast<int>(std::ceil(30.0 * root));  // h <= 1/(20 sqrt n) with margin
  const double h = 1.0 / cells;
  const auto window = Window::rect(0.0, 0.0, 1.0, 1.0);

  ExpectedLengthReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.grid_h = h;
  const double energy = 4.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(n);
  rep.target = std::sqrt(energy) / (2.0 * std::sqrt(2.0));
  rep.lengths.resize(trials);

  const CounterRng master(seed);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    const auto f = sample_arw(fs, master.derive(t).seed(), /*rescaled=*/false);
    rep.lengths[t] = nodal_length(f, window, h);
  });

  double mean = 0.0;
  for (double v : rep.lengths) mean += v;
  mean /= trials;
  double var = 0.0;
  for (double v : rep.lengths) var += (v - mean) * (v - mean);
  rep.mean = mean;
  rep.stddev = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
  rep.rel_error = std::abs(mean - rep.target) / rep.target;
  return rep;
}

CorrelationReport correlation_experiment(std::int64_t n, double eps, int trials,
                                         std::uint64_t seed, int threads) {
  if (n > 5000) throw std::invalid_argument("correlation_experiment: desk guard n <= 5000");
  if (trials < 3) throw std::invalid_argument("correlation_experiment: trials must be >= 3");
  const auto fs = enumerate_lattice(n);
  const double root = std::sqrt(static_cast<double>(n));
  const auto cells = static_cast<int>(std::ceil(20.0 * root));
  const double h = 1.0 / cells;
  const auto window = Window::rect(0.0, 0.0, 1.0, 1.0);
  const double radius = std::pow(static_cast<double>(n), -0.5 + eps);

  CorrelationReport rep;
  rep.n = n;
  rep.eps = eps;
  rep.trials = trials;
  rep.ball_radius = radius;
  rep.full_lengths.resize(trials);
  rep.ball_lengths.resize(trials);

  const CounterRng master(seed);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    const auto f = sample_arw(fs, master.derive(t).seed(), /*rescaled=*/false);
    const auto curves = extract_nodal(f, window, h);
    double full = 0.0, ball = 0.0;
    for (const auto& seg : curves.segments) {
      full += seg.length();
      NodalSegment clipped = seg;
      if (clip_to_disk(0.5, 0.5, radius, clipped)) ball += clipped.length();
    }
    rep.full_lengths[t] = full;
    rep.ball_lengths[t] = ball;
  });

  auto pearson = [](const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ma += a[i];
      mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sab += (a[i] - ma) * (b[i] - mb);
      saa += (a[i] - ma) * (a[i] - ma);
      sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0 || sbb == 0) return saa == sbb ? 1.0 : 0.0;
    return sab / std::sqrt(saa * sbb);
  };
  rep.correlation = pearson(rep.full_lengths, rep.ball_lengths);

  // Percentile bootstrap for the correlation.
  const int resamples = 1000;
  std::vector<double> boot(resamples);
  const CounterRng brng(master.derive(0xB007ull).seed());
  std::vector<double> ra(trials), rb(trials);
  for (int r = 0; r < resamples; ++r) {
    for (int i = 0; i < trials; ++i) {
      const auto pick = static_cast<std::size_t>(brng.uniform(static_cast<std::uint64_t>(r) * trials + i) * trials);
      ra[i] = rep.full_lengths[pick];
      rb[i] = rep.ball_lengths[pick];
    }
    boot[r] = pearson(ra, rb);
  }
  std::sort(boot.begin(), boot.end());
  rep.ci_lo = boot[static_cast<std::size_t>(0.025 * resamples)];
  rep.ci_hi = boot[static_cast<std::size_t>(0.975 * resamples) - 1];

  double mean = 0.0;
  for (double v : rep.full_lengths) mean += v;
  mean /= trials;
  double var = 0.0;
  for (double v : rep.full_lengths) var += (v - mean) * (v - mean);
  rep.var_full = var / (trials - 1);
  const double energy = 4.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(n);
  rep.var_reference = energy / (512.0 * static_cast<double>(fs.cardinality) *
                                static_cast<double>(fs.cardinality));
  return rep;
}

}  // namespace arw
