#include "tflab/calderon.hpp"

#include "tflab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tflab {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double log_or_neg_inf(double x) { return x == 0.0 ? neg_inf : std::log(x); }

bool is_finite_positive_exponent(double x) { return std::isinf(x) || x > 0.0; }

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

// ---- polygon integration in log coordinates --------------------------------

struct Point {
  double r;
  double s;
};

using Polygon = std::vector<Point>;

// Keeps the part of `poly` with alpha r + beta s <= gamma.
Polygon clip(const Polygon& poly, double alpha, double beta, double gamma) {
  Polygon out;
  if (poly.empty()) return out;
  auto side = [&](const Point& p) { return alpha * p.r + beta * p.s - gamma; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& cur = poly[i];
    const Point& nxt = poly[(i + 1) % poly.size()];
    const double dc = side(cur);
    const double dn = side(nxt);
    if (dc <= 0.0) out.push_back(cur);
    if ((dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0)) {
      const double lambda = dc / (dc - dn);
      out.push_back({cur.r + lambda * (nxt.r - cur.r), cur.s + lambda * (nxt.s - cur.s)});
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

double expm1_ratio(double x) { return x == 0.0 ? 1.0 : std::expm1(x) / x; }

// Integral of exp(alpha r + beta s) over a counter-clockwise convex polygon, by
// Green's theorem on the larger of the two exponents.
double integrate_exponential(const Polygon& poly, double alpha, double beta, double offset) {
  if (poly.size() < 3) return 0.0;
  if (alpha == 0.0 && beta == 0.0) {
    double area = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % poly.size()];
      area += p.r * q.s - q.r * p.s;
    }
    return 0.5 * std::abs(area) * std::exp(offset);
  }
  double top = neg_inf;
  for (const auto& p : poly) top = std::max(top, alpha * p.r + beta * p.s);
  const bool along_r = std::abs(alpha) >= std::abs(beta);
  double sum = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    const double e0 = alpha * p.r + beta * p.s - top;
    const double e1 = alpha * q.r + beta * q.s - top;
    // (exp(e1) - exp(e0)) / (e1 - e0), anchored at the larger endpoint.
    const double edge = e1 > e0 ? std::exp(e1) * expm1_ratio(e0 - e1) : std::exp(e0) * expm1_ratio(e1 - e0);
    sum += along_r ? (q.s - p.s) * edge : -(q.r - p.r) * edge;
  }
  const double value = sum / (along_r ? alpha : beta);
  return std::max(0.0, value) * std::exp(top + offset);
}

double max_a(const EtaSet& eta) {
  double m = 0.0;
  for (const auto& k : eta.triples()) m = std::max(m, k.a);
  return m;
}

double max_b(const EtaSet& eta) {
  double m = 0.0;
  for (const auto& k : eta.triples()) m = std::max(m, k.b);
  return m;
}

// Mass of a step function near 0 makes the log-domain rectangle unbounded below.
bool heavy_at_zero(const StepFunction& f) { return f.pieces() > 0 && f.values()[0] > 0.0; }

double calderon_exact(const EtaSet& eta, const StepFunction& f, const StepFunction& g, double t) {
  const double lt = std::log(t);
  const auto& tr = eta.triples();
  const double ra = max_a(eta);
  const double rb = max_b(eta);
  if ((ra == 0.0 && heavy_at_zero(f) && !g.is_zero()) || (rb == 0.0 && heavy_at_zero(g) && !f.is_zero())) return kInf;
  double total = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double fv = f.values()[i];
    if (fv == 0.0) continue;
    const double r1 = std::log(f.breaks()[i + 1]);
    const double r0 = i == 0 ? r1 - 1400.0 / ra : std::log(f.breaks()[i]);
    for (std::size_t j = 0; j < g.pieces(); ++j) {
      const double gv = g.values()[j];
      if (gv == 0.0) continue;
      const double s1 = std::log(g.breaks()[j + 1]);
      const double s0 = j == 0 ? s1 - 1400.0 / rb : std::log(g.breaks()[j]);
      const Polygon rect{{r0, s0}, {r1, s0}, {r1, s1}, {r0, s1}};
      for (std::size_t k = 0; k < tr.size(); ++k) {
        Polygon region = rect;
        for (std::size_t l = 0; l < tr.size() && !region.empty(); ++l) {
          if (l == k) continue;
          const double da = tr[k].a - tr[l].a;
          const double db = tr[k].b - tr[l].b;
          const double dc = (tr[k].c - tr[l].c) * lt;
          if (da == 0.0 && db == 0.0) {
            if (-dc > 0.0 || (-dc == 0.0 && l < k)) region.clear();
            continue;
          }
          region = clip(region, da, db, dc);
        }
        if (region.empty()) continue;
        total += fv * gv * integrate_exponential(region, tr[k].a, tr[k].b, -tr[k].c * lt);
      }
    }
  }
  return total;
}

// Points where the active branch of min_k {a_k r + b_k s - c_k lt} may switch,
// as a function of s for fixed r.
std::vector<double> switch_points_s(const EtaSet& eta, double r, double lt) {
  std::vector<double> out;
  const auto& tr = eta.triples();
  for (std::size_t k = 0; k < tr.size(); ++k)
    for (std::size_t l = k + 1; l < tr.size(); ++l) {
      const double db = tr[k].b - tr[l].b;
      if (db == 0.0) continue;
      out.push_back(((tr[k].c - tr[l].c) * lt - (tr[k].a - tr[l].a) * r) / db);
    }
  return out;
}

double log_kernel(const EtaSet& eta, double r, double s, double lt) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& k : eta.triples()) m = std::min(m, k.a * r + k.b * s - k.c * lt);
  return std::exp(m);
}

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

double integrate_pieces(const std::function<double(double)>& fn, std::vector<double> cuts, double lo, double hi,
                        double tol) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (a < lo || b > hi || !(b > a)) continue;
    sum += GK::integrate(fn, a, b, 12, tol);
  }
  return sum;
}

double calderon_quadrature(const EtaSet& eta, const StepFunction& f, const StepFunction& g, double t) {
  const double lt = std::log(t);
  if ((max_a(eta) == 0.0 && heavy_at_zero(f) && !g.is_zero()) ||
      (max_b(eta) == 0.0 && heavy_at_zero(g) && !f.is_zero()))
    return kInf;
  const auto& tr = eta.triples();
  std::vector<double> g_logs;
  for (std::size_t j = 1; j < g.breaks().size(); ++j) g_logs.push_back(std::log(g.breaks()[j]));
  double total = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double fv = f.values()[i];
    if (fv == 0.0) continue;
    const double r0 = log_or_neg_inf(f.breaks()[i]);
    const double r1 = std::log(f.breaks()[i + 1]);
    auto inner = [&](double r) {
      double sum = 0.0;
      for (std::size_t j = 0; j < g.pieces(); ++j) {
        const double gv = g.values()[j];
        if (gv == 0.0) continue;
        const double s0 = log_or_neg_inf(g.breaks()[j]);
        const double s1 = std::log(g.breaks()[j + 1]);
        auto fn = [&](double s) { return log_kernel(eta, r, s, lt); };
        sum += gv * integrate_pieces(fn, switch_points_s(eta, r, lt), s0, s1, 1e-13);
      }
      return sum;
    };
    // Outer cuts: where a switching line crosses a g-breakpoint level, and
    // where two switching lines cross.
    std::vector<double> cuts;
    for (std::size_t k = 0; k < tr.size(); ++k)
      for (std::size_t l = k + 1; l < tr.size(); ++l) {
        const double da = tr[k].a - tr[l].a;
        const double db = tr[k].b - tr[l].b;
        const double dc = (tr[k].c - tr[l].c) * lt;
        if (da != 0.0)
          for (double s : g_logs) cuts.push_back((dc - db * s) / da);
        for (std::size_t m = 0; m < tr.size(); ++m)
          for (std::size_t n = m + 1; n < tr.size(); ++n) {
            const double ea = tr[m].a - tr[n].a;
            const double eb = tr[m].b - tr[n].b;
            const double ec = (tr[m].c - tr[n].c) * lt;
            const double det = da * eb - db * ea;
            if (det != 0.0) cuts.push_back((dc * eb - db * ec) / det);
          }
      }
    total += fv * integrate_pieces(inner, cuts, r0, r1, 1e-10);
  }
  return total;
}

// f * g on the log axis: h(x) = sum_ij v_i w_j |[log T_i, log T_{i+1}) cap (log x - log S_{j+1}, log x - log S_j]|.
double convolution_at_log(const StepFunction& f, const StepFunction& g, double lx) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double fv = f.values()[i];
    if (fv == 0.0) continue;
    const double a0 = log_or_neg_inf(f.breaks()[i]);
    const double a1 = std::log(f.breaks()[i + 1]);
    for (std::size_t j = 0; j < g.pieces(); ++j) {
      const double gv = g.values()[j];
      if (gv == 0.0) continue;
      const double b0 = lx - std::log(g.breaks()[j + 1]);
      const double b1 = g.breaks()[j] == 0.0 ? std::numeric_limits<double>::infinity() : lx - std::log(g.breaks()[j]);
      const double lo = std::max(a0, b0);
      const double hi = std::min(a1, b1);
      if (hi > lo) sum += fv * gv * (hi - lo);
    }
  }
  return sum;
}

void check_exponent_at_least_one(double x, const char* name) {
  if (!(x >= 1.0)) throw CalderonError(fmt::format("exponent {} must lie in [1, inf], got {}", name, x));
}

}  // namespace

EtaSet::EtaSet(std::vector<EtaTriple> triples) : triples_(std::move(triples)) {
  if (triples_.empty()) throw CalderonError("eta set needs at least one triple");
  for (std::size_t k = 0; k < triples_.size(); ++k) {
    const auto& e = triples_[k];
    for (double x : {e.a, e.b, e.c})
      if (!(x >= 0.0 && x <= 1.0)) throw CalderonError("eta components must lie in [0, 1]");
    for (std::size_t l = 0; l < k; ++l)
      if (triples_[l] == e) throw CalderonError("eta triples must be distinct");
  }
}

double EtaSet::kernel(double r, double s, double t) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& k : triples_) m = std::min(m, std::pow(r, k.a) * std::pow(s, k.b) * std::pow(t, -k.c));
  return m;
}

EtaSet stft_endpoints() { return EtaSet({{0.5, 0.5, 0.5}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}); }

EtaSet l21_endpoints() { return EtaSet({{0.5, 0.5, 0.5}, {0.5, 0.5, 0.0}}); }

bool is_canonical(const EtaSet& eta) { return eta == stft_endpoints() || eta == l21_endpoints(); }

double mult_convolution(const StepFunction& f, const StepFunction& g, double x) {
  if (!(x > 0.0)) throw CalderonError("multiplicative convolution is defined for x > 0");
  return convolution_at_log(f, g, std::log(x));
}

double dt_over_t_norm(const StepFunction& f, double w) {
  check_exponent_at_least_one(w, "w");
  if (std::isinf(w)) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, v);
    return m;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < f.pieces(); ++j) {
    const double v = f.values()[j];
    if (v == 0.0) continue;
    if (f.breaks()[j] == 0.0) return kInf;
    sum += std::pow(v, w) * std::log(f.breaks()[j + 1] / f.breaks()[j]);
  }
  return std::pow(sum, 1.0 / w);
}

double convolution_dt_over_t_norm(const StepFunction& f, const StepFunction& g, double w) {
  check_exponent_at_least_one(w, "w");
  if (f.is_zero() || g.is_zero()) return 0.0;
  std::vector<double> logs;
  for (std::size_t i = 1; i < f.breaks().size(); ++i)
    for (std::size_t j = 1; j < g.breaks().size(); ++j)
      logs.push_back(std::log(f.breaks()[i]) + std::log(g.breaks()[j]));
  std::sort(logs.begin(), logs.end());
  logs.erase(std::unique(logs.begin(), logs.end()), logs.end());
  std::vector<double> h(logs.size());
  for (std::size_t k = 0; k < logs.size(); ++k) h[k] = convolution_at_log(f, g, logs[k]);
  // Below the first breakpoint h is a + b (-log x) with b the product of the first values.
  const double growth = f.values()[0] * g.values()[0];
  const double below = convolution_at_log(f, g, logs.front() - 1.0);
  if (growth > 0.0) return kInf;
  if (std::isinf(w)) return std::max(below, *std::max_element(h.begin(), h.end()));
  if (below > 0.0) return kInf;
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < logs.size(); ++k) sum += linear_power_integral(logs[k], logs[k + 1], h[k], h[k + 1], w);
  return std::pow(sum, 1.0 / w);
}

InequalityCheck young_check(const StepFunction& f, const StepFunction& g, double u, double v, double w,
                            double rel_tol) {
  check_exponent_at_least_one(u, "u");
  check_exponent_at_least_one(v, "v");
  check_exponent_at_least_one(w, "w");
  if (std::abs(inv(u) + inv(v) - 1.0 - inv(w)) > 1e-12)
    throw CalderonError("Young's inequality needs 1/u + 1/v = 1 + 1/w");
  InequalityCheck c;
  c.lhs = convolution_dt_over_t_norm(f, g, w);
  c.rhs = dt_over_t_norm(f, u) * dt_over_t_norm(g, v);
  if (f.is_zero() || g.is_zero()) c.rhs = 0.0;
  c.holds = std::isinf(c.rhs) || c.lhs <= c.rhs * (1.0 + rel_tol) + 1e-300;
  return c;
}

HardyCheck hardy_check(const StepFunction& phi, double delta, double q, double rel_tol) {
  if (!(delta < 1.0)) throw CalderonError("Hardy's inequality needs delta < 1");
  check_exponent_at_least_one(q, "q");
  const double constant = 1.0 / (1.0 - delta);
  const auto& T = phi.breaks();
  const auto& v = phi.values();
  const std::size_t m = phi.pieces();
  std::vector<double> head(m + 1, 0.0);  // integral over [0, T_j]
  for (std::size_t j = 0; j < m; ++j) head[j + 1] = head[j] + v[j] * (T[j + 1] - T[j]);
  std::vector<double> tail(m + 1, 0.0);  // integral over [T_j, inf)
  for (std::size_t j = m; j-- > 0;) tail[j] = tail[j + 1] + v[j] * (T[j + 1] - T[j]);

  HardyCheck c;
  const bool sup = std::isinf(q);
  double lr = 0.0, rr = 0.0, lt = 0.0, rt = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    const double lo = T[std::min(j, m)];
    const double hi = j < m ? T[j + 1] : kInf;
    const double val = j < m ? v[j] : 0.0;
    // running integral on the piece: (head_j - val T_j) + val t
    const double ra = head[std::min(j, m)] - val * lo;
    // tail integral on the piece: (tail_{j+1} + val T_{j+1}) - val t
    const double ta = j < m ? tail[j + 1] + val * hi : 0.0;
    if (sup) {
      lr = std::max(lr, sup_power_linear(delta - 1.0, ra, val, lo, hi));
      lt = std::max(lt, sup_power_linear(1.0 - delta, ta, -val, lo, hi));
      if (val > 0.0) {
        rr = std::max(rr, sup_power_linear(delta, val, 0.0, lo, hi));
        rt = std::max(rt, sup_power_linear(2.0 - delta, val, 0.0, lo, hi));
      }
    } else {
      lr += power_linear_integral((delta - 1.0) * q, ra, val, q, lo, hi);
      if (ta != 0.0 || val != 0.0) lt += power_linear_integral((1.0 - delta) * q, ta, -val, q, lo, hi);
      if (val > 0.0) {
        rr += std::pow(val, q) * power_integral(lo, hi, delta * q);
        rt += std::pow(val, q) * power_integral(lo, hi, (2.0 - delta) * q);
      }
    }
  }
  if (!sup) {
    lr = std::pow(lr, 1.0 / q);
    rr = std::pow(rr, 1.0 / q);
    lt = std::pow(lt, 1.0 / q);
    rt = std::pow(rt, 1.0 / q);
  }
  c.lhs_running = lr;
  c.rhs_running = constant * rr;
  c.lhs_tail = lt;
  c.rhs_tail = constant * rt;
  auto ok = [&](double lhs, double rhs) { return std::isinf(rhs) || lhs <= rhs * (1.0 + rel_tol) + 1e-300; };
  c.holds = ok(c.lhs_running, c.rhs_running) && ok(c.lhs_tail, c.rhs_tail);
  return c;
}

double calderon_apply(const EtaSet& eta, const StepFunction& f, const StepFunction& g, double t,
                      CalderonMethod method) {
  if (!(t > 0.0) || std::isinf(t)) throw CalderonError("Calderon operator is evaluated at finite t > 0");
  if (f.is_zero() || g.is_zero()) return 0.0;
  if (method == CalderonMethod::automatic)
    method = is_canonical(eta) ? CalderonMethod::exact : CalderonMethod::quadrature;
  return method == CalderonMethod::exact ? calderon_exact(eta, f, g, t) : calderon_quadrature(eta, f, g, t);
}

std::vector<double> calderon_kinks(const EtaSet& eta, const StepFunction& f, const StepFunction& g) {
  std::vector<double> out;
  const auto& tr = eta.triples();
  for (std::size_t k = 0; k < tr.size(); ++k)
    for (std::size_t l = k + 1; l < tr.size(); ++l) {
      const double dc = tr[k].c - tr[l].c;
      if (dc == 0.0) continue;
      for (std::size_t i = 1; i < f.breaks().size(); ++i)
        for (std::size_t j = 1; j < g.breaks().size(); ++j) {
          const double lt = ((tr[k].a - tr[l].a) * std::log(f.breaks()[i]) +
                             (tr[k].b - tr[l].b) * std::log(g.breaks()[j])) /
                            dc;
          out.push_back(std::exp(lt));
        }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double halfline_lorentz_functional(const StepFunction& h, double q, double w) {
  if (!is_finite_positive_exponent(q)) throw CalderonError("q must lie in (0, inf]");
  check_exponent_at_least_one(w, "w");
  return lorentz_norm(h, q, w);
}

double halfline_lorentz_functional(const PiecewisePower& h, double q, double w) {
  if (!is_finite_positive_exponent(q)) throw CalderonError("q must lie in (0, inf]");
  check_exponent_at_least_one(w, "w");
  if (h.breaks.size() != h.coeffs.size() + 1 || h.coeffs.size() != h.exponents.size())
    throw CalderonError("piecewise power has inconsistent sizes");
  const double iq = inv(q);
  double acc = 0.0;
  for (std::size_t j = 0; j < h.coeffs.size(); ++j) {
    const double c = h.coeffs[j];
    if (c == 0.0) continue;
    if (c < 0.0) throw CalderonError("functional needs a non-negative integrand");
    const double e = h.exponents[j] + iq;
    if (std::isinf(w))
      acc = std::max(acc, sup_power_linear(e, c, 0.0, h.breaks[j], h.breaks[j + 1]));
    else
      acc += std::pow(c, w) * power_integral(h.breaks[j], h.breaks[j + 1], e * w);
  }
  return std::isinf(w) ? acc : std::pow(acc, 1.0 / w);
}

double halfline_lorentz_functional(const std::function<double(double)>& h, const std::vector<double>& kinks, double q,
                                   double w, double rel_tol) {
  if (!is_finite_positive_exponent(q)) throw CalderonError("q must lie in (0, inf]");
  check_exponent_at_least_one(w, "w");
  const double iq = inv(q);
  std::vector<double> nodes;
  for (double k : kinks)
    if (k > 0.0 && std::isfinite(k)) nodes.push_back(std::log(k));
  if (nodes.empty()) nodes.push_back(0.0);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto weighted = [&](double s) { return std::exp(s * iq) * h(std::exp(s)); };

  if (std::isinf(w)) {
    // Sample on the kinks and a fine log grid, then refine the best samples.
    std::vector<std::pair<double, double>> samples;
    auto add = [&](double s) { samples.emplace_back(weighted(s), s); };
    for (double s : nodes) add(s);
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
      for (int m = 1; m < 16; ++m) add(nodes[k] + (nodes[k + 1] - nodes[k]) * m / 16.0);
    double best = 0.0;
    for (auto& [v, s] : samples) best = std::max(best, v);
    for (double dir : {-1.0, 1.0}) {
      const double start = dir < 0 ? nodes.front() : nodes.back();
      double prev = weighted(start);
      int flat = 0;
      for (int k = 1; k <= 4000; ++k) {
        const double s = start + dir * 0.25 * k;
        const double v = weighted(s);
        samples.emplace_back(v, s);
        best = std::max(best, v);
        flat = std::abs(v - prev) <= 1e-13 * v ? flat + 1 : 0;
        if (flat > 40) break;
        if (k == 4000 && v > prev) return kInf;
        if (k > 40 && v < 1e-14 * best) break;
        prev = v;
      }
    }
    std::sort(samples.begin(), samples.end(), std::greater<>());
    for (std::size_t i = 0; i < std::min<std::size_t>(4, samples.size()); ++i) {
      double a = samples[i].second - 0.25;
      double b = samples[i].second + 0.25;
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      for (int it = 0; it < 80; ++it) {
        const double c = b - g * (b - a);
        const double d = a + g * (b - a);
        if (weighted(c) > weighted(d))
          b = d;
        else
          a = c;
      }
      best = std::max(best, weighted(0.5 * (a + b)));
    }
    return best;
  }

  auto integrand = [&](double s) { return std::pow(weighted(s), w); };
  auto cell_integral = [&](double a, double b, int splits) {
    double sum = 0.0;
    for (int k = 0; k < splits; ++k) {
      const double x0 = a + (b - a) * k / splits;
      const double x1 = k + 1 == splits ? b : a + (b - a) * (k + 1) / splits;
      sum += gauss_legendre(integrand, x0, x1);
    }
    return sum;
  };
  // Interior cells: between kinks, subdivided to width <= 1.
  std::vector<std::pair<double, double>> cells;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double len = nodes[k + 1] - nodes[k];
    const int n = std::max(1, static_cast<int>(std::ceil(len)));
    for (int m = 0; m < n; ++m)
      cells.emplace_back(nodes[k] + len * m / n, m + 1 == n ? nodes[k + 1] : nodes[k] + len * (m + 1) / n);
  }
  // Outer extensions with geometric tail correction.
  auto extension = [&](double start, double dir, int splits) {
    double sum = 0.0;
    double prev = -1.0;
    int rising = 0;
    for (int k = 0; k < 4000; ++k) {
      const double a = start + dir * k;
      const double piece = dir > 0 ? cell_integral(a, a + 1.0, splits) : cell_integral(a - 1.0, a, splits);
      sum += piece;
      if (prev >= 0.0 && piece > 0.0) {
        const double ratio = piece / prev;
        if (ratio >= 1.0 - 1e-9)
          ++rising;
        else
          rising = 0;
        if (rising > 200) return kInf;
        if (k > 8 && ratio < 1.0 && piece * ratio / (1.0 - ratio) <= 1e-17 * std::max(sum, 1e-300))
          return sum + piece * ratio / (1.0 - ratio);
      }
      if (k > 8 && piece == 0.0 && prev == 0.0) return sum;
      prev = piece;
    }
    return kInf;
  };
  auto total_with = [&](int splits) {
    double sum = 0.0;
    for (auto [a, b] : cells) sum += cell_integral(a, b, splits);
    sum += extension(nodes.front(), -1.0, splits);
    sum += extension(nodes.back(), 1.0, splits);
    return sum;
  };
  double current = total_with(1);
  if (std::isinf(current)) return kInf;
  for (int splits = 2; splits <= 32; splits *= 2) {
    const double next = total_with(splits);
    const bool done = std::abs(next - current) <= rel_tol * std::abs(next);
    current = next;
    if (done) break;
  }
  return std::pow(current, 1.0 / w);
}

CalderonEstimate calderon_estimate_check(double q, double p, double u, double v, double w, const MeasuredFunction& f,
                                         const MeasuredFunction& g) {
  if (!(q > 2.0)) throw CalderonError("Calderon estimate needs q in (2, inf]");
  const double qc = conjugate(q);
  if (!(p >= qc && p <= q) || p == 2.0) throw CalderonError("Calderon estimate needs p in [q', q] with p != 2");
  check_exponent_at_least_one(u, "u");
  check_exponent_at_least_one(v, "v");
  check_exponent_at_least_one(w, "w");
  if (std::abs(inv(u) + inv(v) - 1.0 - inv(w)) > 1e-12)
    throw CalderonError("Calderon estimate needs 1/u + 1/v = 1 + 1/w");
  const StepFunction fs = rearrangement(f);
  const StepFunction gs = rearrangement(g);
  const EtaSet eta = stft_endpoints();
  CalderonEstimate e;
  if (fs.is_zero() || gs.is_zero()) {
    e.rhs = lorentz_norm(fs, conjugate(p), u) * lorentz_norm(gs, p, v);
    return e;
  }
  e.lhs = halfline_lorentz_functional([&](double t) { return calderon_apply(eta, fs, gs, t); },
                                      calderon_kinks(eta, fs, gs), q, w, 1e-9);
  e.rhs = lorentz_norm(fs, conjugate(p), u) * lorentz_norm(gs, p, v);
  e.ratio = e.rhs > 0.0 ? e.lhs / e.rhs : 0.0;
  return e;
}

}  // namespace tflab
