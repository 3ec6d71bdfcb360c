#include "kissing/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace kissing {

namespace {

// Exact quotient a / b; throws if the division leaves a remainder.
ExactPoly poly_div_exact(const ExactPoly& a, const ExactPoly& b) {
  std::vector<Rational> r = a.coeffs();
  const std::vector<Rational>& d = b.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) throw std::logic_error("poly_div_exact: degree mismatch");
  std::vector<Rational> q(dq + 1, Rational(0));
  const Rational& lead = d[db];
  for (int k = dq; k >= 0; --k) {
    Rational coef = r[k + db] / lead;
    q[k] = coef;
    if (coef == 0) continue;
    for (int j = 0; j <= db; ++j) r[k + j] -= coef * d[j];
  }
  for (const auto& x : r)
    if (x != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
  return ExactPoly(std::move(q));
}

Rational bisect_sign_change(const ExactPoly& q, Rational a, Rational b,
                            const Rational& tol, Rational* out_b) {
  int sa = sign_of(q.eval(a));
  while (b - a > tol) {
    Rational m = (a + b) / 2;
    int sm = sign_of(q.eval(m));
    if (sm == 0) {
      // Landed exactly on the root; shrink symmetrically around it.
      Rational w = tol / 2;
      while (sign_of(q.eval(m - w)) == sign_of(q.eval(m + w))) w /= 2;
      *out_b = m + w;
      return m - w;
    }
    if (sm == sa)
      a = m;
    else
      b = m;
  }
  *out_b = b;
  return a;
}

struct RationalBracket {
  Rational lo, hi;
  bool multiple = false;
};

void isolate_rec(const std::vector<ExactPoly>& chain, const ExactPoly& q,
                 const Rational& a, const Rational& b, int va, int vb,
                 const Rational& tol, std::vector<RationalBracket>& out) {
  int count = va - vb;
  if (count <= 0) return;
  if (count == 1) {
    RationalBracket br;
    br.lo = bisect_sign_change(q, a, b, tol, &br.hi);
    out.push_back(br);
    return;
  }
  Rational mid = (a + b) / 2;
  if (q.eval(mid) == 0) {
    Rational w = tol / 4;
    while (sign_of(q.eval(mid - w)) == sign_of(q.eval(mid + w)) ||
           sturm_count(chain, mid - w, mid + w) != 1)
      w /= 2;
    int vl = sign_variations_at(chain, mid - w);
    int vr = sign_variations_at(chain, mid + w);
    isolate_rec(chain, q, a, mid - w, va, vl, tol, out);
    out.push_back({mid - w, mid + w, false});
    isolate_rec(chain, q, mid + w, b, vr, vb, tol, out);
    return;
  }
  int vm = sign_variations_at(chain, mid);
  isolate_rec(chain, q, a, mid, va, vm, tol, out);
  isolate_rec(chain, q, mid, b, vm, vb, tol, out);
}

// Largest double <= r and smallest double >= r.
double double_below(const Rational& r) {
  double d = to_double(r);
  while (rational_from_double(d) > r) d = std::nextafter(d, -HUGE_VAL);
  return d;
}
double double_above(const Rational& r) {
  double d = to_double(r);
  while (rational_from_double(d) < r) d = std::nextafter(d, HUGE_VAL);
  return d;
}

std::vector<RationalBracket> isolate_rational(const ExactPoly& p,
                                              Rational lo, Rational hi,
                                              const Rational& tol,
                                              const ExactPoly** gcd_out) {
  if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("isolate_roots: lo >= hi");

  static thread_local ExactPoly gcd_store;
  std::vector<ExactPoly> chain = sturm_chain(p);
  ExactPoly q = p.primitive();
  bool squarefree = chain.back().degree() == 0 || chain.size() == 1;
  if (!squarefree) {
    gcd_store = chain.back();
    q = poly_div_exact(q, gcd_store).primitive();
    chain = sturm_chain(q);
    *gcd_out = &gcd_store;
  } else {
    *gcd_out = nullptr;
  }

  std::vector<RationalBracket> out;
  // Roots landing exactly on the query endpoints get brackets that stick out
  // past the interval by at most tol.
  auto endpoint_bracket = [&](const Rational& x) {
    Rational w = tol / 4;
    while (sign_of(q.eval(x - w)) == sign_of(q.eval(x + w)) ||
           sturm_count(chain, x - w, x + w) != 1)
      w /= 2;
    out.push_back({x - w, x + w, false});
    return w;
  };
  if (q.eval(lo) == 0) lo += endpoint_bracket(lo);
  if (q.eval(hi) == 0) hi -= endpoint_bracket(hi);
  if (lo < hi) {
    int va = sign_variations_at(chain, lo);
    int vb = sign_variations_at(chain, hi);
    isolate_rec(chain, q, lo, hi, va, vb, tol, out);
  }
  std::sort(out.begin(), out.end(),
            [](const RationalBracket& a, const RationalBracket& b) {
              return a.lo < b.lo;
            });
  return out;
}

}  // namespace

std::vector<RootBracket> isolate_roots_exact(const ExactPoly& p,
                                             const Rational& lo,
                                             const Rational& hi,
                                             const Rational& tol) {
  const ExactPoly* gcd = nullptr;
  std::vector<RationalBracket> brs = isolate_rational(p, lo, hi, tol, &gcd);
  std::vector<ExactPoly> gcd_chain;
  if (gcd != nullptr) gcd_chain = sturm_chain(*gcd);

  std::vector<RootBracket> out;
  out.reserve(brs.size());
  for (const auto& b : brs) {
    RootBracket rb;
    rb.lo = double_below(b.lo);
    rb.hi = double_above(b.hi);
    rb.status = RootBracket::Status::kSimple;
    if (gcd != nullptr && sturm_count(gcd_chain, b.lo, b.hi) > 0)
      rb.status = RootBracket::Status::kMultipleUncertain;
    out.push_back(rb);
  }
  return out;
}

std::vector<RootBracket> isolate_roots(const Polynomial& p, double lo,
                                       double hi, double tol) {
  return isolate_roots_exact(ExactPoly::from_doubles(p.coeffs()),
                             rational_from_double(lo), rational_from_double(hi),
                             rational_from_double(tol));
}

// ---------------------------------------------------------------------------
// Gegenbauer polynomials
// ---------------------------------------------------------------------------

const ExactPoly& gegenbauer_exact(int n, int k) {
  if (n < 3) throw std::invalid_argument("gegenbauer: dimension n must be >= 3");
  if (k < 0) throw std::invalid_argument("gegenbauer: degree k must be >= 0");
  static thread_local std::map<std::pair<int, int>, ExactPoly> cache;
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  ExactPoly g0(std::vector<Rational>{Rational(1)});
  ExactPoly g1(std::vector<Rational>{Rational(0), Rational(1)});
  ExactPoly t = g1;
  cache.emplace(std::make_pair(n, 0), g0);
  if (k >= 1) cache.emplace(std::make_pair(n, 1), g1);
  ExactPoly prev2 = g0, prev1 = g1;
  for (int j = 2; j <= k; ++j) {
    // G_j = ((2j + n - 4) t G_{j-1} - (j - 1) G_{j-2}) / (j + n - 3)
    ExactPoly g = (t * prev1).scaled(Rational(2 * j + n - 4)) -
                  prev2.scaled(Rational(j - 1));
    g = g.scaled(Rational(1, j + n - 3));
    cache.emplace(std::make_pair(n, j), g);
    prev2 = std::move(prev1);
    prev1 = std::move(g);
  }
  return cache.at(key);
}

Polynomial gegenbauer(int n, int k) {
  return Polynomial(gegenbauer_exact(n, k).to_doubles());
}

bool GegenbauerExpansion::admissible(double tol) const {
  if (c.empty() || c[0] <= 0.0) return false;
  for (size_t k = 1; k < c.size(); ++k)
    if (c[k] < -tol) return false;
  return true;
}

std::vector<Rational> to_gegenbauer_exact(const ExactPoly& p, int n) {
  int d = p.degree();
  std::vector<Rational> rem = p.coeffs();
  rem.resize(d + 1, Rational(0));
  std::vector<Rational> c(d + 1, Rational(0));
  for (int k = d; k >= 0; --k) {
    const ExactPoly& g = gegenbauer_exact(n, k);
    Rational lead = g.coeffs()[k];
    c[k] = rem[k] / lead;
    if (c[k] != 0)
      for (int j = 0; j <= k; ++j) rem[j] -= c[k] * g.coeffs()[j];
  }
  return c;
}

GegenbauerExpansion to_gegenbauer(const Polynomial& p, int n) {
  std::vector<Rational> c =
      to_gegenbauer_exact(ExactPoly::from_doubles(p.coeffs()), n);
  GegenbauerExpansion e;
  e.n = n;
  e.c.reserve(c.size());
  for (const auto& x : c) e.c.push_back(to_double(x));
  return e;
}

ExactPoly from_gegenbauer_exact(int n, const std::vector<Rational>& c) {
  ExactPoly acc;
  for (size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) acc = acc + gegenbauer_exact(n, static_cast<int>(k)).scaled(c[k]);
  return acc;
}

Polynomial from_gegenbauer(const GegenbauerExpansion& e) {
  Polynomial acc;
  for (size_t k = 0; k < e.c.size(); ++k)
    if (e.c[k] != 0.0)
      acc = acc + gegenbauer(e.n, static_cast<int>(k)).scaled(e.c[k]);
  return acc;
}

// ---------------------------------------------------------------------------
// Sign and monotonicity certificates
// ---------------------------------------------------------------------------

CertResult certify_sign_exact(const ExactPoly& p, const Rational& lo,
                              const Rational& hi, SignClaim claim) {
  if (!(lo < hi)) throw std::invalid_argument("certify_sign: lo >= hi");
  CertResult res;
  const int want = claim == SignClaim::kNonpositive ? -1 : 1;

  Rational plo = p.eval(lo), phi = p.eval(hi);
  if (sign_of(plo) == -want || sign_of(phi) == -want) return res;  // ok=false

  const Rational tol = rational_from_double(1e-12);
  // Isolation over a slightly enlarged interval, so roots abutting the
  // endpoints from outside are recognized and kept out of the margin.
  const Rational w = (hi - lo) / 1000;
  const ExactPoly* gcd = nullptr;
  std::vector<RationalBracket> roots;
  if (!p.is_zero()) roots = isolate_rational(p, lo - w, hi + w, tol, &gcd);

  // Sample each root-free gap once; signs there decide the claim, magnitudes
  // give the margin.
  std::vector<Rational> samples;
  Rational cur = lo;
  bool lo_abuts = false, hi_abuts = false;
  for (const auto& r : roots) {
    if (r.lo <= lo + w && r.hi >= lo - w) lo_abuts = true;
    if (r.lo <= hi + w && r.hi >= hi - w) hi_abuts = true;
    if (r.hi <= lo || r.lo >= hi) continue;
    Rational gap_end = std::min(r.lo, hi);
    if (cur < gap_end) samples.push_back((cur + gap_end) / 2);
    cur = std::max(cur, std::min(r.hi, hi));
  }
  if (cur < hi) samples.push_back((cur + hi) / 2);

  double margin = HUGE_VAL;
  for (const auto& s : samples) {
    Rational v = p.eval(s);
    if (sign_of(v) == -want) return res;
    if (v != 0) margin = std::min(margin, std::fabs(to_double(v)));
  }
  if (plo != 0 && !lo_abuts) margin = std::min(margin, std::fabs(to_double(plo)));
  if (phi != 0 && !hi_abuts) margin = std::min(margin, std::fabs(to_double(phi)));
  if (margin == HUGE_VAL) margin = 0.0;  // identically-zero stretches only

  res.ok = true;
  res.margin = margin;
  res.fragile = margin < kFragileMargin;
  return res;
}

CertResult certify_sign(const Polynomial& p, double lo, double hi, SignClaim s) {
  return certify_sign_exact(ExactPoly::from_doubles(p.coeffs()),
                            rational_from_double(lo), rational_from_double(hi), s);
}

namespace {

// Divides out every factor (t - r); r must be an exact root.
ExactPoly divide_out_root(ExactPoly p, const Rational& r) {
  ExactPoly lin(std::vector<Rational>{-r, Rational(1)});
  while (!p.is_zero() && p.degree() >= 1 && p.eval(r) == 0)
    p = poly_div_exact(p, lin);
  return p;
}

}  // namespace

CertResult certify_monotone_decreasing_exact(const ExactPoly& p,
                                             const Rational& lo,
                                             const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("certify_monotone: lo >= hi");
  CertResult res;
  if (!(p.eval(lo) > p.eval(hi))) return res;
  ExactPoly d = p.derivative();
  if (d.is_zero()) return res;
  // Roots of p' exactly at the interval ends do not affect the open interval.
  ExactPoly dfree = divide_out_root(divide_out_root(d, lo), hi);
  if (!dfree.is_zero() && dfree.degree() >= 1) {
    std::vector<ExactPoly> chain = sturm_chain(dfree);
    if (sturm_count(chain, lo, hi) > 0) return res;
  }

  // Margin: -max(p') over [lo, hi]; stationary points of p' come from p''.
  double maxd = std::max(to_double(d.eval(lo)), to_double(d.eval(hi)));
  ExactPoly dd = d.derivative();
  if (!dd.is_zero()) {
    const ExactPoly* gcd = nullptr;
    const Rational tol = rational_from_double(1e-10);
    for (const auto& r : isolate_rational(dd, lo, hi, tol, &gcd))
      maxd = std::max(maxd, to_double(d.eval((r.lo + r.hi) / 2)));
  }
  res.ok = true;
  res.margin = -maxd;
  res.fragile = res.margin < kFragileMargin;
  return res;
}

CertResult certify_monotone_decreasing(const Polynomial& p, double lo, double hi) {
  return certify_monotone_decreasing_exact(ExactPoly::from_doubles(p.coeffs()),
                                           rational_from_double(lo),
                                           rational_from_double(hi));
}

// ---------------------------------------------------------------------------
// Fast double-precision root finding and interval maximization
// ---------------------------------------------------------------------------

namespace {

double bisect_double(const Polynomial& p, double a, double b, double fa) {
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    double fm = p(m);
    if (fm == 0.0) return m;
    if ((fa < 0) == (fm < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> real_roots_fast(const Polynomial& p, double lo, double hi) {
  if (lo > hi) return {};
  int deg = p.degree();
  if (deg <= 0) return {};
  if (deg == 1) {
    double r = -p.coeff(0) / p.coeff(1);
    if (r >= lo && r <= hi) return {r};
    return {};
  }
  std::vector<double> brk = real_roots_fast(p.derivative(), lo, hi);
  brk.insert(brk.begin(), lo);
  brk.push_back(hi);
  std::sort(brk.begin(), brk.end());
  std::vector<double> roots;
  auto push = [&roots](double r) {
    if (roots.empty() || std::fabs(roots.back() - r) > 1e-13) roots.push_back(r);
  };
  for (size_t i = 0; i + 1 < brk.size(); ++i) {
    double a = brk[i], b = brk[i + 1];
    if (a >= b) continue;
    double fa = p(a), fb = p(b);
    if (fa == 0.0) push(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) push(bisect_double(p, a, b, fa));
  }
  if (p(hi) == 0.0) push(hi);
  return roots;
}

MaxResult max_on_interval(const Polynomial& p, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("max_on_interval: lo > hi");
  MaxResult best{p(lo), lo};
  auto consider = [&best, &p](double x) {
    double v = p(x);
    if (v > best.value || (v == best.value && x < best.argmax)) best = {v, x};
  };
  consider(hi);
  if (hi > lo && p.degree() >= 2)
    for (double r : real_roots_fast(p.derivative(), lo, hi))
      if (r > lo && r < hi) consider(r);
  return best;
}

}  // namespace kissing
