#include "cantor/units/units.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>

#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"
#include "cantor/units/pell.hpp"

namespace cantor {

namespace {

using cplx = std::complex<long double>;

long double root_value(const FieldPtr& f) { return static_cast<long double>(AlgebraicReal::generator(f).to_double()); }

/// The complex root with positive imaginary part of a cubic with one real root.
cplx complex_root(const FieldPtr& f) {
  const auto& c = f->coefficients();
  long double r = root_value(f);
  // x^3 + a x^2 + b x + c0 = (x - r)(x^2 + p x + q)
  long double a = c[2].get_d(), b = c[1].get_d();
  long double p = a + r;
  long double q = b + r * p;
  long double disc = q - p * p / 4;
  return {-p / 2, std::sqrt(std::max(disc, 0.0L))};
}

template <typename T>
T evaluate(const std::vector<Rational>& coords, T x) {
  T acc = 0;
  for (std::size_t i = coords.size(); i-- > 0;) acc = acc * x + static_cast<T>(coords[i].get_d());
  return acc;
}

/// Closed interval of MPFR floats with outward rounding.
class MpfrInterval {
 public:
  explicit MpfrInterval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  MpfrInterval(const MpfrInterval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  MpfrInterval& operator=(const MpfrInterval&) = delete;
  ~MpfrInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  /// log |x| for x in the rational interval iv, which must exclude zero.
  static MpfrInterval log_abs(const RationalInterval& iv, mpfr_prec_t prec) {
    MpfrInterval out(prec);
    Rational lo = iv.lo, hi = iv.hi;
    if (sgn(hi) < 0) {
      lo = -iv.hi;
      hi = -iv.lo;
    }
    if (sgn(lo) <= 0) fail_invariant("log of an interval containing zero");
    mpfr_set_q(out.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi_, hi.get_mpq_t(), MPFR_RNDU);
    mpfr_log(out.lo_, out.lo_, MPFR_RNDD);
    mpfr_log(out.hi_, out.hi_, MPFR_RNDU);
    return out;
  }

  static MpfrInterval product(const MpfrInterval& a, const MpfrInterval& b) {
    mpfr_prec_t prec = mpfr_get_prec(a.lo_);
    MpfrInterval out(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
        first = false;
      }
    }
    mpfr_clear(t);
    return out;
  }

  static MpfrInterval difference(const MpfrInterval& a, const MpfrInterval& b) {
    MpfrInterval out(mpfr_get_prec(a.lo_));
    mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return out;
  }

  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  double width() const {
    mpfr_t w;
    mpfr_init2(w, mpfr_get_prec(lo_));
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
  }
  /// Lower bound of |x| over the interval, rounded down to 12 decimals.
  std::string abs_lower_bound() const {
    if (contains_zero()) return "0.000000000000";
    mpfr_t m;
    mpfr_init2(m, mpfr_get_prec(lo_));
    if (mpfr_sgn(lo_) > 0) {
      mpfr_set(m, lo_, MPFR_RNDD);
    } else {
      mpfr_neg(m, hi_, MPFR_RNDD);
    }
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.12RDf", m);
    mpfr_clear(m);
    return buf;
  }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

std::size_t unit_rank(const OrderDescriptor& order) {
  std::size_t real = order.real_embeddings();
  std::size_t complex_pairs = (static_cast<std::size_t>(order.degree()) - real) / 2;
  return real + complex_pairs - 1;
}

}  // namespace

OrderDescriptor make_order(const FieldLattice& lattice) {
  if (!lattice.full_rank()) fail_precondition("not full rank", "an order must have rank equal to the field degree");
  if (!lattice.is_order()) fail_precondition("not an order", "lattice must contain 1 and be closed under products");
  Rational d = lattice.discriminant();
  if (d.get_den() != 1) fail_invariant("order discriminant not integral");
  return {lattice, d.get_num()};
}

OrderDescriptor equation_order(const FieldPtr& field) {
  std::vector<AlgebraicReal> g;
  AlgebraicReal alpha = AlgebraicReal::generator(field);
  AlgebraicReal p(1);
  for (int i = 0; i < field->degree(); ++i) {
    g.push_back(p);
    p = p * alpha;
  }
  return make_order(FieldLattice(field, g));
}

bool is_unit(const OrderDescriptor& order, const AlgebraicReal& u) {
  if (u.is_zero()) return false;
  return order.lattice.contains(u) && order.lattice.contains(u.inverse());
}

AlgebraicReal sqrt_in_field(const BigInt& D, const FieldPtr& field) {
  if (!field || field->degree() != 2) fail_precondition("not a quadratic field");
  const auto& c = field->coefficients();
  BigInt disc = c[1] * c[1] - 4 * c[0];
  // For alpha a root of x^2 + b x + c, (2 alpha + b)^2 = b^2 - 4c.
  AlgebraicReal s = AlgebraicReal::generator(field) * AlgebraicReal(2) + AlgebraicReal(Rational(c[1]));
  if (s.sign() < 0) s = -s;
  auto r = rational_sqrt(make_rational(D, disc));
  if (!r) fail_precondition("field mismatch", "sqrt(" + D.get_str() + ") is not in " + field->to_string());
  return s * AlgebraicReal(*r);
}

AlgebraicReal quadratic_fundamental_unit(const OrderDescriptor& order) {
  if (order.degree() != 2) fail_precondition("not a quadratic order");
  PellSolution sol = pell_min_solution(order.discriminant);
  AlgebraicReal root = sqrt_in_field(order.discriminant, order.field());
  AlgebraicReal eps = (AlgebraicReal(Rational(sol.t)) + AlgebraicReal(Rational(sol.u)) * root) / AlgebraicReal(2);
  ensure(is_unit(order, eps), "pell unit lies in the order");
  ensure(order.lattice.scaled(eps) == order.lattice, "pell unit preserves the order");
  return eps;
}

UnitSearchConfig UnitSearchConfig::from_environment() {
  UnitSearchConfig c;
  if (const char* env = std::getenv("CANTOR_FG_SEARCH_BOUND")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 1)) fail_precondition("bad CANTOR_FG_SEARCH_BOUND", env);
    c.bound = v;
  }
  return c;
}

ComplexCubicUnit fundamental_unit_complex_cubic(const OrderDescriptor& order, const UnitSearchConfig& config) {
  if (order.degree() != 3 || order.real_embeddings() != 1) {
    fail_precondition("rank 2, use verify path", "order is not complex cubic");
  }
  auto basis = order.lattice.basis();
  // The reversed-column HNF of an order ends with the row for 1.
  ensure(basis.back() == AlgebraicReal(1), "order basis ends with 1");
  const AlgebraicReal& w2 = basis[0];
  const AlgebraicReal& w3 = basis[1];

  long double r = root_value(order.field());
  cplx z = complex_root(order.field());
  long double r2 = evaluate(w2.coords(), r), r3 = evaluate(w3.coords(), r);
  cplx z2 = evaluate(w2.coords(), z), z3 = evaluate(w3.coords(), z);

  // x = a + b w2 + c w3; s = x - Re(eta) in (0, B+1), t = Im(eta) in (-1, 1).
  long double A11 = r2 - z2.real(), A12 = r3 - z3.real();
  long double A21 = z2.imag(), A22 = z3.imag();
  long double det = A11 * A22 - A12 * A21;
  if (std::fabs(det) < 1e-12L) fail_invariant("degenerate embedding matrix");
  long double B = static_cast<long double>(config.bound);
  long double smax = B + 1;
  const long double pad = 1e-6L;
  // c = (-A21 s + A11 t) / det
  long double c_lo = 0, c_hi = 0;
  for (long double s : {0.0L, smax}) {
    for (long double t : {-1.0L, 1.0L}) {
      long double c = (-A21 * s + A11 * t) / det;
      c_lo = std::min(c_lo, c);
      c_hi = std::max(c_hi, c);
    }
  }
  ComplexCubicUnit out;
  out.search_bound = config.bound;
  std::optional<AlgebraicReal> best;
  for (long long c = static_cast<long long>(std::floor(c_lo - pad)); c <= static_cast<long long>(std::ceil(c_hi + pad)); ++c) {
    long double cd = static_cast<long double>(c);
    // b from t = b A21 + c A22 in (-1, 1) and s = b A11 + c A12 in (0, smax).
    long double tb1 = (-1 - cd * A22) / A21, tb2 = (1 - cd * A22) / A21;
    long double sb1 = (0 - cd * A12) / A11, sb2 = (smax - cd * A12) / A11;
    long double b_lo = std::max(std::min(tb1, tb2), std::min(sb1, sb2));
    long double b_hi = std::min(std::max(tb1, tb2), std::max(sb1, sb2));
    if (b_lo > b_hi + 2 * pad) continue;
    for (long long b = static_cast<long long>(std::floor(b_lo - pad)); b <= static_cast<long long>(std::ceil(b_hi + pad)); ++b) {
      long double bd = static_cast<long double>(b);
      long double re_rest = bd * z2.real() + cd * z3.real();
      for (long long a = static_cast<long long>(std::floor(-1 - re_rest - pad));
           a <= static_cast<long long>(std::ceil(1 - re_rest + pad)); ++a) {
        long double ad = static_cast<long double>(a);
        long double x = ad + bd * r2 + cd * r3;
        if (x <= 1 - pad || x > B + pad) continue;
        cplx eta = ad + bd * z2 + cd * z3;
        long double n = x * std::norm(eta);
        ++out.candidates_examined;
        if (std::fabs(std::fabs(n) - 1) > 0.25L) continue;
        AlgebraicReal cand = AlgebraicReal(a) + AlgebraicReal(b) * w2 + AlgebraicReal(c) * w3;
        Rational nm = cand.norm();
        if (nm != 1 && nm != -1) continue;
        if (compare(cand, AlgebraicReal(1)) != std::strong_ordering::greater) continue;
        if (!best || compare(cand, *best) == std::strong_ordering::less) best = cand;
      }
    }
  }
  double d = std::fabs(order.discriminant.get_d());
  out.artin_lower_bound = std::cbrt(std::max(0.0, (d - config.artin_offset) / config.artin_constant));
  if (!best) fail_precondition("uncertified", "no unit found below the search bound");
  out.unit = *best;
  ensure(is_unit(order, out.unit), "found unit lies in the order");
  ensure(order.lattice.scaled(out.unit) == order.lattice, "unit preserves the order");
  ensure(out.unit.to_double() >= out.artin_lower_bound * (1 - 1e-12), "unit respects the Artin bound");
  return out;
}

UnitSystemReport verify_unit_system(const OrderDescriptor& order, const std::vector<AlgebraicReal>& candidates) {
  UnitSystemReport rep;
  rep.each_is_unit = true;
  for (const auto& u : candidates) {
    if (!order.lattice.contains(u)) fail_precondition("candidate outside order", to_expression(u));
    AlgebraicReal v = u.in_field(order.field());
    rep.norms.push_back(v.norm());
    if (rep.norms.back() != 1 && rep.norms.back() != -1) rep.each_is_unit = false;
  }
  std::size_t r = candidates.size();
  if (r == 0) {
    rep.independent = true;
    rep.regulator_lower_bound = "1.000000000000";
    return rep;
  }
  if (r > unit_rank(order)) {
    rep.independent = false;
    rep.regulator_lower_bound = "0.000000000000";
    return rep;
  }
  std::vector<FieldPtr> embeddings;
  for (std::size_t i = 0; i < r; ++i) embeddings.push_back(order.field()->conjugate(i));
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    Rational width = make_rational(1, BigInt(1) << static_cast<unsigned long>(prec));
    std::vector<std::vector<MpfrInterval>> L;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<MpfrInterval> row;
      for (const auto& u : candidates) {
        AlgebraicReal conj(embeddings[i], u.in_field(order.field()).coords());
        row.push_back(MpfrInterval::log_abs(conj.enclosure(width), prec));
      }
      L.push_back(std::move(row));
    }
    MpfrInterval det = r == 1 ? MpfrInterval(L[0][0])
                              : MpfrInterval::difference(MpfrInterval::product(L[0][0], L[1][1]),
                                                         MpfrInterval::product(L[0][1], L[1][0]));
    rep.enclosure_width = det.width();
    if (!det.contains_zero() || rep.enclosure_width < 1e-10 || prec >= 4096) {
      rep.independent = !det.contains_zero();
      rep.regulator_lower_bound = det.abs_lower_bound();
      return rep;
    }
  }
}

std::optional<std::pair<long, long>> express_in(const AlgebraicReal& u, const AlgebraicReal& g1,
                                                const AlgebraicReal& g2, long bound) {
  FieldPtr f = common_field(u, g1);
  if (!f) f = common_field(u, g2);
  if (f) g2.in_field(f);  // throws on a field mismatch
  if (!f || f->real_root_count() < 2) fail_precondition("express_in needs two real embeddings");
  auto log_at = [&](const AlgebraicReal& x, std::size_t i) {
    return std::log(std::fabs(AlgebraicReal(f->conjugate(i), x.in_field(f).coords()).to_double()));
  };
  double m11 = log_at(g1, 0), m12 = log_at(g2, 0), m21 = log_at(g1, 1), m22 = log_at(g2, 1);
  double v1 = log_at(u, 0), v2 = log_at(u, 1);
  double det = m11 * m22 - m12 * m21;
  if (std::fabs(det) < 1e-12) return std::nullopt;
  long a = std::lround((v1 * m22 - m12 * v2) / det);
  long b = std::lround((m11 * v2 - v1 * m21) / det);
  if (std::labs(a) > bound || std::labs(b) > bound) return std::nullopt;
  if (g1.pow(a) * g2.pow(b) == u) return std::make_pair(a, b);
  return std::nullopt;
}

TotallyRealUnits totally_real_unit_search(const OrderDescriptor& order, int box) {
  if (order.degree() != 3 || order.real_embeddings() != 3) fail_precondition("not a totally real cubic order");
  auto basis = order.lattice.basis();
  std::vector<AlgebraicReal> units;
  std::vector<std::array<double, 2>> logs;
  auto log_at = [&](const AlgebraicReal& x, std::size_t i) {
    return std::log(std::fabs(AlgebraicReal(order.field()->conjugate(i), x.coords()).to_double()));
  };
  for (int a = -box; a <= box; ++a) {
    for (int b = -box; b <= box; ++b) {
      for (int c = -box; c <= box; ++c) {
        AlgebraicReal x = AlgebraicReal(a) * basis[0] + AlgebraicReal(b) * basis[1] + AlgebraicReal(c) * basis[2];
        if (x.is_zero()) continue;
        Rational n = x.norm();
        if (n != 1 && n != -1) continue;
        if (x.sign() < 0) continue;
        if (x.is_rational()) continue;
        if (compare(x, AlgebraicReal(1)) == std::strong_ordering::less) x = x.inverse();
        if (std::find(units.begin(), units.end(), x) != units.end()) continue;
        units.push_back(x);
        logs.push_back({log_at(x, 0), log_at(x, 1)});
      }
    }
  }
  TotallyRealUnits out;
  out.units_found = units.size();
  double best = 0;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      double reg = std::fabs(logs[i][0] * logs[j][1] - logs[i][1] * logs[j][0]);
      if (reg < 1e-9) continue;
      if (best == 0 || reg < best - 1e-12) {
        best = reg;
        bi = i;
        bj = j;
      }
    }
  }
  if (best == 0) fail_precondition("uncertified", "no independent pair of small units found");
  out.generators = {units[bi], units[bj]};
  out.all_found_expressible = true;
  for (const auto& u : units) {
    if (!express_in(u, units[bi], units[bj], 64)) out.all_found_expressible = false;
  }
  return out;
}

}  // namespace cantor
