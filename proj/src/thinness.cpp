// SPDX-License-Identifier: Apache-2.0
#include "hst/thinness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "hst/errors.hpp"
#include "hst/kernels.hpp"
#include "hst/quadrature.hpp"

namespace hst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kWindow = 8;
constexpr int kGeometricWindow = 6;
constexpr int kAngularPanels = 64;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct ShellValue {
  double value;
  double error;
};

using ShellFn = std::function<ShellValue(int)>;

double shell_lo(int j) { return std::ldexp(1.0, -j - 1); }
double shell_hi(int j) { return std::ldexp(1.0, -j); }

// --- certification -------------------------------------------------------

struct Geometric {
  bool ok = false;
  double value_tail = 0.0;  // s_n r/(1-r) with the last ratio
  double bound_tail = 0.0;  // s_n q/(1-q) with the worst ratio
};

Geometric geometric_tail(const std::vector<double>& s) {
  Geometric g;
  const std::size_t n = s.size();
  if (n < kGeometricWindow + 2) return g;
  std::array<double, kGeometricWindow> ratios{};
  for (int k = 0; k < kGeometricWindow; ++k) {
    const double prev = s[n - kGeometricWindow - 1 + k];
    const double cur = s[n - kGeometricWindow + k];
    if (!(prev > 0.0) || !(cur > 0.0)) return g;
    ratios[k] = cur / prev;
  }
  const double worst = *std::max_element(ratios.begin(), ratios.end());
  // Ratios creeping up towards 1 signal algebraic rather than geometric decay.
  if (worst > 0.9 || ratios.back() - ratios.front() > 1e-3) return g;
  g.ok = true;
  g.value_tail = s.back() * ratios.back() / (1.0 - ratios.back());
  g.bound_tail = s.back() * worst / (1.0 - worst);
  return g;
}

struct AlgebraicFit {
  bool ok = false;      // a model was fitted and reproduces the window
  double q = 0.0;       // NaN when the window is not monotone
  double tail = 0.0;    // sum over later shells of C (j + j0)^{-q}
};

// Fits s_j = C (j + j0)^{-q} through s_{n-16}, s_{n-8}, s_n: s_j^{-1/q} is
// then affine in j.
AlgebraicFit algebraic_fit(const std::vector<double>& s, int first_index) {
  AlgebraicFit f;
  f.q = std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = s.size();
  if (n < 2 * kWindow + 1) return f;
  const double a = s[n - 1 - 2 * kWindow];
  const double b = s[n - 1 - kWindow];
  const double c = s[n - 1];
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) return f;
  const double d1 = std::log(a / b);
  const double d2 = std::log(b / c);
  if (std::max(d1, d2) <= 1e-6) {
    f.q = 0.0;  // flat or growing
    return f;
  }
  if (!(d1 > 0.0 && d2 > 0.0)) return f;
  if (d2 >= d1) {
    f.q = kInf;  // decay at least geometric
    return f;
  }
  // Root of e^{-x d1} + e^{x d2} - 2 on x > 0; negative near 0, convex.
  auto F = [&](double x) { return std::exp(-x * d1) + std::exp(x * d2) - 2.0; };
  double lo = 0.0;
  double hi = 1.0;
  while (F(hi) < 0.0 && hi < 1e6) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) < 0.0 ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  f.q = x > 1e-6 ? 1.0 / x : kInf;
  const double ja = first_index + static_cast<double>(n - 1 - 2 * kWindow);
  const double jc = first_index + static_cast<double>(n - 1);
  const double ta = std::pow(a, -x);
  const double tc = std::pow(c, -x);
  const double slope = (tc - ta) / (jc - ja);
  const double j0 = tc / slope - jc;
  const double C = std::pow(slope, -f.q);
  for (std::size_t i = n - 1 - 2 * kWindow; i < n; ++i) {
    const double j = first_index + static_cast<double>(i);
    const double model = C * std::pow(j + j0, -f.q);
    if (std::abs(model / s[i] - 1.0) > 1e-3) return f;
  }
  f.ok = true;
  if (f.q > 1.0) f.tail = C * std::pow(jc + 0.5 + j0, 1.0 - f.q) / (f.q - 1.0);
  return f;
}

bool ratio_rule(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n < 2 * kWindow) return false;
  for (std::size_t k = n - kWindow; k < n; ++k) {
    double log_sum = 0.0;
    for (std::size_t i = k - kWindow; i < k; ++i) {
      if (!(s[i] > 0.0)) return false;
      log_sum += std::log(s[i]);
    }
    if (!(s[k] >= (1.0 - 1.0 / kWindow) * std::exp(log_sum / kWindow))) return false;
  }
  return true;
}

bool divergence_certified(const std::vector<double>& s, double q) {
  if (!ratio_rule(s)) return false;
  if (!(q <= 1.02)) return false;
  const double partial = std::accumulate(s.begin(), s.end(), 0.0);
  const double recent = *std::max_element(s.end() - kWindow, s.end());
  return partial >= 10.0 * recent;
}

void fill_evidence(IntegralVerdict& v, const std::vector<double>& s, int first_index) {
  v.shell_evidence.clear();
  for (std::size_t i = 0; i < s.size(); ++i) v.shell_evidence.emplace_back(first_index + static_cast<int>(i), s[i]);
  v.shells_used = static_cast<int>(s.size());
}

bool early_stop(const std::vector<double>& s, int first_index) {
  if (!s.empty() && s.back() == kInf) return true;
  const Geometric g = geometric_tail(s);
  const double partial = std::accumulate(s.begin(), s.end(), 0.0);
  if (g.ok && g.bound_tail <= 1e-13 * partial) return true;
  return divergence_certified(s, algebraic_fit(s, first_index).q);
}

IntegralVerdict run_shells(const ShellFn& shell, int first_index, int count, bool zero_tail) {
  std::vector<double> s;
  std::vector<double> e;
  for (int k = 0; k < count; ++k) {
    const ShellValue v = shell(first_index + k);
    s.push_back(v.value);
    e.push_back(v.error);
    if (!zero_tail && early_stop(s, first_index)) break;
  }
  return certify_shells(s, e, first_index, zero_tail);
}

// --- one-dimensional criteria -----------------------------------------------

// int over shell j of h(r) dr / r, integrated in log r.
ShellValue log_shell(const std::function<double(double)>& h, int j, double rel_tol) {
  const auto res = integrate([&](double x) { return h(std::exp(x)); }, std::log(shell_lo(j)), std::log(shell_hi(j)), 0.0,
                             rel_tol, 2000);
  if (!std::isfinite(res.value)) return {kInf, 0.0};
  return {res.value, res.error};
}

IntegralVerdict radial_criterion(const std::function<double(double)>& h, int first_index, const ShellOptions& opt) {
  if (opt.max_shells < 1) throw DomainError("max_shells must be >= 1");
  return run_shells([&](int j) { return log_shell(h, j, opt.rel_tol); }, first_index, opt.max_shells, false);
}

// --- Beurling-Dahlberg shells -------------------------------------------------

// Integral of w over [a, b] by 20-point Gauss-Legendre (w smooth).
template <class W>
double gl20(W&& w, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(w, a, b);
}

// Angular measure of a radially described set on the circle of radius R in
// the (rho, x_d) quarter plane. The angle psi runs from the axis where the set
// is anchored: inside(psi) <=> g(psi) >= 0 with g(0) > 0.
double angular_measure(const std::function<double(double)>& g, int weight_power, bool weight_is_cos) {
  const double half_pi = 0.5 * std::numbers::pi;
  auto weight = [&](double psi) {
    return std::pow(weight_is_cos ? std::cos(psi) : std::sin(psi), weight_power);
  };
  std::vector<double> nodes(kAngularPanels + 1);
  std::vector<double> vals(kAngularPanels + 1);
  for (int k = 0; k <= kAngularPanels; ++k) {
    nodes[k] = half_pi * k / kAngularPanels;
    vals[k] = g(nodes[k]);
  }
  auto root = [&](double lo, double hi, bool lo_inside) {
    for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((g(mid) >= 0.0) == lo_inside ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  double total = 0.0;
  bool inside = vals[0] >= 0.0;
  double start = 0.0;
  for (int k = 1; k <= kAngularPanels; ++k) {
    const bool now = vals[k] >= 0.0;
    if (now != inside) {
      const double edge = root(nodes[k - 1], nodes[k], inside);
      if (inside) total += gl20(weight, start, edge);
      start = edge;
      inside = now;
    }
  }
  if (inside) total += gl20(weight, start, half_pi);
  return total;
}

ShellValue radial_set_shell(const ProfileSpec& f, bool thorn, int d, int j, double rel_tol) {
  const double sigma = unit_sphere_area(d - 1);
  auto w = [&](double x) {
    const double R = std::exp(x);
    // Graph: psi measured from the rho axis, x_d = R sin psi <= f(R cos psi).
    // Thorn: psi measured from the x_d axis, rho = R sin psi < f(R cos psi).
    auto g = [&](double psi) { return f(R * std::cos(psi)) - R * std::sin(psi); };
    return angular_measure(g, d - 2, !thorn);
  };
  const auto res = integrate(w, std::log(shell_lo(j)), std::log(shell_hi(j)), 0.0, rel_tol, 400);
  return {sigma * res.value, sigma * res.error};
}

template <int N>
double gl_fixed(const std::function<double(double)>& w, double a, double b) {
  return boost::math::quadrature::gauss<double, N>::integrate(w, a, b);
}

// Tensor Gauss-Legendre over x_tilde with the x_d range cut exactly to the
// shell for every outer node.
double box_cut_integral(const std::vector<double>& lo, const std::vector<double>& hi, double r_lo, double r_hi,
                        bool high_order) {
  const int d = static_cast<int>(lo.size());
  const double half_d = 0.5 * d;
  auto inner = [&](double s2) {
    const double a = std::max(lo[d - 1], std::sqrt(std::max(0.0, r_lo * r_lo - s2)));
    const double top = r_hi * r_hi - s2;
    if (top <= 0.0) return 0.0;
    const double b = std::min(hi[d - 1], std::sqrt(top));
    if (!(b > a)) return 0.0;
    std::function<double(double)> f = [&](double x) { return std::pow(s2 + x * x, -half_d); };
    return high_order ? gl_fixed<10>(f, a, b) : gl_fixed<7>(f, a, b);
  };
  // Recursive tensor product over the first d-1 coordinates.
  std::function<double(int, double)> outer = [&](int k, double s2) -> double {
    if (k == d - 1) return inner(s2);
    std::function<double(double)> f = [&](double y) { return outer(k + 1, s2 + y * y); };
    return high_order ? gl_fixed<7>(f, lo[k], hi[k]) : gl_fixed<5>(f, lo[k], hi[k]);
  };
  return outer(0, 0.0);
}

void box_shell_recursive(std::vector<double> lo, std::vector<double> hi, double r_lo, double r_hi, int depth,
                         ShellValue& acc) {
  const int d = static_cast<int>(lo.size());
  double near2 = 0.0;
  double far2 = 0.0;
  int widest = 0;
  double width = 0.0;
  for (int k = 0; k < d; ++k) {
    const double c = std::clamp(0.0, lo[k], hi[k]);
    near2 += c * c;
    const double f = std::max(std::abs(lo[k]), std::abs(hi[k]));
    far2 += f * f;
    if (hi[k] - lo[k] > width) {
      width = hi[k] - lo[k];
      widest = k;
    }
  }
  if (near2 >= r_hi * r_hi || far2 <= r_lo * r_lo) return;
  if (width > r_hi / 8.0 && depth < 60) {
    const double mid = 0.5 * (lo[widest] + hi[widest]);
    std::vector<double> hi_left = hi;
    hi_left[widest] = mid;
    std::vector<double> lo_right = lo;
    lo_right[widest] = mid;
    box_shell_recursive(lo, hi_left, r_lo, r_hi, depth + 1, acc);
    box_shell_recursive(lo_right, hi, r_lo, r_hi, depth + 1, acc);
    return;
  }
  const double fine = box_cut_integral(lo, hi, r_lo, r_hi, true);
  const double coarse = box_cut_integral(lo, hi, r_lo, r_hi, false);
  acc.value += fine;
  acc.error += std::abs(fine - coarse);
}

ShellValue box_union_shell(const std::vector<Box>& boxes, int j) {
  const double r_lo = shell_lo(j);
  const double r_hi = shell_hi(j);
  ShellValue acc{0.0, 0.0};
  for (const auto& b : boxes) {
    // Clip to the cube around the ball of radius r_hi so subdivision scales with the shell.
    std::vector<double> lo = b.lo;
    std::vector<double> hi = b.hi;
    bool empty = false;
    for (std::size_t k = 0; k < lo.size(); ++k) {
      lo[k] = std::max(lo[k], -r_hi);
      hi[k] = std::min(hi[k], r_hi);
      if (!(hi[k] > lo[k])) empty = true;
    }
    if (!empty) box_shell_recursive(lo, hi, r_lo, r_hi, 0, acc);
  }
  return acc;
}

double distance_to_origin(const Box& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < b.lo.size(); ++k) {
    const double c = std::clamp(0.0, b.lo[k], b.hi[k]);
    s += c * c;
  }
  return std::sqrt(s);
}

}  // namespace

const char* to_string(IntegralStatus s) {
  switch (s) {
    case IntegralStatus::Converges: return "Converges";
    case IntegralStatus::Diverges: return "Diverges";
    case IntegralStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

const char* to_string(SetStatus s) {
  switch (s) {
    case SetStatus::MinimallyThin: return "MinimallyThin";
    case SetStatus::NotMinimallyThin: return "NotMinimallyThin";
    case SetStatus::Thin: return "Thin";
    case SetStatus::NotThin: return "NotThin";
    case SetStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

IntegralVerdict certify_shells(const std::vector<double>& shells, const std::vector<double>& errors, int first_index,
                               bool zero_tail) {
  if (shells.size() != errors.size()) throw PreconditionError("certify_shells: size mismatch");
  IntegralVerdict v;
  fill_evidence(v, shells, first_index);
  const double partial = std::accumulate(shells.begin(), shells.end(), 0.0);
  const double quad_error = std::accumulate(errors.begin(), errors.end(), 0.0);
  if (std::any_of(shells.begin(), shells.end(), [](double s) { return s == kInf; })) {
    v.status = IntegralStatus::Diverges;
    v.value = kInf;
    v.certificate = "unbounded";
    return v;
  }
  if (zero_tail) {
    v.status = IntegralStatus::Converges;
    v.value = partial;
    v.error_bound = quad_error;
    v.certificate = "finite";
    return v;
  }
  const AlgebraicFit fit = algebraic_fit(shells, first_index);
  v.fitted_exponent = fit.q;
  const Geometric g = geometric_tail(shells);
  if (g.ok) {
    v.status = IntegralStatus::Converges;
    v.value = partial + g.value_tail;
    v.error_bound = g.bound_tail + quad_error;
    v.certificate = "geometric";
    return v;
  }
  if (divergence_certified(shells, fit.q)) {
    v.status = IntegralStatus::Diverges;
    v.value = partial;  // certified lower bound
    v.certificate = "ratio";
    return v;
  }
  if (fit.ok && fit.q >= 1.5) {
    v.status = IntegralStatus::Converges;
    v.value = partial + fit.tail;
    v.error_bound = fit.tail + quad_error;
    v.certificate = "algebraic";
    return v;
  }
  v.value = partial;
  return v;
}

IntegralVerdict burdzy_integral(const ProfileSpec& profile, int d, const ShellOptions& opt) {
  if (d < 2) throw DomainError("dimension must be >= 2");
  const double sigma = unit_sphere_area(d - 1);
  auto v = radial_criterion([&](double r) { return sigma * profile(r) / r; }, 0, opt);
  return v;
}

IntegralVerdict thorn_criterion_brownian(const ProfileSpec& profile, int d, const ShellOptions& opt) {
  if (d < 3) throw DomainError("thorn criteria require d>=3");
  if (d == 3) {
    return radial_criterion([&](double r) { return 1.0 / std::abs(std::log(profile(r) / r)); }, 1, opt);
  }
  return radial_criterion([&](double r) { return std::pow(profile(r) / r, d - 3); }, 0, opt);
}

IntegralVerdict thorn_criterion_stable(const ProfileSpec& profile, int d, double alpha, const ShellOptions& opt) {
  if (d < 3) throw DomainError("thorn criteria require d>=3");
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("process.alpha out of range (0,2)");
  const double power = d - alpha - 1.0;
  return radial_criterion([&](double r) { return std::pow(profile(r) / r, power); }, 0, opt);
}

IntegralVerdict beurling_dahlberg_integral(const SetSpec& set, const ShellOptions& opt) {
  if (opt.max_shells < 1) throw DomainError("max_shells must be >= 1");
  const int d = set.dimension();
  const double tol = std::max(opt.rel_tol, 1e-9);
  return std::visit(
      overloaded{[&](const LipschitzGraph& g) {
                   return run_shells([&](int j) { return radial_set_shell(g.profile, false, d, j, tol); }, 0,
                                     opt.max_shells, false);
                 },
                 [&](const Thorn& t) {
                   return run_shells([&](int j) { return radial_set_shell(t.profile, true, d, j, tol); }, 0,
                                     opt.max_shells, false);
                 },
                 [&](const BoxUnion&) {
                   const auto& boxes = set.disjoint_boxes();
                   double nearest = kInf;
                   for (const auto& b : boxes) nearest = std::min(nearest, distance_to_origin(b));
                   // Shells inside radius `nearest` are empty.
                   int count = opt.max_shells;
                   bool zero_tail = false;
                   if (boxes.empty()) {
                     count = 0;
                     zero_tail = true;
                   } else if (nearest > 0.0) {
                     const int last = static_cast<int>(std::floor(-std::log2(nearest)));
                     if (last + 1 <= opt.max_shells) {
                       count = std::max(0, last + 1);
                       zero_tail = true;
                     }
                   }
                   return run_shells([&](int j) { return box_union_shell(boxes, j); }, 0, count, zero_tail);
                 }},
      set.kind());
}

ThinnessRecord minimal_thinness_verdict(const SetSpec& set, const ExponentSpec& spec, const ShellOptions& opt) {
  if (set.dimension() != spec.dimension()) throw PreconditionError("set and process dimensions differ");
  ThinnessRecord rec;
  std::visit(
      overloaded{
          [&](const LipschitzGraph& g) {
            auto v = burdzy_integral(g.profile, set.dimension(), opt);
            rec.process_independent = true;
            rec.label = "minimal thinness at 0";
            rec.status = v.status == IntegralStatus::Converges  ? SetStatus::MinimallyThin
                         : v.status == IntegralStatus::Diverges ? SetStatus::NotMinimallyThin
                                                                : SetStatus::Unknown;
            rec.criteria.push_back({"burdzy", std::move(v)});
          },
          [&](const BoxUnion&) {
            auto v = beurling_dahlberg_integral(set, opt);
            rec.process_independent = true;
            rec.label = "minimal thinness at 0 (divergence direction only)";
            rec.status = v.status == IntegralStatus::Diverges ? SetStatus::NotMinimallyThin : SetStatus::Unknown;
            rec.criteria.push_back({"beurling_dahlberg", std::move(v)});
          },
          [&](const Thorn& t) {
            rec.ordinary_thinness = true;
            rec.label = "thin/not thin (ordinary thinness)";
            rec.criteria.push_back({"thorn_brownian", thorn_criterion_brownian(t.profile, set.dimension(), opt)});
            if (const auto* s = std::get_if<Stable>(&spec.kind())) {
              auto v = thorn_criterion_stable(t.profile, set.dimension(), s->alpha, opt);
              rec.status = v.status == IntegralStatus::Converges  ? SetStatus::Thin
                           : v.status == IntegralStatus::Diverges ? SetStatus::NotThin
                                                                  : SetStatus::Unknown;
              rec.criteria.push_back({"thorn_stable", std::move(v)});
            } else {
              rec.label += "; no thorn criterion for this process";
            }
          }},
      set.kind());
  rec.inconclusive = rec.status == SetStatus::Unknown;
  return rec;
}

}  // namespace hst
