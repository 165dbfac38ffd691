// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <sstream>

#include "hst/errors.hpp"
#include "hst/thinness.hpp"

namespace hst {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite_positive(double v) { return v > 0.0 && std::isfinite(v); }

// Log-spaced probe points in (0, hi] used for the shape checks.
std::vector<double> probe_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
  return g;
}

void validate_box(const Box& b, int d) {
  if (static_cast<int>(b.lo.size()) != d || static_cast<int>(b.hi.size()) != d)
    throw DomainError("set.boxes: each box needs d lower and d upper coordinates");
  for (int k = 0; k < d; ++k) {
    if (!std::isfinite(b.lo[k]) || !std::isfinite(b.hi[k]) || !(b.lo[k] < b.hi[k]))
      throw DomainError("set.boxes: box needs lo < hi in every coordinate");
  }
  if (b.lo[d - 1] < 0.0) throw DomainError("set.boxes: box must lie in H (x_d >= 0)");
}

bool overlaps(const Box& a, const Box& b) {
  for (std::size_t k = 0; k < a.lo.size(); ++k)
    if (a.hi[k] <= b.lo[k] || b.hi[k] <= a.lo[k]) return false;
  return true;
}

// a \ e as at most 2d disjoint boxes.
std::vector<Box> subtract(Box a, const Box& e) {
  if (!overlaps(a, e)) return {a};
  std::vector<Box> out;
  for (std::size_t k = 0; k < a.lo.size(); ++k) {
    if (a.lo[k] < e.lo[k]) {
      Box below = a;
      below.hi[k] = e.lo[k];
      out.push_back(below);
      a.lo[k] = e.lo[k];
    }
    if (a.hi[k] > e.hi[k]) {
      Box above = a;
      above.lo[k] = e.hi[k];
      out.push_back(above);
      a.hi[k] = e.hi[k];
    }
  }
  return out;
}

}  // namespace

ProfileSpec::ProfileSpec(ProfileKind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const PowerLaw& p) {
                   if (!finite_positive(p.c)) throw DomainError("set.profile.c must be positive");
                   if (!(p.beta >= 1.0) || !std::isfinite(p.beta)) throw DomainError("set.profile.beta must be >= 1");
                 },
                 [](const PowerLog& p) {
                   if (!finite_positive(p.c)) throw DomainError("set.profile.c must be positive");
                   if (!(p.beta >= 1.0) || !std::isfinite(p.beta)) throw DomainError("set.profile.beta must be >= 1");
                   if (!std::isfinite(p.p)) throw DomainError("set.profile.p must be finite");
                 },
                 [this](const TabulatedRadial& t) {
                   if (t.r.size() < 2 || t.r.size() != t.values.size())
                     throw DomainError("set.profile: tabulated profile needs >= 2 matching r and value entries");
                   for (std::size_t i = 0; i < t.r.size(); ++i) {
                     if (!finite_positive(t.r[i]) || (i > 0 && !(t.r[i] > t.r[i - 1])))
                       throw DomainError("set.profile.r must be positive and strictly increasing");
                     if (!finite_positive(t.values[i])) throw DomainError("set.profile.values must be positive");
                   }
                   if (!finite_positive(t.lipschitz)) throw DomainError("set.profile.lipschitz must be positive");
                   tab_slope_ = std::log(t.values[1] / t.values[0]) / std::log(t.r[1] / t.r[0]);
                   if (!(tab_slope_ >= 1.0))
                     throw DomainError("set.profile: tabulated profile must decay at least linearly towards 0");
                   const double slack = 1.0 + 1e-9;
                   double worst = t.values[0] / t.r[0] * std::max(1.0, tab_slope_);
                   for (std::size_t i = 1; i < t.r.size(); ++i)
                     worst = std::max(worst, std::abs(t.values[i] - t.values[i - 1]) / (t.r[i] - t.r[i - 1]));
                   if (worst > t.lipschitz * slack)
                     throw DomainError("set.profile: difference quotients exceed the declared Lipschitz constant");
                 }},
             kind_);
}

double ProfileSpec::operator()(double r) const {
  if (!(r > 0.0)) return 0.0;
  return std::visit(overloaded{[&](const PowerLaw& p) { return p.c * std::pow(r, p.beta); },
                               [&](const PowerLog& p) {
                                 if (r >= 1.0) return p.c;
                                 return p.c * std::pow(r, p.beta) * std::pow(1.0 - std::log(r), -p.p);
                               },
                               [&](const TabulatedRadial& t) {
                                 if (r <= t.r.front()) return t.values.front() * std::pow(r / t.r.front(), tab_slope_);
                                 if (r >= t.r.back()) return t.values.back();
                                 const auto it = std::upper_bound(t.r.begin(), t.r.end(), r);
                                 const std::size_t i = static_cast<std::size_t>(it - t.r.begin());
                                 const double w = std::log(r / t.r[i - 1]) / std::log(t.r[i] / t.r[i - 1]);
                                 return t.values[i - 1] * std::pow(t.values[i] / t.values[i - 1], w);
                               }},
                    kind_);
}

double ProfileSpec::observed_lipschitz() const {
  const auto g = probe_grid(1e-9, 1.0, 4001);
  double prev_r = 0.0;
  double prev_f = 0.0;
  double worst = 0.0;
  for (double r : g) {
    const double f = (*this)(r);
    worst = std::max(worst, std::abs(f - prev_f) / (r - prev_r));
    prev_r = r;
    prev_f = f;
  }
  return worst;
}

std::string ProfileSpec::name() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const PowerLaw& p) { os << "PowerLaw{c=" << p.c << ",beta=" << p.beta << "}"; },
                        [&](const PowerLog& p) {
                          os << "PowerLog{c=" << p.c << ",beta=" << p.beta << ",p=" << p.p << "}";
                        },
                        [&](const TabulatedRadial& t) { os << "TabulatedRadial{n=" << t.r.size() << "}"; }},
             kind_);
  return os.str();
}

SetSpec::SetSpec(SetKind kind, int dimension) : kind_(std::move(kind)), dimension_(dimension) {
  if (dimension < 2) throw DomainError("dimension must be >= 2");
  std::visit(overloaded{
                 [](const LipschitzGraph& g) {
                   if (!finite_positive(g.lipschitz_a)) throw DomainError("set.lipschitz_a must be positive");
                   if (g.profile.observed_lipschitz() > g.lipschitz_a * (1.0 + 1e-6))
                     throw DomainError("set.lipschitz_a is smaller than the profile's difference quotients on (0,1]");
                 },
                 [](const Thorn& t) {
                   const auto g = probe_grid(1e-12, 1.0, 2001);
                   double prev_f = 0.0;
                   double prev_q = 0.0;
                   for (double r : g) {
                     const double f = t.profile(r);
                     if (!(f > prev_f)) throw DomainError("thorn profile must be strictly increasing with f(r) > f(0)");
                     const double q = f / r;
                     if (q < prev_q * (1.0 - 1e-12)) throw DomainError("thorn profile needs f(r)/r non-decreasing");
                     prev_f = f;
                     prev_q = q;
                   }
                 },
                 [&](const BoxUnion& u) {
                   for (const auto& b : u.boxes) {
                     validate_box(b, dimension);
                     std::vector<Box> pieces{b};
                     for (const auto& e : disjoint_) {
                       std::vector<Box> next;
                       for (auto& p : pieces) {
                         auto parts = subtract(std::move(p), e);
                         next.insert(next.end(), parts.begin(), parts.end());
                       }
                       pieces = std::move(next);
                     }
                     disjoint_.insert(disjoint_.end(), pieces.begin(), pieces.end());
                   }
                 }},
             kind_);
}

bool SetSpec::contains(const HPoint& x) const {
  if (x.dimension() != dimension_) throw PreconditionError("SetSpec::contains: dimension mismatch");
  if (!(x.x_d > 0.0)) return false;
  double rho2 = 0.0;
  for (double v : x.x_tilde) rho2 += v * v;
  return std::visit(overloaded{[&](const LipschitzGraph& g) { return x.x_d <= g.profile(std::sqrt(rho2)); },
                               [&](const Thorn& t) { return std::sqrt(rho2) < t.profile(x.x_d); },
                               [&](const BoxUnion& u) {
                                 for (const auto& b : u.boxes) {
                                   bool in = b.lo.back() <= x.x_d && x.x_d <= b.hi.back();
                                   for (std::size_t k = 0; in && k < x.x_tilde.size(); ++k)
                                     in = b.lo[k] <= x.x_tilde[k] && x.x_tilde[k] <= b.hi[k];
                                   if (in) return true;
                                 }
                                 return false;
                               }},
                    kind_);
}

std::string SetSpec::name() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const LipschitzGraph& g) {
                          os << "LipschitzGraph{" << g.profile.name() << ",a=" << g.lipschitz_a << "}";
                        },
                        [&](const Thorn& t) { os << "Thorn{" << t.profile.name() << "}"; },
                        [&](const BoxUnion& u) { os << "BoxUnion{" << u.boxes.size() << " boxes}"; }},
             kind_);
  os << " d=" << dimension_;
  return os.str();
}

}  // namespace hst
