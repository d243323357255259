#include "wicklab/heisenberg.h"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <memory>

#include "wicklab/errors.h"
#include "wicklab/numerics.h"
#include "wicklab/quadrature.h"
#include "wicklab/quantize.h"

namespace wicklab {

double symplectic_form(std::span<const cplx> y1, std::span<const cplx> y2) {
  if (y1.size() != y2.size()) throw UsageError("phase points have different dimensions");
  double s = 0.0;
  for (std::size_t j = 0; j < y1.size(); ++j) s += y1[j].imag() * y2[j].real() - y1[j].real() * y2[j].imag();
  return s;
}

namespace {

// One-coordinate factor: table(b, a) = <tau_y e_a, e_b>, 0 <= a, b <= N.
Eigen::MatrixXcd translation_table_1d(cplx y, int N) {
  const long double r = std::abs(y);
  const long double phi = std::arg(y);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  if (r == 0.0L) {
    t.setIdentity();
    return t;
  }
  const long double log_r = std::log(r);
  const long double r2 = r * r;
  const long double prefactor_log = 0.5L * r2;
  // S(b, a) = (-1)^{a-b} S(a, b), so only b <= a is summed.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int a = 0; a <= N; ++a) {
    for (int b = 0; b <= a; ++b) {
      // term_g = (-1)^g r^{2g+a-b} (g+a)! / (g! (g+a-b)!) / sqrt(a! b!), g >= 0.
      const long double log_mag = (a - b) * log_r + log_factorial(a) - log_factorial(a - b) -
                                  0.5L * (log_factorial(a) + log_factorial(b)) + prefactor_log;
      long double term = std::exp(log_mag);
      long double sum = 0.0L;
      long double peak = 0.0L;
      for (int g = 0;; ++g) {
        sum += term;
        peak = std::max(peak, std::fabs(term));
        const long double ratio = -r2 * (g + a + 1.0L) / ((g + 1.0L) * (g + a - b + 1.0L));
        term *= ratio;
        // Past the peak the ratios keep shrinking, so the tail is below |term| / (1 - |ratio|).
        if (std::fabs(ratio) < 0.5L && std::fabs(term) <= 1e-17L * peak) break;
        if (term == 0.0L) break;
      }
      s(b, a) = static_cast<double>(sum);
      s(a, b) = ((a - b) % 2 ? -1.0 : 1.0) * s(b, a);
    }
  }
  for (int a = 0; a <= N; ++a) {
    for (int b = 0; b <= N; ++b) {
      // Common phase i^{a-b} e^{i phi (a-b)}.
      const double angle = static_cast<double>((0.5L * static_cast<long double>(M_PI) + phi) * (a - b));
      t(b, a) = cplx(s(b, a) * std::cos(angle), s(b, a) * std::sin(angle));
    }
  }
  return t;
}

double norm_sq(std::span<const cplx> y) {
  double s = 0.0;
  for (const cplx& v : y) s += std::norm(v);
  return s;
}

}  // namespace

FockOperator translation_op(std::span<const cplx> Y, const TruncationParams& params) {
  if (static_cast<int>(Y.size()) != params.n) throw UsageError("phase point has the wrong dimension");
  const double r2 = norm_sq(Y);
  if (r2 > params.degree_max / 8.0 + 1e-12) {
    throw AccuracyError("|Y|^2 = " + std::to_string(r2) + " exceeds the accuracy radius N/8 = " +
                        std::to_string(params.degree_max / 8.0));
  }
  auto basis = make_basis(params);
  std::vector<Eigen::MatrixXcd> tables;
  tables.reserve(Y.size());
  for (const cplx& y : Y) tables.push_back(translation_table_1d(y, params.degree_max));
  const auto d = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    const MultiIndex& alpha = (*basis)[static_cast<std::size_t>(col)];
    for (Eigen::Index row = 0; row < d; ++row) {
      const MultiIndex& beta = (*basis)[static_cast<std::size_t>(row)];
      cplx v = 1.0;
      for (int j = 0; j < params.n; ++j) v *= tables[static_cast<std::size_t>(j)](beta[j], alpha[j]);
      m(row, col) = v;
    }
  }
  return FockOperator(basis, std::move(m), {-params.degree_max, params.degree_max});
}

TranslationProduct compose_translations(std::span<const cplx> Y1, std::span<const cplx> Y2,
                                        const TruncationParams& params, bool flip_sigma) {
  if (Y1.size() != Y2.size()) throw UsageError("phase points have different dimensions");
  PhasePoint sum(Y1.size());
  for (std::size_t j = 0; j < Y1.size(); ++j) sum[j] = Y1[j] + Y2[j];
  const double sigma = symplectic_form(Y1, Y2) * (flip_sigma ? -1.0 : 1.0);
  return {translation_op(Y1, params) * translation_op(Y2, params), translation_op(sum, params),
          std::polar(1.0, -sigma)};
}

double group_law_defect(std::span<const cplx> Y1, std::span<const cplx> Y2, const TruncationParams& params,
                        int block, bool flip_sigma) {
  const TranslationProduct p = compose_translations(Y1, Y2, params, flip_sigma);
  const Eigen::MatrixXcd diff = p.product.block(block) - p.phase * p.combined.block(block);
  return diff.cwiseAbs().maxCoeff();
}

const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::gaussian:
      return "gaussian";
    case WeightKind::cutoff_fourier:
      return "cutoff_fourier";
    case WeightKind::sampled:
      return "sampled";
    case WeightKind::custom:
      return "custom";
  }
  return "custom";
}

TranslationWeight gaussian_weight(int n, const PhasePoint& center, double width, cplx mass) {
  if (n < 1) throw UsageError("dimension n must be >= 1");
  if (static_cast<int>(center.size()) != n) throw UsageError("weight center has the wrong dimension");
  if (!(width > 0.0)) throw UsageError("Gaussian width must be positive");
  TranslationWeight w;
  w.n = n;
  w.kind = WeightKind::gaussian;
  w.center = center;
  w.scale = width;
  w.mass = mass;
  w.support_radius = 6.0 * width;
  w.l1_bound = std::abs(mass);
  // E|Y| for a 2n-dimensional Gaussian of standard deviation w, over w^2.
  w.grad_l1_bound = std::abs(mass) * std::sqrt(2.0) * std::exp(std::lgamma(n + 0.5) - std::lgamma(n)) / width;
  const double norm = std::pow(2.0 * M_PI * width * width, -n);
  const double inv = 1.0 / (2.0 * width * width);
  w.m = [center, norm, inv, mass](std::span<const cplx> Y) {
    double r2 = 0.0;
    for (std::size_t j = 0; j < Y.size(); ++j) r2 += std::norm(Y[j] - center[j]);
    return mass * norm * std::exp(-inv * r2);
  };
  return w;
}

RadialSymbol gaussian_cutoff(int n, double r2) {
  if (!(r2 > 0.0)) throw UsageError("cutoff scale must be positive");
  return RadialSymbol::custom(n, [r2](double t) { return std::exp(-t / r2); }, std::nullopt, 1.0,
                              "exp(-t/r2)");
}

TranslationWeight gaussian_cutoff_fourier_weight(int n, double r2) {
  const double var = 1.0 / (1.0 + 2.0 * r2);
  const double mass = std::pow(r2 / (0.5 + r2), n);
  TranslationWeight w = gaussian_weight(n, PhasePoint(static_cast<std::size_t>(n)), std::sqrt(var), mass);
  w.kind = WeightKind::cutoff_fourier;
  return w;
}

TranslationWeight cutoff_fourier_weight(const RadialSymbol& chi) {
  const int n = chi.n;
  // Radius in |Z| up to which chi is integrated.
  const double rmax = chi.support ? std::sqrt(*chi.support) : std::sqrt(80.0 + 4.0 * n);
  const QuadratureRule& rule = gauss_legendre(256);
  auto chi_tilde = [chi, n, rmax, &rule](double rho) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = 0.5 * rmax * (rule.nodes[i] + 1.0);
      const double w = 0.5 * rmax * rule.weights[i];
      const double f = chi.profile(r * r);
      if (rho == 0.0) {
        sum += w * f * 2.0 * std::pow(M_PI, n) / std::tgamma(n) * std::pow(r, 2 * n - 1);
      } else {
        sum += w * f * std::cyl_bessel_j(n - 1.0, 2.0 * rho * r) * std::pow(r, n);
      }
    }
    if (rho == 0.0) return sum;
    return std::pow(2.0 * M_PI, n) * std::pow(2.0 * rho, 1.0 - n) * sum;
  };
  TranslationWeight w;
  w.n = n;
  w.kind = WeightKind::cutoff_fourier;
  w.center = PhasePoint(static_cast<std::size_t>(n));
  w.scale = 1.0;
  w.support_radius = std::sqrt(72.0);
  const double c = std::pow(M_PI, -2.0 * n);
  w.m = [chi_tilde, c](std::span<const cplx> Y) {
    const double r2 = norm_sq(Y);
    return cplx(std::exp(-0.5 * r2) * c * chi_tilde(std::sqrt(r2)), 0.0);
  };
  // Radial L1 norms on R^{2n}.
  const QuadratureRule& outer = gauss_legendre(128);
  double l1 = 0.0;
  double grad = 0.0;
  const double area = 2.0 * std::pow(M_PI, n) / std::tgamma(n);
  auto radial = [&](double rho) { return std::exp(-0.5 * rho * rho) * c * chi_tilde(rho); };
  for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
    const double rho = 0.5 * w.support_radius * (outer.nodes[i] + 1.0);
    const double wt = 0.5 * w.support_radius * outer.weights[i] * area * std::pow(rho, 2 * n - 1);
    const double h = 1e-5 * std::max(1.0, rho);
    l1 += wt * std::abs(radial(rho));
    grad += wt * std::abs((radial(rho + h) - radial(std::max(0.0, rho - h))) / (rho + h - std::max(0.0, rho - h)));
  }
  w.l1_bound = l1;
  w.grad_l1_bound = grad;
  w.mass = w.m(std::vector<cplx>(static_cast<std::size_t>(n)));
  return w;
}

namespace {

// Tensor trapezoid nodes on [c - R, c + R]^{2n}, restricted to the ball.
template <class F>
void for_each_node(const PhasePoint& center, double R, int points, F&& f) {
  const int n = static_cast<int>(center.size());
  const int dims = 2 * n;
  const double h = 2.0 * R / (points - 1);
  const double cell = std::pow(h, dims);
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  PhasePoint Y(static_cast<std::size_t>(n));
  while (true) {
    double r2 = 0.0;
    double w = cell;
    for (int j = 0; j < n; ++j) {
      const double x = -R + h * idx[static_cast<std::size_t>(2 * j)];
      const double p = -R + h * idx[static_cast<std::size_t>(2 * j + 1)];
      r2 += x * x + p * p;
      Y[static_cast<std::size_t>(j)] = center[static_cast<std::size_t>(j)] + cplx(x, p);
    }
    for (int k = 0; k < dims; ++k) {
      const int i = idx[static_cast<std::size_t>(k)];
      if (i == 0 || i == points - 1) w *= 0.5;
    }
    if (r2 <= R * R * (1.0 + 1e-12)) f(Y, w);
    int k = dims - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == points) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) return;
  }
}

struct Level {
  Eigen::MatrixXcd sum;
  double l1 = 0.0;
};

Level superposition_level(const TranslationWeight& w, const TruncationParams& params, int points) {
  auto basis = make_basis(params);
  const auto d = static_cast<Eigen::Index>(basis->size());
  Level level{Eigen::MatrixXcd::Zero(d, d), 0.0};
  for_each_node(w.center, w.support_radius, points, [&](const PhasePoint& Y, double cell) {
    const cplx mv = w.m(Y);
    if (mv == cplx{}) return;
    level.l1 += std::abs(mv) * cell;
    level.sum.noalias() += (mv * cell) * translation_op(Y, params).matrix();
  });
  return level;
}

}  // namespace

SuperpositionResult weighted_superposition(const TranslationWeight& w, const TruncationParams& params,
                                           const QuadratureSpec& spec) {
  if (w.n != params.n) throw UsageError("weight dimension does not match params.n");
  if (!w.m) throw UsageError("weight has no density");
  const double reach = std::sqrt(norm_sq(w.center)) + w.support_radius;
  if (reach * reach > params.degree_max / 8.0 + 1e-12) {
    throw AccuracyError("weight reaches |Y| = " + std::to_string(reach) + ", beyond the accuracy radius sqrt(N/8)");
  }
  if (spec.points < 3) throw UsageError("superposition needs at least 3 points per axis");
  int points = spec.points;
  Level prev = superposition_level(w, params, points);
  SuperpositionResult out{FockOperator(make_basis(params), prev.sum, {-params.degree_max, params.degree_max}),
                          false, 0.0, points, prev.l1};
  while (2 * points - 1 <= spec.max_points) {
    points = 2 * points - 1;
    Level cur = superposition_level(w, params, points);
    const double change = (cur.sum - prev.sum).cwiseAbs().maxCoeff();
    out = {FockOperator(make_basis(params), cur.sum, {-params.degree_max, params.degree_max}), change <= spec.tol,
           change, points, cur.l1};
    if (out.converged) break;
    prev = std::move(cur);
  }
  return out;
}

namespace {

double catmull_rom(double p0, double p1, double p2, double p3, double t) {
  return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
}

struct Grid2D {
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;
  int size = 0;
  std::vector<cplx> values;

  cplx at(int i, int j) const {
    if (i < 0 || j < 0 || i >= size || j >= size) return {};
    return values[static_cast<std::size_t>(i * size + j)];
  }

  cplx interpolate(double x, double y) const {
    const double u = (x - x0) / h;
    const double v = (y - y0) / h;
    if (u < -1e-9 || v < -1e-9 || u > size - 1 + 1e-9 || v > size - 1 + 1e-9) return {};
    const int i = std::clamp(static_cast<int>(std::floor(u)), 0, size - 2);
    const int j = std::clamp(static_cast<int>(std::floor(v)), 0, size - 2);
    const double tu = u - i;
    const double tv = v - j;
    if (std::abs(tu) < 1e-9 && std::abs(tv) < 1e-9) return at(i, j);
    cplx rows[4];
    for (int a = 0; a < 4; ++a) {
      const int ii = i - 1 + a;
      cplx c[4];
      for (int b = 0; b < 4; ++b) c[b] = at(ii, j - 1 + b);
      rows[a] = {catmull_rom(c[0].real(), c[1].real(), c[2].real(), c[3].real(), tv),
                 catmull_rom(c[0].imag(), c[1].imag(), c[2].imag(), c[3].imag(), tv)};
    }
    return {catmull_rom(rows[0].real(), rows[1].real(), rows[2].real(), rows[3].real(), tu),
            catmull_rom(rows[0].imag(), rows[1].imag(), rows[2].imag(), rows[3].imag(), tu)};
  }
};

cplx composed_density(const TranslationWeight& m1, const TranslationWeight& m2, std::span<const cplx> Y3,
                      int points, PhaseMode phase) {
  const std::size_t n = Y3.size();
  // Y4 ranges over the support of m1(Y3/2 + Y4): a ball around c1 - Y3/2.
  PhasePoint c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = m1.center[j] - 0.5 * Y3[j];
  PhasePoint a(n);
  PhasePoint b(n);
  cplx total = 0.0;
  for_each_node(c, m1.support_radius, points, [&](const PhasePoint& Y4, double cell) {
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = 0.5 * Y3[j] + Y4[j];
      b[j] = 0.5 * Y3[j] - Y4[j];
    }
    const cplx v2 = m2.m(b);
    if (v2 == cplx{}) return;
    cplx v = m1.m(a) * v2 * cell;
    if (phase != PhaseMode::none) {
      const double s = symplectic_form(Y3, Y4) * (phase == PhaseMode::flipped ? -1.0 : 1.0);
      v *= std::polar(1.0, s);
    }
    total += v;
  });
  return total;
}

}  // namespace

TranslationWeight compose_weights(const TranslationWeight& m1, const TranslationWeight& m2, const QuadratureSpec& spec,
                                  PhaseMode phase) {
  if (m1.n != m2.n) throw UsageError("weights have different dimensions");
  if (m1.n > 2) throw UsageError("compose_weights supports n = 1 or 2");
  if (!m1.m || !m2.m) throw UsageError("weight has no density");
  const int n = m1.n;
  TranslationWeight out;
  out.n = n;
  out.kind = WeightKind::sampled;
  out.center = PhasePoint(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.center[static_cast<std::size_t>(j)] = m1.center[static_cast<std::size_t>(j)] + m2.center[static_cast<std::size_t>(j)];
  // Supports add in quadrature, as for the convolution of two Gaussians.
  out.support_radius = std::hypot(m1.support_radius, m2.support_radius);
  out.scale = std::hypot(m1.scale, m2.scale);
  out.l1_bound = m1.l1_bound * m2.l1_bound;
  out.grad_l1_bound = m1.grad_l1_bound * m2.l1_bound + m1.l1_bound * m2.grad_l1_bound;
  const int inner = 2 * spec.points - 1;
  if (n == 1) {
    auto grid = std::make_shared<Grid2D>();
    grid->size = spec.max_points;
    grid->h = 2.0 * out.support_radius / (grid->size - 1);
    grid->x0 = out.center[0].real() - out.support_radius;
    grid->y0 = out.center[0].imag() - out.support_radius;
    grid->values.resize(static_cast<std::size_t>(grid->size) * grid->size);
    PhasePoint Y3(1);
    for (int i = 0; i < grid->size; ++i) {
      for (int j = 0; j < grid->size; ++j) {
        Y3[0] = cplx(grid->x0 + grid->h * i, grid->y0 + grid->h * j);
        grid->values[static_cast<std::size_t>(i * grid->size + j)] = composed_density(m1, m2, Y3, inner, phase);
      }
    }
    out.m = [grid](std::span<const cplx> Y) { return grid->interpolate(Y[0].real(), Y[0].imag()); };
  } else {
    out.m = [m1, m2, inner, phase](std::span<const cplx> Y) { return composed_density(m1, m2, Y, inner, phase); };
  }
  out.mass = out.m(out.center);
  return out;
}

double weight_budget(const TranslationWeight& w) { return w.grad_l1_bound + w.l1_bound; }

RemainderResult first_order_remainder(const TranslationWeight& m1, const TranslationWeight& m2,
                                      const TruncationParams& params, double constant, const QuadratureSpec& spec) {
  const FockOperator f1 = weighted_superposition(m1, params, spec).op;
  const FockOperator f2 = weighted_superposition(m2, params, spec).op;
  const TranslationWeight lead = compose_weights(m1, m2, spec, PhaseMode::none);
  const FockOperator f3 = weighted_superposition(lead, params, spec).op;
  RemainderResult out{f1 * f2 - f3, 0.0, 0.0, 0.0};
  const int half = params.degree_max / 2;
  const Eigen::MatrixXcd block = out.remainder.block(half);
  const FockBasis& basis = out.remainder.basis();
  Eigen::VectorXd scale(block.rows());
  for (Eigen::Index i = 0; i < block.rows(); ++i) scale[i] = std::sqrt(1.0 + basis.degree_of(static_cast<std::size_t>(i)));
  const Eigen::MatrixXcd weighted = scale.asDiagonal() * block;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(weighted.adjoint() * weighted, Eigen::EigenvaluesOnly);
  out.norm = std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
  out.budget_product = weight_budget(m1) * weight_budget(m2);
  out.bound = constant * out.budget_product;
  return out;
}

CutoffBound cutoff_norm_bound(double rho, int n, double sup_bound) {
  if (n < 1) throw UsageError("dimension n must be >= 1");
  const double R2 = rho * rho * n;
  CutoffBound b{};
  // R^{2n} (pi^n / Gamma(n)) / (2n 2^n pi^n) = R^{2n} / (2^{n+1} n!).
  b.eq_bound = sup_bound * std::exp(n * std::log(R2) - (n + 1) * std::log(2.0) - std::lgamma(n + 1.0));
  b.trace_bound = sup_bound * std::exp(n * std::log(R2) - std::lgamma(n + 1.0));
  b.stirling_bound = sup_bound * std::exp(n * (1.0 + 2.0 * std::log(rho)));
  if (rho == 0.0) b = {0.0, 0.0, 0.0};
  return b;
}

double measured_cutoff_norm(const RadialSymbol& chi, const TruncationParams& params, double tol) {
  const RadialSpectrum s = radial_spectrum(chi, params.degree_max, tol);
  double m = 0.0;
  for (double v : s.eigenvalues) m = std::max(m, std::abs(v));
  return m;
}

void ZoneConfig::validate() const {
  if (!(lambda >= 1.0)) throw UsageError("zone config needs Lambda >= 1");
  if (!(d >= 1.0)) throw UsageError("zone config needs d >= 1");
  if (!(C > 0.0 && c0 > 0.0 && C0 > 0.0)) throw UsageError("zone constants must be positive");
}

ZoneReport zone_planner(const ZoneConfig& cfg) {
  cfg.validate();
  ZoneReport r;
  const double sl = std::sqrt(cfg.lambda);
  const double sd = std::sqrt(cfg.d);
  r.lhs = cfg.C * sl;
  r.rhs = 0.5 * cfg.c0 * sd;
  r.ec_e2_disjoint = r.lhs < r.rhs;
  r.C1 = 4.0 * cfg.C * cfg.C / (cfg.c0 * cfg.c0);
  r.second_regime = cfg.lambda / cfg.d <= 1.0 / r.C1;
  const double inf = std::numeric_limits<double>::infinity();
  r.e3 = {0.0, cfg.c0 * sd};
  r.e2 = {cfg.c0 * sd, cfg.C0 * sd};
  r.ei = {cfg.C0 * sd, inf};
  r.ec = {0.0, cfg.C * sl};
  r.ec_meets_e3 = true;
  r.ec_meets_e2 = r.ec.hi >= r.e2.lo;
  r.ec_meets_ei = r.ec.hi >= r.ei.lo;
  return r;
}

}  // namespace wicklab
