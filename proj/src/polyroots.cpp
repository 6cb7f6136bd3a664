#include "bethe/polyroots.hpp"

#include <algorithm>
#include <cmath>

namespace bethe {

namespace {

int degree(const Polynomial& p) { return static_cast<int>(p.size()) - 1; }

double max_coeff(const Polynomial& p) {
  double m = 0.0;
  for (const auto& c : p) m = std::max(m, std::abs(c));
  return m;
}

Polynomial reversed(const Polynomial& p) {
  Polynomial r(p.rbegin(), p.rend());
  return r;
}

// Newton ratio p(z)/p'(z). For |z| > 1 use p(z) = z^d q(1/z) with q the
// reversed polynomial: p/p' = z q(w) / (d q(w) - w q'(w)), w = 1/z. This
// keeps every intermediate bounded regardless of degree.
Complex newton_ratio(const Polynomial& p, const Polynomial& dp, const Polynomial& q,
                     const Polynomial& dq, Complex z) {
  const int d = degree(p);
  if (std::abs(z) <= 1.0) {
    Complex pv = poly_eval(p, z);
    Complex dv = poly_eval(dp, z);
    if (dv == Complex(0.0)) dv = Complex(1e-300);
    return pv / dv;
  }
  const Complex w = 1.0 / z;
  const Complex qv = poly_eval(q, w);
  const Complex dqv = poly_eval(dq, w);
  Complex denom = static_cast<double>(d) * qv - w * dqv;
  if (denom == Complex(0.0)) denom = Complex(1e-300);
  return z * qv / denom;
}

}  // namespace

Complex poly_eval(const Polynomial& p, Complex z) {
  Complex acc(0.0);
  for (const auto& c : p) acc = acc * z + c;
  return acc;
}

Polynomial poly_derivative(const Polynomial& p) {
  const int d = degree(p);
  if (d <= 0) return {Complex(0.0)};
  Polynomial dp(d);
  for (int i = 0; i < d; ++i) dp[i] = p[i] * static_cast<double>(d - i);
  return dp;
}

double poly_residual_scaled(const Polynomial& p, Complex z) {
  const double scale = max_coeff(p);
  if (scale == 0.0) return 0.0;
  if (std::abs(z) <= 1.0) return std::abs(poly_eval(p, z)) / scale;
  // |p(z)| / |z|^d = |q(1/z)| with q reversed
  return std::abs(poly_eval(reversed(p), 1.0 / z)) / scale;
}

Polynomial poly_deflate(const Polynomial& p, Complex root) {
  const int d = degree(p);
  if (d < 1) throw PreconditionError("poly_deflate: degree must be >= 1");
  Polynomial out(d);
  Complex acc(0.0);
  for (int i = 0; i < d; ++i) {
    acc = acc * root + p[i];
    out[i] = acc;
  }
  return out;
}

std::vector<Complex> solve_roots(const Polynomial& p, const RootOptions& opts) {
  if (p.empty() || p[0] == Complex(0.0))
    throw PreconditionError("solve_roots: leading coefficient must be nonzero");
  const int d = degree(p);
  if (d < 1) throw PreconditionError("solve_roots: degree must be >= 1");

  if (d == 1) {
    Complex z = -p[1] / p[0];
    return std::abs(z) <= 1e-12 ? std::vector<Complex>{} : std::vector<Complex>{z};
  }

  // Seeds: roots of unity with a small irrational rotation so no seed sits on
  // a symmetry axis of the target root set.
  std::vector<Complex> z(d);
  for (int i = 0; i < d; ++i)
    z[i] = std::polar(1.0, 2.0 * pi * i / d + 0.3183);
  for (const Complex& s : opts.extra_seeds) {
    // replace the default seed closest to s
    int best = 0;
    double bd = std::abs(z[0] - s);
    for (int i = 1; i < d; ++i) {
      const double dist = std::abs(z[i] - s);
      if (dist < bd) { bd = dist; best = i; }
    }
    z[best] = s;
  }

  const Polynomial dp = poly_derivative(p);
  const Polynomial q = reversed(p);
  const Polynomial dq = poly_derivative(q);

  std::vector<bool> locked(d, false);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double worst_step = 0.0;
    for (int i = 0; i < d; ++i) {
      if (locked[i]) continue;
      const Complex ni = newton_ratio(p, dp, q, dq, z[i]);
      Complex sum(0.0);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (diff == Complex(0.0)) diff = Complex(1e-14);
        sum += 1.0 / diff;
      }
      Complex denom = 1.0 - ni * sum;
      if (denom == Complex(0.0)) denom = Complex(1e-300);
      const Complex step = ni / denom;
      z[i] -= step;
      worst_step = std::max(worst_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (worst_step < opts.tolerance) {
      // lock-in pass: everything converged together
      break;
    }
    // Lock roots whose scaled residual is already at the floor; Aberth keeps
    // the rest repelling against them.
    if (iter > 20 && iter % 8 == 0) {
      for (int i = 0; i < d; ++i)
        if (!locked[i] && poly_residual_scaled(p, z[i]) < 1e-15) locked[i] = true;
    }
  }

  // Newton polish (helps clustered roots found by Aberth)
  for (int i = 0; i < d; ++i) {
    for (int it = 0; it < 3; ++it) {
      const Complex step = newton_ratio(p, dp, q, dq, z[i]);
      if (std::abs(step) > 0.5 * std::max(1.0, std::abs(z[i]))) break;
      z[i] -= step;
    }
  }

  double worst = 0.0;
  for (int i = 0; i < d; ++i) worst = std::max(worst, poly_residual_scaled(p, z[i]));
  if (worst > opts.accept_residual)
    throw NumericalError("solve_roots: no convergence, worst scaled residual " +
                         std::to_string(worst));

  std::vector<Complex> out;
  out.reserve(d);
  for (const Complex& r : z)
    if (std::abs(r) > 1e-12) out.push_back(r);
  return out;
}

}  // namespace bethe
