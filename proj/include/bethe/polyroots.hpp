#pragma once

#include <vector>

#include "bethe/types.hpp"

namespace bethe {

/// Polynomial coefficients in descending order: coeffs[0] z^d + ... + coeffs[d].
using Polynomial = std::vector<Complex>;

/// Horner evaluation. For |z| > 1 callers should prefer the scaled residual
/// below; plain evaluation can overflow at high degree.
Complex poly_eval(const Polynomial& p, Complex z);

Polynomial poly_derivative(const Polynomial& p);

/// |p(z)| / (max|coeff| * max(1,|z|)^deg), computed without overflow by
/// evaluating the reversed polynomial at 1/z when |z| > 1.
double poly_residual_scaled(const Polynomial& p, Complex z);

/// Divide p by (z - root), discarding the remainder (synthetic division).
Polynomial poly_deflate(const Polynomial& p, Complex root);

struct RootOptions {
  int max_iterations = 400;
  double tolerance = 1e-13;          ///< step/residual convergence target
  double accept_residual = 1e-10;    ///< scaled residual each root must meet
  std::vector<Complex> extra_seeds;  ///< replace nearest default seeds
};

/// All complex roots of p via Aberth-Ehrlich simultaneous iteration.
///
/// Seeds default to slightly rotated roots of unity; extra_seeds (e.g. a
/// far-from-circle estimate) replace the nearest defaults. Roots with
/// |z| <= 1e-12 are discarded. Throws NumericalError with the worst residual
/// if the iteration budget is exhausted before every root satisfies
/// accept_residual * max|coeff| * max(1,|z|)^deg.
std::vector<Complex> solve_roots(const Polynomial& p, const RootOptions& opts = {});

}  // namespace bethe
