#include "bethe/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "bethe/basis.hpp"

namespace bethe {

namespace {

constexpr Complex I(0.0, 1.0);

double wrap_pm_pi(double x) {
  double w = std::remainder(x, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

// --- fixed points of the swap involution z <-> 1/(alpha_n z) ---------------
//
// The involution maps each class-n root to its (k1 <-> k2)-swapped partner.
// Its fixed points z0 = +-e^{-i pi n / N} are the equal-momentum candidates.
// At z0 the class polynomial factors as
//   p(z0) = (e^{-i k0 N} - 1) e^{i k0} (2 cos k0 - gamma),   z0 = e^{-i k0},
// so a fixed point is a root iff either
//   e^{i k0 N} = +1  ("null" type: the plane-wave state vanishes identically;
//                     always a root, odd multiplicity), or
//   gamma = 2 cos k0 ("threshold" type: a genuine equal-momentum eigenstate
//                     with q1 = q2; double root exactly at the threshold).
// Null roots turn into derivative (Confluent) eigenstates when their
// multiplicity reaches 3, which happens at gamma = 2 N cos k0 / (N - 2).

struct FixedPoint {
  Complex z0;
  double k0;      // z0 = e^{-i k0}
  bool null_type; // e^{i k0 N} == +1 (exact integer parity)
};

std::array<FixedPoint, 2> class_fixed_points(int n, int N) {
  const double k_plus = pi * n / N;
  const double k_minus = k_plus - pi;
  FixedPoint plus{std::polar(1.0, -k_plus), k_plus, n % 2 == 0};
  FixedPoint minus{std::polar(1.0, -k_minus), k_minus, (n + N) % 2 == 0};
  return {plus, minus};
}

// --- solution cores ---------------------------------------------------------

enum class CoreKind { Regular, Threshold, DerivativeNull };

struct Core {
  Complex z;
  Complex k1, k2;
  double E;
  CoreKind kind;
  int cls;
};

double core_energy(Complex k1, Complex k2, double J);

Core make_regular_core(Complex z, int n, const ChainParams& params) {
  Core c;
  c.z = z;
  c.k1 = I * std::log(z);
  c.k2 = 2.0 * pi * n / params.N - c.k1;
  c.E = core_energy(c.k1, c.k2, params.J);
  c.kind = CoreKind::Regular;
  c.cls = n;
  return c;
}

Core make_fixed_core(const FixedPoint& f, CoreKind kind, int n, const ChainParams& params) {
  Core c;
  c.z = f.z0;
  c.k1 = c.k2 = Complex(f.k0, 0.0);
  c.E = 4.0 * params.J * std::cos(f.k0);
  c.kind = kind;
  c.cls = n;
  return c;
}

double core_energy(Complex k1, Complex k2, double J) {
  const Complex e = 2.0 * J * (std::cos(k1) + std::cos(k2));
  const double tol = 1e-10 * std::max(1.0, std::abs(e.real()));
  if (std::abs(e.imag()) > tol)
    throw NumericalError("energy: imaginary part " + std::to_string(e.imag()) +
                         " exceeds tolerance (inconsistent solution)");
  return e.real();
}

// Deduplicate swapped pairs within one class. The unordered pair {z, z'} with
// z' = 1/(alpha z) is uniquely identified by the sum s = z + z' because the
// product z z' = 1/alpha is fixed classwide.
std::vector<Core> dedup_swap_pairs(std::vector<Core> cores, Complex alpha, int n, int N) {
  struct Keyed {
    Complex s;
    Core core;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(cores.size());
  for (auto& c : cores) keyed.push_back({c.z + 1.0 / (alpha * c.z), std::move(c)});
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.s.real() != b.s.real()) return a.s.real() < b.s.real();
    return a.s.imag() < b.s.imag();
  });
  std::vector<Core> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (!out.empty()) {
      const Complex prev = out.back().z + 1.0 / (alpha * out.back().z);
      if (std::abs(keyed[i].s - prev) <= 1e-7 * std::max(1.0, std::abs(prev))) {
        // canonical representative of the pair: keep the larger-|z| member
        if (std::abs(keyed[i].core.z) > std::abs(out.back().z)) out.back() = keyed[i].core;
        continue;
      }
    }
    out.push_back(std::move(keyed[i].core));
  }
  if (2 * out.size() != cores.size())
    throw StructuralError("class " + std::to_string(n) + " of N=" + std::to_string(N) +
                          ": swap pairing failed (" + std::to_string(cores.size()) +
                          " roots, " + std::to_string(out.size()) + " pairs)");
  return out;
}

// All solution cores of one momentum class (gamma != 0).
std::vector<Core> class_cores(const ChainParams& params, int n) {
  const int N = params.N;
  const double gamma = params.gamma();
  std::vector<Core> out;

  if (2 * n == N) {
    // reduced class: z^{N-2} = -1, all roots known in closed form
    std::vector<Core> regulars;
    const Complex alpha(-1.0, 0.0);
    for (int j = 0; j <= N - 3; ++j) {
      const Complex z = std::polar(1.0, pi * (2 * j + 1) / (N - 2));
      // self-paired roots (z^2 = -1) are equal-momentum and null for even N
      if (std::abs(z * z + 1.0) <= 1e-9) continue;
      regulars.push_back(make_regular_core(z, n, params));
    }
    return dedup_swap_pairs(std::move(regulars), alpha, n, N);
  }

  const Complex alpha = MomentumClass(n, N).alpha();
  Polynomial p = bethe_polynomial(params, MomentumClass(n, N));

  const double gtol = 1e-11 * std::max(1.0, std::abs(gamma));
  int deflated = 0;
  for (const FixedPoint& f : class_fixed_points(n, N)) {
    if (f.null_type) {
      // always a root; multiplicity jumps to 3 at gamma = 2 N cos k0 / (N-2)
      const double gamma_star = 2.0 * N * std::cos(f.k0) / (N - 2);
      int mult = 1;
      if (std::abs(gamma - gamma_star) <= gtol) {
        mult = 3;
        out.push_back(make_fixed_core(f, CoreKind::DerivativeNull, n, params));
      }
      for (int t = 0; t < mult; ++t) p = poly_deflate(p, f.z0);
      deflated += mult;
    } else {
      const double gamma_th = 2.0 * std::cos(f.k0);
      if (std::abs(gamma - gamma_th) <= gtol) {
        out.push_back(make_fixed_core(f, CoreKind::Threshold, n, params));
        p = poly_deflate(p, f.z0);
        p = poly_deflate(p, f.z0);
        deflated += 2;
      }
    }
  }

  std::vector<Core> regulars;
  if (static_cast<int>(p.size()) > 1) {
    RootOptions opts;
    const Complex z_big = gamma / (1.0 + alpha);
    if (std::abs(z_big) > 1.3) {
      opts.extra_seeds.push_back(z_big);
      opts.extra_seeds.push_back(1.0 / (alpha * z_big));
    }
    for (const Complex& z : solve_roots(p, opts)) {
      Core c = make_regular_core(z, n, params);
      const double dk_re = wrap_pm_pi((c.k1 - c.k2).real());
      const double dk_im = (c.k1 - c.k2).imag();
      if (std::abs(dk_re) <= 1e-10 && std::abs(dk_im) <= 1e-10)
        throw StructuralError("class " + std::to_string(n) +
                              ": unexpected equal-momentum root after deflation");
      regulars.push_back(std::move(c));
    }
  }
  auto paired = dedup_swap_pairs(std::move(regulars), alpha, n, N);
  out.insert(out.end(), paired.begin(), paired.end());
  return out;
}

std::vector<Core> all_cores(const ChainParams& params) {
  std::vector<Core> cores;
  for (int n = 0; n < params.N; ++n) {
    auto cc = class_cores(params, n);
    cores.insert(cores.end(), cc.begin(), cc.end());
  }
  return cores;
}

// Unit-norm scaling for the plane-wave amplitude family. q1 is pre-scaled to
// e^{-i k2 N / 2} so every amplitude term stays bounded by e^{|Im k1| N / 2};
// the final scale folds the numerical norm back into (q1, q2).
void normalize_plane_wave(BetheSolution& s, int N) {
  const double b = std::abs(s.k1.imag());
  if (b * N / 2.0 > 690.0)
    throw NumericalError("assemble_solution: bound state too extreme to normalize");
  s.q1 = std::exp(-I * s.k2 * double(N) / 2.0);
  s.q2 = -s.q1 * std::exp(I * s.k2 * double(N));
  // rescale so the largest term magnitude is ~1 before accumulating the norm
  const double pre = -b * (N / 2.0 - 1.0);
  s.q1 *= std::exp(pre);
  s.q2 *= std::exp(pre);
  const Complex lq1 = std::log(s.q1), lq2 = std::log(s.q2);
  double norm2 = 0.0;
  for (int m1 = 1; m1 < N; ++m1)
    for (int m2 = m1 + 1; m2 <= N; ++m2) {
      const Complex a = std::exp(lq1 + I * (s.k1 * double(m1) + s.k2 * double(m2))) +
                        std::exp(lq2 + I * (s.k2 * double(m1) + s.k1 * double(m2)));
      norm2 += std::norm(a);
    }
  if (!(norm2 > 0.0) || !std::isfinite(norm2))
    throw NumericalError("assemble_solution: null or non-finite state norm");
  s.q1 /= std::sqrt(norm2);
  s.q2 /= std::sqrt(norm2);
}

BetheSolution solution_from_core(const Core& c, const ChainParams& params) {
  BetheSolution s;
  s.k1 = c.k1;
  s.k2 = c.k2;
  s.E = c.E;
  s.momentum_class = c.cls;
  switch (c.kind) {
    case CoreKind::Regular: {
      s.kind = std::abs(c.k1.imag()) > 1e-8 ? SolutionKind::Bound : SolutionKind::Generic;
      normalize_plane_wave(s, params.N);
      break;
    }
    case CoreKind::Threshold: {
      // equal momenta k1 = k2 = k0 with q1 = q2; amplitudes q e^{i k0 (m1+m2)}
      s.kind = SolutionKind::Bound;
      const double q = 0.5 * std::sqrt(2.0 / (double(params.N) * (params.N - 1)));
      s.q1 = s.q2 = Complex(q, 0.0);
      break;
    }
    case CoreKind::DerivativeNull: {
      s.kind = SolutionKind::Confluent;
      s.q1 = s.q2 = Complex(0.0, 0.0);
      break;
    }
  }
  return s;
}

}  // namespace

Polynomial bethe_polynomial(const ChainParams& params, const MomentumClass& cls) {
  params.validate();
  if (params.J == 0.0) throw PreconditionError("bethe_polynomial: J must be nonzero");
  const int N = params.N;
  if (2 * cls.n == N) {
    // alpha_n = -1: order drops to N-2, z^{N-2} + 1 = 0
    Polynomial p(N - 1, Complex(0.0));
    p.front() = Complex(1.0);
    p.back() = Complex(1.0);
    return p;
  }
  const Complex alpha = cls.alpha();
  const double gamma = params.gamma();
  Polynomial p(N + 1, Complex(0.0));
  p[0] = 1.0 + alpha;
  p[1] = Complex(-gamma);
  p[N - 1] = gamma * alpha;
  p[N] = -(1.0 + alpha);
  return p;
}

BetheSolution assemble_solution(Complex z, const MomentumClass& cls, const ChainParams& params) {
  params.validate();
  if (params.J == 0.0) throw PreconditionError("assemble_solution: J must be nonzero");
  if (params.gamma() == 0.0)
    throw UseFreeProtocol("assemble_solution: gamma = 0, use the free protocol");
  if (std::abs(z) <= 1e-12) throw PreconditionError("assemble_solution: z = 0 is not meaningful");

  Core c = make_regular_core(z, cls.n, params);
  const double dk_re = wrap_pm_pi((c.k1 - c.k2).real());
  const double dk_im = (c.k1 - c.k2).imag();
  if (std::abs(dk_re) <= 1e-8 && std::abs(dk_im) <= 1e-8)
    throw PreconditionError("assemble_solution: equal momenta k1 = k2, solution discarded");
  return solution_from_core(c, params);
}

std::vector<BetheSolution> free_spectrum(const ChainParams& params) {
  params.validate();
  if (params.U != 0.0) throw PreconditionError("free_spectrum: requires U = 0");
  if (params.J == 0.0) throw PreconditionError("free_spectrum: requires J != 0");
  const int N = params.N;
  std::vector<BetheSolution> out;
  out.reserve(pair_count(N));
  for (int j1 = 1; j1 < N; ++j1)
    for (int j2 = j1 + 1; j2 <= N; ++j2) {
      BetheSolution s;
      s.k1 = Complex(2.0 * pi * j1 / N, 0.0);
      s.k2 = Complex(2.0 * pi * j2 / N, 0.0);
      s.q1 = Complex(1.0 / N, 0.0);
      s.q2 = Complex(-1.0 / N, 0.0);
      s.E = 2.0 * params.J * (std::cos(s.k1.real()) + std::cos(s.k2.real()));
      s.kind = SolutionKind::Free;
      s.momentum_class = (j1 + j2) % N;
      out.push_back(s);
    }
  return out;
}

std::optional<BetheSolution> paired_even_state(const ChainParams& params) {
  params.validate();
  if (params.N % 2 != 0 || params.U == 0.0) return std::nullopt;
  BetheSolution s;
  s.k1 = s.k2 = Complex(pi, 0.0);
  s.q1 = s.q2 = Complex(1.0 / std::sqrt(double(params.N)), 0.0);
  s.E = params.U;
  s.kind = SolutionKind::PairedEven;
  s.momentum_class = params.N / 2;
  return s;
}

std::vector<BetheSolution> enumerate_spectrum(const ChainParams& params) {
  params.validate();
  if (params.J == 0.0) throw PreconditionError("enumerate_spectrum: requires J != 0");
  if (params.gamma() == 0.0) return free_spectrum(params);

  std::vector<BetheSolution> out;
  std::map<int, int> per_class;
  for (int n = 0; n < params.N; ++n) {
    for (const Core& c : class_cores(params, n)) {
      out.push_back(solution_from_core(c, params));
      ++per_class[n];
    }
  }
  if (auto pe = paired_even_state(params)) {
    out.push_back(*pe);
    ++per_class[pe->momentum_class];
  }

  const auto expected = pair_count(params.N);
  if (static_cast<std::int64_t>(out.size()) != expected) {
    std::ostringstream msg;
    msg << "enumerate_spectrum: expected " << expected << " solutions, got " << out.size()
        << " (N=" << params.N << ", U=" << params.U << ", J=" << params.J << "); per class:";
    for (const auto& [n, cnt] : per_class) msg << " n" << n << "=" << cnt;
    throw StructuralError(msg.str());
  }

  std::sort(out.begin(), out.end(), [](const BetheSolution& a, const BetheSolution& b) {
    if (a.E != b.E) return a.E < b.E;
    if (a.momentum_class != b.momentum_class) return a.momentum_class < b.momentum_class;
    return a.k1.real() < b.k1.real();
  });
  return out;
}

double energy(Complex k1, Complex k2, double J) { return core_energy(k1, k2, J); }

namespace {

BetheSolution ground_from_cores(const ChainParams& params, const std::vector<Core>& cores) {
  if (cores.empty()) throw StructuralError("ground_state: empty spectrum");
  const Core* best = &cores[0];
  for (const Core& c : cores)
    if (c.E < best->E) best = &c;
  for (const Core& c : cores)
    if (&c != best && std::abs(c.E - best->E) <= 1e-12)
      throw DegeneracyError("ground_state: degenerate minimum within 1e-12 (E = " +
                            std::to_string(best->E) + ")");
  return solution_from_core(*best, params);
}

}  // namespace

BetheSolution ground_state(const ChainParams& params, GroundSearch search) {
  params.validate();
  if (params.N % 2 == 0)
    throw PreconditionError("ground_state: even N unsupported (complex/degenerate ground state)");
  if (params.J == 0.0) throw PreconditionError("ground_state: requires J != 0");

  if (params.gamma() == 0.0) {
    auto all = free_spectrum(params);
    auto it = std::min_element(all.begin(), all.end(),
                               [](const auto& a, const auto& b) { return a.E < b.E; });
    for (const auto& s : all)
      if (&s != &*it && std::abs(s.E - it->E) <= 1e-12)
        throw DegeneracyError("ground_state: degenerate free minimum");
    return *it;
  }

  std::vector<int> classes;
  if (search == GroundSearch::Heuristic && params.N > 23) {
    // winner classes from a cheap scan at a smaller odd size, rescaled
    const int Ns = 21;
    ChainParams small(Ns, params.J, params.U);
    auto small_cores = all_cores(small);
    const Core* best = &small_cores[0];
    for (const Core& c : small_cores)
      if (c.E < best->E) best = &c;
    const int center = static_cast<int>(std::lround(double(best->cls) * params.N / Ns));
    for (int d = -2; d <= 2; ++d) classes.push_back(((center + d) % params.N + params.N) % params.N);
    classes.push_back(0);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  } else {
    classes.resize(params.N);
    for (int n = 0; n < params.N; ++n) classes[n] = n;
  }

  std::vector<Core> cores;
  for (int n : classes) {
    auto cc = class_cores(params, n);
    cores.insert(cores.end(), cc.begin(), cc.end());
  }
  return ground_from_cores(params, cores);
}

double energy_gap(const ChainParams& params) {
  params.validate();
  if (params.N % 2 == 0) throw PreconditionError("energy_gap: odd N required");
  if (params.J == 0.0) throw PreconditionError("energy_gap: requires J != 0");

  std::vector<double> energies;
  if (params.gamma() == 0.0) {
    for (const auto& s : free_spectrum(params)) energies.push_back(s.E);
  } else {
    for (const Core& c : all_cores(params)) energies.push_back(c.E);
  }
  std::sort(energies.begin(), energies.end());
  if (energies.size() < 2) throw StructuralError("energy_gap: spectrum too small");
  return energies[1] - energies[0];
}

}  // namespace bethe
