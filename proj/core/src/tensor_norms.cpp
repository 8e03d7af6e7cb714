// Copyright 2026 The posmap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "posmap/tensor_norms.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "posmap/linalg.hpp"
#include "posmap/rng.hpp"

namespace posmap {
namespace {

struct Decomposition {
  std::vector<std::pair<CMatrix, CMatrix>> terms;
};

// Operator-Schmidt terms of the flattened element: realign so elementary
// tensors become rank-one, then SVD. Exact up to singular values below
// 1e-14 of the leading one.
Decomposition operator_schmidt(const BipartiteOperator& u) {
  const std::size_t n1 = u.d1, n2 = u.d2;
  CMatrix realigned(n1 * n1, n2 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t l = 0; l < n2; ++l)
          realigned(i * n1 + j, k * n2 + l) = u.mat(i * n2 + k, j * n2 + l);

  const Svd dec = svd(realigned);
  const double cutoff =
      dec.sigma.empty() ? 0.0 : 1e-14 * std::max(dec.sigma.front(), 1.0);

  Decomposition out;
  for (std::size_t s = 0; s < dec.sigma.size(); ++s) {
    if (dec.sigma[s] <= cutoff) break;
    CMatrix x(n1, n1), y(n2, n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j)
        x(i, j) = dec.sigma[s] * dec.u(i * n1 + j, s);
    for (std::size_t k = 0; k < n2; ++k)
      for (std::size_t l = 0; l < n2; ++l)
        y(k, l) = std::conj(dec.v(k * n2 + l, s));
    out.terms.emplace_back(std::move(x), std::move(y));
  }
  if (out.terms.empty()) {
    out.terms.emplace_back(CMatrix(n1, n1), CMatrix(n2, n2));
  }
  return out;
}

// Scale each term so the two factor norms match; leaves the represented
// element and the per-term norm product unchanged.
void rebalance(Decomposition& dec) {
  for (auto& [x, y] : dec.terms) {
    const double nx = operator_norm(x), ny = trace_norm(y);
    if (nx <= 0.0 || ny <= 0.0) continue;
    const double t = std::sqrt(ny / nx);
    x *= cplx(t, 0.0);
    y *= cplx(1.0 / t, 0.0);
  }
}

// Greedy coordinate descent over elementary GL mixings
//   x_i += eps * x_j,  y_j -= eps * y_i,
// which preserve the represented element exactly. Deterministic pass order;
// returns the final factor-norm sum.
double optimize_decomposition(Decomposition& dec, int passes) {
  rebalance(dec);
  const std::size_t r = dec.terms.size();
  std::vector<double> xnorm(r), ynorm(r);
  for (std::size_t i = 0; i < r; ++i) {
    xnorm[i] = operator_norm(dec.terms[i].first);
    ynorm[i] = trace_norm(dec.terms[i].second);
  }
  double current = 0.0;
  for (std::size_t i = 0; i < r; ++i) current += xnorm[i] * ynorm[i];
  if (r < 2) return current;

  const cplx palette[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  double step = 0.5;
  // Each pass scans all ordered term pairs; keep the total trial budget
  // roughly flat as the term count grows.
  if (r > 12) {
    passes = std::max(3, static_cast<int>(passes * 144.0 / static_cast<double>(r * r)));
  }
  for (int pass = 0; pass < passes; ++pass) {
    bool improved = false;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        if (i == j) continue;
        for (const cplx& dir : palette) {
          const cplx eps = dir * step;
          CMatrix xi = dec.terms[i].first + eps * dec.terms[j].first;
          CMatrix yj = dec.terms[j].second - eps * dec.terms[i].second;
          const double nxi = operator_norm(xi);
          const double nyj = trace_norm(yj);
          const double delta = nxi * ynorm[i] + xnorm[j] * nyj -
                               (xnorm[i] * ynorm[i] + xnorm[j] * ynorm[j]);
          if (delta < -1e-14 * std::max(current, 1.0)) {
            dec.terms[i].first = std::move(xi);
            dec.terms[j].second = std::move(yj);
            xnorm[i] = nxi;
            ynorm[j] = nyj;
            current += delta;
            improved = true;
          }
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < 1e-6) break;
    }
  }
  rebalance(dec);
  current = 0.0;
  for (const auto& [x, y] : dec.terms) current += operator_norm(x) * trace_norm(y);
  return current;
}

// Best decomposition seen: the optimized operator-Schmidt start, and the
// caller's own terms when the element came in decomposed form. r_max = 0
// means no cap; positive values below the operator-Schmidt rank are clamped
// up (an exact representation needs at least rank terms), values above it
// add zero terms the mixer can grow.
std::pair<double, TensorElement> best_decomposition(
    const BipartiteOperator& flat, const TensorElement* given,
    const NormSearchParams& params) {
  if (params.r_max < 0) {
    throw InvalidArgument("pi_norm: r_max must be at least 1 (or 0 for automatic)");
  }
  Decomposition dec = operator_schmidt(flat);
  while (params.r_max > 0 && dec.terms.size() < static_cast<std::size_t>(params.r_max)) {
    dec.terms.emplace_back(CMatrix(flat.d1, flat.d1), CMatrix(flat.d2, flat.d2));
  }
  double upper = optimize_decomposition(dec, params.opt_passes);
  TensorElement witness(dec.terms);

  if (given != nullptr) {
    Decomposition input{given->terms};
    const double input_obj = optimize_decomposition(input, params.opt_passes);
    if (input_obj < upper) {
      upper = input_obj;
      witness = TensorElement(input.terms);
    }
  }
  return {upper, std::move(witness)};
}

// Value of the elementary dual functional (a, b, U) on u:
//   sum_i <a| x_i |b> Tr(U y_i) = Tr[u (|b><a| (x) U)].
cplx functional_value(const BipartiteOperator& u, const CMatrix& a,
                      const CMatrix& b, const CMatrix& big_u) {
  const std::size_t n1 = u.d1, n2 = u.d2;
  cplx s = 0.0;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const cplx w = std::conj(a[i]) * b[j];
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t l = 0; l < n2; ++l)
          s += u.mat(i * n2 + k, j * n2 + l) * w * big_u(l, k);
    }
  return s;
}

struct DualAscentResult {
  double value = 0.0;
  CMatrix a, b, big_u;
  int iterations = 0;
};

// Alternating exact maximization of |Tr[u (|b><a| (x) U)]| over unit a, b and
// unitary U. Every block update is a closed-form maximizer, so the value is
// nondecreasing sweep over sweep.
DualAscentResult dual_functional_ascent(const BipartiteOperator& u,
                                        const NormSearchParams& params) {
  const std::size_t n1 = u.d1, n2 = u.d2;

  DualAscentResult best;
  bool have_best = false;
  for (int r = 0; r < params.restarts; ++r) {
    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
    CMatrix a(n1, 1), b(n1, 1);
    if (r == 0) {
      // Top singular pair of Tr_2[u]; exact for elementary tensors with a
      // trace-carrying second factor.
      const Svd dec = svd(partial_trace(u, 2));
      for (std::size_t i = 0; i < n1; ++i) {
        a[i] = dec.u(i, 0);
        b[i] = dec.v(i, 0);
      }
    } else {
      a = rng.unit_vector(n1);
      b = rng.unit_vector(n1);
    }
    CMatrix big_u = CMatrix::identity(n2);

    double value = 0.0, prev = -1.0;
    int it = 0;
    for (; it < params.max_iters; ++it) {
      // U-step: N[k,l] = sum_ij u[(i,k),(j,l)] conj(a[i]) b[j]; the
      // trace-norm maximizer lifts the value to |N|_tr.
      CMatrix n(n2, n2);
      for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t l = 0; l < n2; ++l) {
          cplx s = 0.0;
          for (std::size_t i = 0; i < n1; ++i) {
            const cplx ai = std::conj(a[i]);
            if (ai == 0.0) continue;
            for (std::size_t j = 0; j < n1; ++j)
              s += ai * b[j] * u.mat(i * n2 + k, j * n2 + l);
          }
          n(k, l) = s;
        }
      if (n.max_abs() > 0.0) big_u = trace_norm_maximizer(n);

      // a-step: value is <a, w> with w[i] = sum_jkl u[(ik),(jl)] b[j] U[l,k].
      CMatrix w(n1, 1);
      for (std::size_t i = 0; i < n1; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n1; ++j)
          for (std::size_t k = 0; k < n2; ++k)
            for (std::size_t l = 0; l < n2; ++l)
              s += u.mat(i * n2 + k, j * n2 + l) * b[j] * big_u(l, k);
        w[i] = s;
      }
      if (norm2(w) > 0.0) a = normalized(w);

      // b-step: value is z^T b with z[j] = sum_ikl u[(ik),(jl)] conj(a[i]) U[l,k].
      CMatrix z(n1, 1);
      for (std::size_t j = 0; j < n1; ++j) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n1; ++i)
          for (std::size_t k = 0; k < n2; ++k)
            for (std::size_t l = 0; l < n2; ++l)
              s += u.mat(i * n2 + k, j * n2 + l) * std::conj(a[i]) * big_u(l, k);
        z[j] = s;
      }
      if (norm2(z) > 0.0) b = normalized(z.conjugate());

      value = std::abs(functional_value(u, a, b, big_u));
      if (prev >= 0.0 && value - prev <= params.rel_tol * std::max(value, 1e-300)) {
        ++it;
        break;
      }
      prev = value;
    }
    if (!have_best || value > best.value) {
      best.value = value;
      best.a = a;
      best.b = b;
      best.big_u = big_u;
      best.iterations = it;
      have_best = true;
    }
  }
  return best;
}

// |tr(u)| via the swap contraction of the flat form; equals |sum Tr(x_i y_i)|.
double abs_trace_functional(const BipartiteOperator& flat) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < flat.d1; ++i)
    for (std::size_t k = 0; k < flat.d2; ++k)
      t += flat.mat(i * flat.d2 + k, k * flat.d2 + i);
  return std::abs(t);
}

NormEstimate pi_norm_impl(const BipartiteOperator& flat, const TensorElement* given,
                          const NormSearchParams& params) {
  auto [upper, witness] = best_decomposition(flat, given, params);

  // Lower bound by weak duality: elementary probe functionals have dual norm
  // at most one, so every value found is a valid floor; |tr(u)| <= pi(u) is
  // folded in as a deterministic probe when the factors share one dimension.
  const DualAscentResult ascent = dual_functional_ascent(flat, params);
  NormEstimate est;
  est.lower = ascent.value;
  est.iterations = ascent.iterations;
  est.lower_witness.emplace_back("a", ascent.a);
  est.lower_witness.emplace_back("b", ascent.b);
  est.lower_witness.emplace_back("U", ascent.big_u);
  if (flat.d1 == flat.d2) {
    est.lower = std::max(est.lower, abs_trace_functional(flat));
  }
  est.upper = std::max(upper, est.lower - 1e-12);
  est.upper_witness = std::move(witness);
  return est;
}

NormEstimate epsilon_norm_impl(const BipartiteOperator& flat,
                               const TensorElement* given,
                               const NormSearchParams& params) {
  const DualAscentResult ascent = dual_functional_ascent(flat, params);
  NormEstimate est;
  est.lower = ascent.value;
  est.iterations = ascent.iterations;
  est.lower_witness.emplace_back("a", ascent.a);
  est.lower_witness.emplace_back("b", ascent.b);
  est.lower_witness.emplace_back("U", ascent.big_u);

  // Decomposition sums dominate pi and hence epsilon; the two spectral
  // bounds |u|_tr and min(d1,d2)*|u|_op are cheap alternatives.
  auto [pi_upper, witness] = best_decomposition(flat, given, params);
  const double spectral = trace_norm(flat.mat);
  const double scaled_op =
      static_cast<double>(std::min(flat.d1, flat.d2)) * operator_norm(flat.mat);
  est.upper = std::min({pi_upper, spectral, scaled_op});
  est.upper = std::max(est.upper, est.lower - 1e-12);
  est.upper_witness = std::move(witness);
  return est;
}

}  // namespace

NormEstimate epsilon_norm(const BipartiteOperator& u, const NormSearchParams& params) {
  return epsilon_norm_impl(u, nullptr, params);
}

NormEstimate epsilon_norm(const TensorElement& u, const NormSearchParams& params) {
  return epsilon_norm_impl(u.flatten(), &u, params);
}

NormEstimate pi_norm(const BipartiteOperator& u, const NormSearchParams& params) {
  return pi_norm_impl(u, nullptr, params);
}

NormEstimate pi_norm(const TensorElement& u, const NormSearchParams& params) {
  return pi_norm_impl(u.flatten(), &u, params);
}

NormEstimate alpha_norm(const BipartiteOperator& rho, const NormSearchParams& params) {
  if (rho.d1 != rho.d2) {
    throw DimensionError("alpha_norm: square bipartite input with d1 = d2 required");
  }
  const std::size_t n = rho.d1;

  const auto m_matrix = [&](const CMatrix& c, const CMatrix& d) {
    // M[i,j] = sum_kl conj(d[k]) rho[(i,k),(j,l)] c[l]
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx dk = std::conj(d[k]);
          if (dk == 0.0) continue;
          for (std::size_t l = 0; l < n; ++l)
            s += dk * rho.mat(i * n + k, j * n + l) * c[l];
        }
        m(i, j) = s;
      }
    return m;
  };

  NormEstimate est;
  CMatrix best_c, best_d;
  int best_iters = 0;
  for (int r = 0; r < params.restarts; ++r) {
    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
    CMatrix c(n, 1), d(n, 1);
    if (static_cast<std::size_t>(r) < n) {
      // Diagonal starts c = d = e_r catch the compression structure of maps
      // that act as states along a ray.
      c[static_cast<std::size_t>(r)] = 1.0;
      d[static_cast<std::size_t>(r)] = 1.0;
    } else {
      c = rng.unit_vector(n);
      d = rng.unit_vector(n);
    }
    CMatrix v = CMatrix::identity(n);

    double value = 0.0, prev = -1.0;
    int it = 0;
    for (; it < params.max_iters; ++it) {
      // V-step: trace-norm maximizer of M(c,d).
      const CMatrix m = m_matrix(c, d);
      if (m.max_abs() > 0.0) v = trace_norm_maximizer(m);

      // c-step: value = Re(z^T c), z[l] = sum_ijk V[j,i] conj(d[k]) rho[(ik),(jl)].
      CMatrix z(n, 1);
      for (std::size_t l = 0; l < n; ++l) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
              s += v(j, i) * std::conj(d[k]) * rho.mat(i * n + k, j * n + l);
        z[l] = s;
      }
      if (norm2(z) > 0.0) c = normalized(z.conjugate());

      // d-step: value = <d, y>, y[k] = sum_ijl V[j,i] rho[(ik),(jl)] c[l].
      CMatrix y(n, 1);
      for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
              s += v(j, i) * rho.mat(i * n + k, j * n + l) * c[l];
        y[k] = s;
      }
      if (norm2(y) > 0.0) d = normalized(y);

      value = trace_norm(m_matrix(c, d));
      if (prev >= 0.0 && value - prev <= params.rel_tol * std::max(value, 1e-300)) {
        ++it;
        break;
      }
      prev = value;
    }
    if (value > est.lower) {
      est.lower = value;
      best_c = c;
      best_d = d;
      best_iters = it;
    }
  }

  // Deterministic probe a = 1 (x) 1: alpha >= |Tr rho| / pi(1) and pi(1) <= n.
  const double trace_probe = std::abs(rho.mat.trace()) / static_cast<double>(n);
  est.lower = std::max(est.lower, trace_probe);
  est.upper = std::max(trace_norm(rho.mat), est.lower - 1e-12);
  est.iterations = best_iters;
  if (best_c.rows() > 0) {
    est.lower_witness.emplace_back("c", best_c);
    est.lower_witness.emplace_back("d", best_d);
  }
  return est;
}

double alpha_quotient(const BipartiteOperator& rho, const BipartiteOperator& probe,
                      const NormSearchParams& params) {
  if (rho.dim() != probe.dim()) {
    throw DimensionError("alpha_quotient: probe dimension mismatch");
  }
  const double denom = pi_norm(probe, params).upper;
  if (denom <= 0.0) return 0.0;
  return std::abs((rho.mat * probe.mat).trace()) / denom;
}

DualityGapReport duality_gap_report(const BipartiteOperator& rho,
                                    const BipartiteOperator& u,
                                    const NormSearchParams& params, double slack) {
  DualityGapReport rep;
  const NormEstimate alpha = alpha_norm(rho, params);
  const NormEstimate pi = pi_norm(u, params);
  const double n = static_cast<double>(rho.d1);

  rep.pairing_value = std::abs((rho.mat * u.mat).trace());
  rep.pairing_bound = alpha.upper * pi.upper;
  rep.pairing_ok = rep.pairing_value <= rep.pairing_bound + slack;

  rep.alpha_lower = alpha.lower;
  rep.trace_over_n = std::abs(rho.mat.trace()) / n;
  rep.lower_ok = rep.alpha_lower >= rep.trace_over_n - slack;

  rep.trace_value = rho.mat.trace().real();
  rep.n_alpha = n * alpha.lower;
  rep.upper_ok = rep.trace_value <= rep.n_alpha + slack;
  return rep;
}

}  // namespace posmap
