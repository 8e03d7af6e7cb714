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

#include "posmap/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "posmap/linalg.hpp"
#include "posmap/rng.hpp"
#include "posmap/tensor_norms.hpp"

namespace posmap {
namespace {

// A_g[i,j] = sum_kl conj(g[k]) C[(i,k),(j,l)] g[l]; the d1 x d1 compression
// of C along a fixed second-factor vector.
CMatrix compress_second(const BipartiteOperator& c, const CMatrix& g) {
  const std::size_t d1 = c.d1, d2 = c.d2;
  CMatrix out(d1, d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < d2; ++k) {
        const cplx gk = std::conj(g[k]);
        if (gk == 0.0) continue;
        for (std::size_t l = 0; l < d2; ++l)
          s += gk * c.mat(i * d2 + k, j * d2 + l) * g[l];
      }
      out(i, j) = s;
    }
  return out;
}

// B_f[k,l] = sum_ij conj(f[i]) C[(i,k),(j,l)] f[j].
CMatrix compress_first(const BipartiteOperator& c, const CMatrix& f) {
  const std::size_t d1 = c.d1, d2 = c.d2;
  CMatrix out(d2, d2);
  for (std::size_t k = 0; k < d2; ++k)
    for (std::size_t l = 0; l < d2; ++l) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < d1; ++i) {
        const cplx fi = std::conj(f[i]);
        if (fi == 0.0) continue;
        for (std::size_t j = 0; j < d1; ++j)
          s += fi * c.mat(i * d2 + k, j * d2 + l) * f[j];
      }
      out(k, l) = s;
    }
  return out;
}

double product_value(const BipartiteOperator& c, const CMatrix& f, const CMatrix& g) {
  const CMatrix a = compress_second(c, g);
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.rows(); ++j)
      s += std::conj(f[i]) * a(i, j) * f[j];
  return s.real();
}

void check_bipartite_hermitian(const BipartiteOperator& c, const char* where) {
  if (c.mat.hermiticity_defect() > kHermTol) {
    throw NotHermitian(std::string(where) + ": Choi matrix fails the Hermiticity gate");
  }
}

// Orthonormalize the span of `vecs` through the Gram spectrum; directions
// with Gram eigenvalue <= tol are dropped.
std::vector<CMatrix> gram_orthonormalize(const std::vector<CMatrix>& vecs, double tol) {
  const std::size_t k = vecs.size();
  CMatrix gram(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) gram(a, b) = dot(vecs[a], vecs[b]);
  const auto eig = herm_eig(gram);
  std::vector<CMatrix> out;
  const double cutoff = std::max(tol, tol * (eig.eigenvalues.empty() ? 1.0 : eig.eigenvalues.front()));
  for (std::size_t t = 0; t < k; ++t) {
    const double gamma = eig.eigenvalues[t];
    if (gamma <= cutoff) continue;
    CMatrix w(vecs.front().rows(), 1);
    const double scale = 1.0 / std::sqrt(gamma);
    for (std::size_t j = 0; j < k; ++j) {
      const cplx coeff = eig.eigenvectors(j, t) * scale;
      for (std::size_t i = 0; i < w.rows(); ++i) w[i] += coeff * vecs[j][i];
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::certified_yes: return "certified-yes";
    case Status::certified_no: return "certified-no";
    case Status::no_violation_found: return "no-violation-found";
    case Status::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ProductSearchResult min_product_expectation(const BipartiteOperator& c,
                                            const SearchParams& params) {
  check_bipartite_hermitian(c, "min_product_expectation");
  const std::size_t d1 = c.d1, d2 = c.d2;

  ProductSearchResult best;
  bool have_best = false;
  for (int r = 0; r < params.restarts; ++r) {
    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
    CMatrix g(d2, 1);
    if (r == 0) {
      g[0] = 1.0;
    } else {
      g = rng.unit_vector(d2);
    }
    CMatrix f(d1, 1);
    f[0] = 1.0;

    double value = 0.0;
    bool converged = false;
    double prev = 0.0;
    for (int it = 0; it < params.max_iters; ++it) {
      auto [fval, fvec] = lowest_eigenpair(compress_second(c, g));
      f = std::move(fvec);
      auto [gval, gvec] = lowest_eigenpair(compress_first(c, f));
      g = std::move(gvec);
      value = gval;
      if (it > 0 && prev - value < params.improve_tol) {
        converged = true;
        break;
      }
      prev = value;
    }
    if (!have_best || value < best.value) {
      best.value = value;
      best.f = f;
      best.g = g;
      best.converged = converged;
      have_best = true;
    }
  }
  best.restarts_used = params.restarts;
  // Re-evaluate at the witness so the reported value is exactly the quadratic
  // form at (f, g).
  best.value = product_value(c, best.f, best.g);
  return best;
}

Verdict is_block_positive(const BipartiteOperator& c, double tol,
                          const SearchParams& params) {
  check_bipartite_hermitian(c, "is_block_positive");
  Verdict v;
  v.property = "block-positive";
  const double min_eig = psd_min_eig(c.mat);
  if (min_eig >= -tol) {
    // PSD is a certificate: the product cone sits inside the full cone.
    v.status = Status::certified_yes;
    v.value = min_eig;
    return v;
  }
  const auto search = min_product_expectation(c, params);
  v.value = search.value;
  if (search.value < -tol) {
    v.status = Status::certified_no;
    v.witness.emplace_back("f", search.f);
    v.witness.emplace_back("g", search.g);
  } else {
    v.status = Status::no_violation_found;
  }
  return v;
}

SchmidtSearchResult k_positivity_min(const BipartiteOperator& c, std::size_t k,
                                     const SearchParams& params) {
  check_bipartite_hermitian(c, "k_positivity_min");
  const std::size_t d1 = c.d1, d2 = c.d2;
  if (k < 1 || k > std::min(d1, d2)) {
    throw InvalidArgument("k_positivity_min: k must lie in [1, min(d1,d2)]");
  }

  // Exact minimization over one side: given orthonormal {g_t}, the optimal
  // blocks solve a standard eigenproblem for
  //   M[(t,i),(t',i')] = <e_i (x) g_t, C e_i' (x) g_t'>.
  const auto side_min = [&](const std::vector<CMatrix>& gs, bool second_factor)
      -> std::pair<double, std::vector<CMatrix>> {
    const std::size_t s = gs.size();
    const std::size_t df = second_factor ? d1 : d2;
    CMatrix m(s * df, s * df);
    for (std::size_t t = 0; t < s; ++t)
      for (std::size_t t2 = 0; t2 < s; ++t2) {
        CMatrix block(df, df);
        if (second_factor) {
          for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d1; ++j) {
              cplx acc = 0.0;
              for (std::size_t a = 0; a < d2; ++a)
                for (std::size_t b = 0; b < d2; ++b)
                  acc += std::conj(gs[t][a]) * c.mat(i * d2 + a, j * d2 + b) * gs[t2][b];
              block(i, j) = acc;
            }
        } else {
          for (std::size_t a = 0; a < d2; ++a)
            for (std::size_t b = 0; b < d2; ++b) {
              cplx acc = 0.0;
              for (std::size_t i = 0; i < d1; ++i)
                for (std::size_t j = 0; j < d1; ++j)
                  acc += std::conj(gs[t][i]) * c.mat(i * d2 + a, j * d2 + b) * gs[t2][j];
              block(a, b) = acc;
            }
        }
        for (std::size_t x = 0; x < df; ++x)
          for (std::size_t y = 0; y < df; ++y) m(t * df + x, t2 * df + y) = block(x, y);
      }
    auto [lam, vec] = lowest_eigenpair(m);
    std::vector<CMatrix> blocks;
    blocks.reserve(s);
    for (std::size_t t = 0; t < s; ++t) {
      CMatrix b(df, 1);
      for (std::size_t x = 0; x < df; ++x) b[x] = vec[t * df + x];
      blocks.push_back(std::move(b));
    }
    return {lam, blocks};
  };

  SchmidtSearchResult best;
  bool have_best = false;
  for (int r = 0; r < params.restarts; ++r) {
    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
    std::vector<CMatrix> gs;
    gs.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
      if (r == 0) {
        CMatrix e(d2, 1);
        e[t % d2] = 1.0;
        gs.push_back(std::move(e));
      } else {
        gs.push_back(rng.unit_vector(d2));
      }
    }

    std::vector<CMatrix> fs;
    double value = 0.0, prev = 0.0;
    bool converged = false;
    for (int it = 0; it < params.max_iters; ++it) {
      const auto gs_on = gram_orthonormalize(gs, 1e-14);
      if (gs_on.empty()) break;
      auto [fval, fblocks] = side_min(gs_on, true);
      fs = std::move(fblocks);
      gs = gs_on;

      const auto fs_on = gram_orthonormalize(fs, 1e-14);
      if (fs_on.empty()) break;
      auto [gval, gblocks] = side_min(fs_on, false);
      fs = fs_on;
      gs = std::move(gblocks);
      value = gval;
      if (it > 0 && prev - value < params.improve_tol) {
        converged = true;
        break;
      }
      prev = value;
    }
    if (!fs.empty() && (!have_best || value < best.value)) {
      best.value = value;
      best.fs = fs;
      best.gs = gs;
      best.converged = converged;
      have_best = true;
    }
  }
  best.restarts_used = params.restarts;

  // Assemble the witness vector and pin the value to the quadratic form.
  const std::size_t terms = std::min(best.fs.size(), best.gs.size());
  CMatrix v(d1 * d2, 1);
  for (std::size_t t = 0; t < terms; ++t)
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t a = 0; a < d2; ++a)
        v[i * d2 + a] += best.fs[t][i] * best.gs[t][a];
  const double nn = norm2(v);
  if (nn > 0.0) v *= cplx(1.0 / nn, 0.0);
  best.v = v;
  cplx quad = 0.0;
  for (std::size_t x = 0; x < v.rows(); ++x)
    for (std::size_t y = 0; y < v.rows(); ++y)
      quad += std::conj(v[x]) * c.mat(x, y) * v[y];
  best.value = quad.real();
  return best;
}

Verdict is_cp(const BipartiteOperator& c, double tol) {
  check_bipartite_hermitian(c, "is_cp");
  Verdict v;
  v.property = "cp";
  auto [lam, vec] = lowest_eigenpair(c.mat);
  v.value = lam;
  if (lam >= -tol) {
    v.status = Status::certified_yes;
  } else {
    v.status = Status::certified_no;
    v.witness.emplace_back("eigenvector", vec);
  }
  return v;
}

Verdict is_co_cp(const BipartiteOperator& c, double tol) {
  check_bipartite_hermitian(c, "is_co_cp");
  Verdict v = is_cp(partial_transpose(c, 2), tol);
  v.property = "co-cp";
  return v;
}

DecomposeResult decompose(const BipartiteOperator& c, int max_iters, double tol) {
  check_bipartite_hermitian(c, "decompose");
  const std::size_t d1 = c.d1, d2 = c.d2;

  const auto gamma = [&](const CMatrix& m) {
    return partial_transpose(BipartiteOperator(m, d1, d2), 2).mat;
  };

  // Endpoint pre-checks: a PSD input splits as (C, 0), a PSD partial
  // transpose as (0, C^Gamma). These cover the CP and co-CP cones exactly,
  // where the feasible set has empty interior and projections crawl.
  if (psd_min_eig(c.mat) >= -tol) {
    DecomposeResult result;
    result.status = Status::certified_yes;
    result.certificate = DecompositionCertificate{
        c, BipartiteOperator(CMatrix(c.mat.rows(), c.mat.cols()), d1, d2), 0.0};
    return result;
  }
  {
    const CMatrix flipped = gamma(c.mat);
    if (psd_min_eig(flipped) >= -tol) {
      DecomposeResult result;
      result.status = Status::certified_yes;
      const double residual = max_abs_diff(gamma(flipped), c.mat);
      result.certificate = DecompositionCertificate{
          BipartiteOperator(CMatrix(c.mat.rows(), c.mat.cols()), d1, d2),
          BipartiteOperator(flipped, d1, d2), residual};
      return result;
    }
  }

  // Dykstra between the affine set {P + Q^Gamma = C} (closed-form projection,
  // no correction term needed for affine sets) and the PSD cone product
  // (eigenvalue clipping, with correction).
  CMatrix p = c.mat;
  CMatrix q(c.mat.rows(), c.mat.cols());
  CMatrix inc_p(p.rows(), p.cols()), inc_q(p.rows(), p.cols());

  DecomposeResult result;
  for (int it = 0; it < max_iters; ++it) {
    const CMatrix tp = p + inc_p;
    const CMatrix tq = q + inc_q;
    CMatrix cp = psd_clip(tp);
    CMatrix cq = psd_clip(tq);
    inc_p = tp - cp;
    inc_q = tq - cq;

    const CMatrix defect = c.mat - cp - gamma(cq);
    const double residual = defect.max_abs();
    result.iterations = it + 1;
    result.residual = residual;
    if (residual <= tol) {
      result.status = Status::certified_yes;
      result.certificate = DecompositionCertificate{
          BipartiteOperator(std::move(cp), d1, d2),
          BipartiteOperator(std::move(cq), d1, d2), residual};
      return result;
    }

    // Orthogonal projection onto the affine set: split the defect evenly
    // between P and Q^Gamma.
    p = cp + 0.5 * defect;
    q = cq + 0.5 * gamma(defect);
  }
  result.status = Status::inconclusive;
  return result;
}

namespace {

MembershipReport membership_impl(const BipartiteOperator& c,
                                 const MembershipOptions& opts, bool need_trace_n) {
  if (c.d1 != c.d2) {
    throw DimensionError("membership: square bipartite input with d1 = d2 required");
  }
  const double n = static_cast<double>(c.d1);

  MembershipReport rep;
  rep.hermitian = c.mat.hermiticity_defect() <= kHermTol;
  rep.trace_value = c.mat.trace().real();
  rep.alpha_window_lo = 1.0 - opts.tol_alpha;
  rep.alpha_window_hi = 1.0 + opts.tol_alpha;

  if (!rep.hermitian) {
    rep.status = Status::certified_no;
    return rep;
  }

  rep.block_positive = is_block_positive(c, 1e-9, opts.bp_search);

  NormSearchParams alpha_params;
  alpha_params.restarts = opts.alpha_restarts;
  alpha_params.max_iters = opts.alpha_iters;
  alpha_params.seed = opts.bp_search.seed;
  const NormEstimate alpha = alpha_norm(c, alpha_params);
  rep.alpha_estimate = alpha.lower;
  rep.alpha_upper = alpha.upper;
  rep.alpha_in_window = rep.alpha_estimate >= rep.alpha_window_lo &&
                        rep.alpha_estimate <= rep.alpha_window_hi;
  rep.trace_alpha_gate =
      rep.trace_value <= n * rep.alpha_estimate + opts.gate_tol;

  if (need_trace_n) {
    rep.trace_ok = std::abs(rep.trace_value - n) <= opts.trace_tol;
  }

  if (rep.block_positive.status == Status::certified_no || !rep.trace_ok ||
      rep.alpha_estimate > rep.alpha_window_hi ||
      rep.alpha_upper < rep.alpha_window_lo) {
    rep.status = Status::certified_no;
  } else if (rep.alpha_in_window) {
    // Block positivity and the alpha value are search-based, never certified.
    rep.status = Status::no_violation_found;
  } else {
    rep.status = Status::inconclusive;
  }
  return rep;
}

}  // namespace

MembershipReport membership_D0(const BipartiteOperator& c,
                               const MembershipOptions& opts) {
  return membership_impl(c, opts, false);
}

MembershipReport membership_D(const BipartiteOperator& c,
                              const MembershipOptions& opts) {
  return membership_impl(c, opts, true);
}

std::vector<Verdict> classify_choi(const BipartiteOperator& c,
                                   const ClassifyOptions& opts) {
  check_bipartite_hermitian(c, "classify_choi");
  std::vector<Verdict> out;

  out.push_back(is_block_positive(c, opts.tol, opts.search));
  const Verdict cp = is_cp(c, opts.tol);
  const bool cp_yes = cp.status == Status::certified_yes;

  const std::size_t k_max =
      opts.k_max == 0 ? std::min(c.d1, c.d2) : std::min(opts.k_max, std::min(c.d1, c.d2));
  for (std::size_t k = 1; k <= k_max; ++k) {
    Verdict kv;
    kv.property = "k-positive(k=" + std::to_string(k) + ")";
    if (cp_yes) {
      kv.status = Status::certified_yes;
      kv.value = cp.value;
    } else {
      const auto search = k_positivity_min(c, k, opts.search);
      kv.value = search.value;
      if (search.value < -opts.tol) {
        kv.status = Status::certified_no;
        kv.witness.emplace_back("v", search.v);
      } else {
        kv.status = Status::no_violation_found;
      }
    }
    out.push_back(std::move(kv));
  }

  out.push_back(cp);
  out.push_back(is_co_cp(c, opts.tol));

  {
    Verdict dv;
    dv.property = "decomposable";
    const auto dec = decompose(c, opts.decompose_iters, opts.decompose_tol);
    dv.status = dec.status;
    dv.value = dec.residual;
    if (dec.certificate) {
      dv.witness.emplace_back("P", dec.certificate->p.mat);
      dv.witness.emplace_back("Q", dec.certificate->q.mat);
    }
    out.push_back(std::move(dv));
  }

  if (c.d1 == c.d2) {
    MembershipOptions mo = opts.membership;
    mo.bp_search = opts.search;
    const auto d0 = membership_D0(c, mo);
    Verdict v0;
    v0.property = "member-D0";
    v0.status = d0.status;
    v0.value = d0.alpha_estimate;
    out.push_back(std::move(v0));

    const auto d = membership_D(c, mo);
    Verdict v1;
    v1.property = "member-D";
    v1.status = d.status;
    v1.value = d.trace_value;
    out.push_back(std::move(v1));
  }
  return out;
}

}  // namespace posmap
