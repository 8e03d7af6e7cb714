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

#ifndef POSMAP_POSITIVITY_HPP
#define POSMAP_POSITIVITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posmap/bipartite.hpp"
#include "posmap/cmatrix.hpp"

namespace posmap {

// Verdict vocabulary. Block positivity is NP-hard in general, so the split
// between certificates and heuristic passes is part of the public contract:
// callers can never mistake a search that found nothing for a proof.
enum class Status {
  certified_yes,
  certified_no,
  no_violation_found,
  inconclusive,
};
const char* to_string(Status s);

struct SearchParams {
  int restarts = 64;
  int max_iters = 200;
  double improve_tol = 1e-12;  // stop when a sweep improves less than this
  std::uint64_t seed = 0;
};

// Minimum of <f (x) g, C f (x) g> over unit product vectors, by alternating
// lowest-eigenvector updates. Deterministic given the seed; per-restart
// substreams derive from (seed, restart index).
struct ProductSearchResult {
  double value = 0.0;
  CMatrix f, g;  // unit vectors achieving `value`
  int restarts_used = 0;
  bool converged = false;
};
ProductSearchResult min_product_expectation(const BipartiteOperator& c,
                                            const SearchParams& params = {});

// One classified property with its witness data.
struct Verdict {
  std::string property;
  Status status = Status::inconclusive;
  double value = 0.0;
  std::vector<std::pair<std::string, CMatrix>> witness;
};

// certified_no with a product-vector witness when the search dips below -tol;
// certified_yes only via the PSD sufficient condition; no_violation_found
// otherwise.
Verdict is_block_positive(const BipartiteOperator& c, double tol = 1e-9,
                          const SearchParams& params = {});

// Minimum of <v, C v> over unit vectors of Schmidt rank at most k, by exact
// alternating block updates (each block solves a generalized eigenproblem on
// the support of its Gram matrix). k = min(d1,d2) spans the whole sphere.
struct SchmidtSearchResult {
  double value = 0.0;
  std::vector<CMatrix> fs, gs;
  CMatrix v;  // the assembled unit vector
  int restarts_used = 0;
  bool converged = false;
};
SchmidtSearchResult k_positivity_min(const BipartiteOperator& c, std::size_t k,
                                     const SearchParams& params = {});

// Certified either way from the Choi spectrum; the eigenvector of the most
// negative eigenvalue is attached as witness on failure.
Verdict is_cp(const BipartiteOperator& c, double tol = 1e-9);
Verdict is_co_cp(const BipartiteOperator& c, double tol = 1e-9);

// Choi-level split C = P + Q^Gamma with P, Q PSD.
struct DecompositionCertificate {
  BipartiteOperator p, q;
  double residual = 0.0;  // max-entry of C - (P + Q^Gamma)
};

struct DecomposeResult {
  Status status = Status::inconclusive;  // certified_yes or inconclusive
  std::optional<DecompositionCertificate> certificate;
  int iterations = 0;
  double residual = 0.0;
};

// Dykstra-style alternating projections between the affine set
// {(P,Q): P + Q^Gamma = C} and the product of PSD cones. Exhaustion is
// reported as inconclusive: this method carries no separating certificate.
DecomposeResult decompose(const BipartiteOperator& c, int max_iters = 5000,
                          double tol = 1e-8);

struct MembershipOptions {
  double tol_alpha = 0.05;   // half-width of the alpha acceptance window
  double trace_tol = 1e-8;   // |Tr C - n| gate (set D only)
  double gate_tol = 1e-6;    // slack in the Tr C <= n*alpha(C) sanity gate
  SearchParams bp_search;
  int alpha_restarts = 16;
  int alpha_iters = 80;
};

struct MembershipReport {
  Status status = Status::inconclusive;
  bool hermitian = false;
  Verdict block_positive;
  double alpha_estimate = 0.0;  // certified lower estimate of alpha
  double alpha_upper = 0.0;     // crude certified upper bound
  double alpha_window_lo = 0.0, alpha_window_hi = 0.0;
  bool alpha_in_window = false;
  double trace_value = 0.0;
  bool trace_ok = true;  // only constrained for membership_D
  bool trace_alpha_gate = false;  // Tr C <= n*alpha + gate_tol
};

// Membership in the set of alpha-normalized Hermitian block-positive
// matrices, and in its trace-n subset.
MembershipReport membership_D0(const BipartiteOperator& c,
                               const MembershipOptions& opts = {});
MembershipReport membership_D(const BipartiteOperator& c,
                              const MembershipOptions& opts = {});

struct ClassifyOptions {
  double tol = 1e-9;
  std::size_t k_max = 0;  // 0: min(d1,d2)
  SearchParams search;
  int decompose_iters = 5000;
  double decompose_tol = 1e-8;
  MembershipOptions membership;
};

// Full property sweep used by the CLI: block positivity, k-positivity for
// k = 1..k_max, CP, co-CP, decomposability, and set membership.
std::vector<Verdict> classify_choi(const BipartiteOperator& c,
                                   const ClassifyOptions& opts = {});

}  // namespace posmap

#endif  // POSMAP_POSITIVITY_HPP
