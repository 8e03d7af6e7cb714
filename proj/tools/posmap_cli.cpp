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

// posmap: positivity classifiers, tensor-norm estimates, entanglement
// mappings and Radon-Nikodym derivatives over a JSON matrix interchange
// format. stdout carries exactly one JSON document; diagnostics go to
// stderr. Exit codes: 0 success, 2 parse error, 3 dimension error, 4 input
// is not a state, 5 absolute continuity fails (the verdict is still
// emitted), 1 anything else.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "posmap/entangle.hpp"
#include "posmap/io.hpp"
#include "posmap/linalg.hpp"
#include "posmap/positivity.hpp"
#include "posmap/qmap.hpp"
#include "posmap/radon_nikodym.hpp"
#include "posmap/tensor_norms.hpp"

namespace {

using namespace posmap;
using Clock = std::chrono::steady_clock;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("POSMAP_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      std::cerr << "posmap: ignoring non-numeric POSMAP_SEED\n";
    }
  }
  return 0;
}

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

std::size_t perfect_root(std::size_t n) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) throw DimensionError("matrix size is not a perfect square");
  return r;
}

QMap load_map(const std::string& path, const std::string& rep) {
  if (rep == "kraus") {
    return QMap::from_kraus(read_kraus_file(path));
  }
  const MatrixRecord rec = read_matrix_file(path);
  if (rep == "superop") {
    const std::size_t dout = perfect_root(rec.mat.rows());
    const std::size_t din = perfect_root(rec.mat.cols());
    return QMap::from_superop(rec.mat, din, dout);
  }
  return QMap::from_choi(rec.to_bipartite());
}

int run_classify(const std::string& in, const std::string& rep, double tol,
                 int restarts, std::uint64_t seed, std::size_t k_max) {
  const auto start = Clock::now();
  const QMap map = load_map(in, rep);

  ClassifyOptions opts;
  opts.tol = tol;
  opts.k_max = k_max;
  opts.search.restarts = restarts;
  opts.search.seed = seed;
  opts.membership.bp_search = opts.search;

  ReportBuilder report(seed);
  report.add_tolerance("tol", tol);
  report.add_tolerance("decompose_tol", opts.decompose_tol);
  report.add_tolerance("alpha_window_halfwidth", opts.membership.tol_alpha);
  for (const auto& v : classify_choi(map.choi(), opts)) report.add_verdict(v);
  emit(report.finish(elapsed_ms(start)));
  return 0;
}

int run_analyze(const std::string& in, double tol, int samples, std::uint64_t seed) {
  const auto start = Clock::now();
  const MatrixRecord rec = read_matrix_file(in);
  if (!rec.d1 || !rec.d2) {
    throw DimensionError("analyze-state: input must carry d1 and d2");
  }
  const BipartiteOperator rho = rec.to_bipartite();

  const PptReport ppt = ppt_check(rho, tol);
  const auto ent = entanglement_operator(rho);
  const IdentityReport identity = verify_identity(ent, samples, seed);
  const double normalization =
      std::abs((ent.h.adjoint() * ent.h).trace().real() - rho.mat.trace().real());

  ReportBuilder report(seed);
  report.add_tolerance("tol", tol);
  report.add_verdict("ppt",
                     to_string(ppt.ppt ? Status::certified_yes : Status::certified_no),
                     ppt.route_a_min_eig,
                     {{"route_a_min_eig", ppt.route_a_min_eig},
                      {"route_b_cp", to_string(ppt.route_b_cp)},
                      {"route_b_co_cp", to_string(ppt.route_b_co_cp)},
                      {"routes_agree", ppt.routes_agree}});
  report.add_verdict("reconstruction-identity",
                     identity.max_residual <= 1e-9 ? "certified-yes" : "certified-no",
                     identity.max_residual,
                     {{"pairs_checked", identity.pairs_checked}});
  report.add_verdict("entanglement-operator-normalization",
                     normalization <= 1e-9 ? "certified-yes" : "certified-no",
                     normalization);
  report.add_verdict("reduced-states", "certified-yes", 0.0,
                     {{"on_first_factor", matrix_to_json(partial_trace(rho, 2))},
                      {"on_second_factor", matrix_to_json(partial_trace(rho, 1))}});
  emit(report.finish(elapsed_ms(start)));
  return 0;
}

json norm_entry(const NormEstimate& est) {
  json extra;
  extra["lower"] = est.lower;
  extra["upper"] = est.upper;
  extra["iterations"] = est.iterations;
  if (!est.lower_witness.empty())
    extra["lower_witness"] = witness_to_json(est.lower_witness);
  return extra;
}

int run_norms(const std::string& in, const std::string& which, int rmax,
              std::uint64_t seed) {
  const auto start = Clock::now();
  const MatrixRecord rec = read_matrix_file(in);
  BipartiteOperator u = rec.to_bipartite();

  NormSearchParams params;
  params.seed = seed;
  if (rmax != 0) {
    if (rmax < 1) throw InvalidArgument("norms: --rmax must be at least 1");
    params.r_max = rmax;
  }

  ReportBuilder report(seed);
  report.add_tolerance("interval_slack", 1e-9);
  if (which == "pi" || which == "all") {
    const auto est = pi_norm(u, params);
    report.add_verdict("pi-norm", "certified-yes", est.lower, norm_entry(est));
  }
  if (which == "epsilon" || which == "all") {
    const auto est = epsilon_norm(u, params);
    report.add_verdict("epsilon-norm", "certified-yes", est.lower, norm_entry(est));
  }
  if (which == "alpha" || which == "all") {
    const auto est = alpha_norm(u, params);
    report.add_verdict("alpha-norm", "certified-yes", est.lower, norm_entry(est));
  }
  if (which == "all") {
    const auto gap = duality_gap_report(u, u, params);
    report.add_verdict("duality-pairing",
                       gap.pairing_ok ? "certified-yes" : "certified-no",
                       gap.pairing_value, {{"bound", gap.pairing_bound}});
    report.add_verdict("duality-alpha-floor",
                       gap.lower_ok ? "certified-yes" : "certified-no",
                       gap.alpha_lower, {{"trace_over_n", gap.trace_over_n}});
    report.add_verdict("duality-trace-ceiling",
                       gap.upper_ok ? "certified-yes" : "certified-no",
                       gap.trace_value, {{"n_alpha", gap.n_alpha}});
  }
  emit(report.finish(elapsed_ms(start)));
  return 0;
}

int run_rn(const std::string& phi_path, const std::string& psi_path, double tol,
           std::uint64_t seed) {
  const auto start = Clock::now();
  const QMap phi = QMap::from_choi(read_matrix_file(phi_path).to_bipartite());
  const QMap psi = QMap::from_choi(read_matrix_file(psi_path).to_bipartite());

  const CacReport cac = cac_test(phi, psi, tol);
  ReportBuilder report(seed);
  report.add_tolerance("tol", tol);
  report.add_verdict("absolutely-continuous",
                     cac.absolutely_continuous ? "certified-yes" : "certified-no",
                     cac.off_support_mass, {{"support_rank", cac.support_rank}});
  if (!cac.absolutely_continuous) {
    emit(report.finish(elapsed_ms(start)));
    return 5;
  }

  const RNDerivative rn = rn_derivative(phi, psi, tol);
  const auto bound = domination_bound(phi, psi, tol);
  json extra;
  extra["derivative"] = matrix_to_json(rn.d);
  extra["support_rank"] = rn.support_rank;
  if (bound) extra["domination_bound"] = *bound;
  report.add_verdict(
      "rn-derivative",
      rn.reconstruction_residual <= 1e-8 ? "certified-yes" : "inconclusive",
      rn.reconstruction_residual, std::move(extra));
  emit(report.finish(elapsed_ms(start)));
  return 0;
}

int run_gen(const std::string& kind, std::uint64_t seed, const std::string& dims_flag,
            double p, int n) {
  std::size_t d1 = 2, d2 = 2;
  if (!dims_flag.empty()) {
    const auto comma = dims_flag.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgument("gen: --dims expects the form a,b");
    }
    try {
      d1 = std::stoul(dims_flag.substr(0, comma));
      d2 = std::stoul(dims_flag.substr(comma + 1));
    } catch (...) {
      throw InvalidArgument("gen: --dims expects the form a,b");
    }
    if (d1 < 1 || d2 < 1) throw DimensionError("gen: dimensions must be positive");
  }

  json out;
  if (kind == "state") {
    out = matrix_to_json(make_random_state(seed, d1, d2).mat, d1, d2);
  } else if (kind == "separable") {
    out = matrix_to_json(make_separable(seed, n, d1, d2).mat, d1, d2);
  } else if (kind == "werner") {
    if (d1 != 2 || d2 != 2) {
      throw DimensionError("gen: the Werner family lives on 2x2 factors");
    }
    out = matrix_to_json(werner_state(p).mat, 2, 2);
  } else if (kind == "cpmap") {
    const QMap chan = random_cp_channel(seed, d1, d2, n > 0 ? n : d1 * d2);
    out = matrix_to_json(chan.choi().mat, d1, d2);
  } else {
    throw InvalidArgument("gen: unknown kind " + kind);
  }
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positive maps, PPT states and tensor norms toolkit"};
  app.require_subcommand(1);

  std::string in, rep = "choi", which = "all", phi_path, psi_path, kind, dims_flag;
  double tol = 1e-9, rn_tol = 1e-10, p = 0.5;
  int restarts = 64, samples = 100, rmax = 0, n = 5;
  std::size_t k_max = 0;
  std::uint64_t seed = default_seed();

  auto* classify = app.add_subcommand("classify-map", "positivity class sweep");
  classify->add_option("--in", in)->required();
  classify->add_option("--rep", rep)->check(CLI::IsMember({"kraus", "choi", "superop"}));
  classify->add_option("--tol", tol);
  classify->add_option("--restarts", restarts);
  classify->add_option("--seed", seed);
  classify->add_option("--k", k_max);

  auto* analyze = app.add_subcommand("analyze-state", "PPT and entanglement mapping");
  analyze->add_option("--in", in)->required();
  analyze->add_option("--tol", tol);
  analyze->add_option("--samples", samples);
  analyze->add_option("--seed", seed);

  auto* norms = app.add_subcommand("norms", "projective/injective/dual norm intervals");
  norms->add_option("--in", in)->required();
  norms->add_option("--which", which)
      ->check(CLI::IsMember({"pi", "epsilon", "alpha", "all"}));
  norms->add_option("--rmax", rmax);
  norms->add_option("--seed", seed);

  auto* rn = app.add_subcommand("rn", "Radon-Nikodym derivative of CP maps");
  rn->add_option("--phi", phi_path)->required();
  rn->add_option("--psi", psi_path)->required();
  rn->add_option("--tol", rn_tol);
  rn->add_option("--seed", seed);

  auto* gen = app.add_subcommand("gen", "deterministic instance generator");
  gen->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"state", "separable", "cpmap", "werner"}));
  gen->add_option("--seed", seed);
  gen->add_option("--dims", dims_flag);
  gen->add_option("--p", p);
  gen->add_option("--n", n);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return run_classify(in, rep, tol, restarts, seed, k_max);
    if (analyze->parsed()) return run_analyze(in, tol, samples, seed);
    if (norms->parsed()) return run_norms(in, which, rmax, seed);
    if (rn->parsed()) return run_rn(phi_path, psi_path, rn_tol, seed);
    if (gen->parsed()) return run_gen(kind, seed, dims_flag, p, n);
  } catch (const ParseError& e) {
    std::cerr << "posmap: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "posmap: " << e.what() << "\n";
    return 3;
  } catch (const NotAState& e) {
    std::cerr << "posmap: " << e.what() << "\n";
    return 4;
  } catch (const NotAbsolutelyContinuous& e) {
    std::cerr << "posmap: " << e.what() << "\n";
    return 5;
  } catch (const Error& e) {
    std::cerr << "posmap: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
