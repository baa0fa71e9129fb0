// varkernel command-line benchmarks. Writes CSV to stdout or --out.
//
// Exit codes: 0 success, 2 invalid arguments, 3 numerical or runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varkernel/varkernel.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitFailure = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
};

int exit_code(vk_status s) {
  return (s == VK_ERR_INPUT || s == VK_ERR_CAPABILITY) ? kExitValidation : kExitFailure;
}

int report_error(vk_status s) {
  std::cerr << "varkernel: " << vk_last_error() << '\n';
  return exit_code(s);
}

template <typename Cfg>
int execute(const Globals& g, const Cfg& cfg, vk_status (*check)(const Cfg*), vk_status (*run)(const Cfg*, vk_report**)) {
  if (vk_status s = check(&cfg); s != VK_OK) return report_error(s);
  if (vk_status s = vk_set_threads(g.threads); s != VK_OK) return report_error(s);
  vk_report* report = nullptr;
  if (vk_status s = run(&cfg, &report); s != VK_OK) return report_error(s);
  const std::string csv = vk_report_csv(report);
  vk_report_free(report);
  if (g.out.empty() || g.out == "-") {
    std::cout << csv << std::flush;
    return std::cout ? 0 : kExitFailure;
  }
  std::ofstream file(g.out, std::ios::binary | std::ios::trunc);
  file << csv;
  file.close();
  if (!file) {
    std::cerr << "varkernel: cannot write " << g.out << '\n';
    return kExitFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank kernel approximation over algebraic varieties: benchmarks emitting CSV"};
  app.set_version_flag("--version", std::string(vk_version()));
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output CSV path (default: standard output)");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();

  std::string variety, kernel = "gaussian:sigma=1", verify = "none", method = "cheb";

  vk_hilbert_config hil;
  vk_hilbert_config_init(&hil);
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function table");
  hilbert->add_option("--variety", variety, "Variety, e.g. trig:d=100")->required();
  hilbert->add_option("--n-max", hil.n_max, "Largest degree")->capture_default_str();
  hilbert->add_option("--verify", verify, "Cross-checks: none, monomials, rank, both")->capture_default_str();

  vk_approx_config apx;
  vk_approx_config_init(&apx);
  auto* approx = app.add_subcommand("approx", "Low-rank kernel approximation on a variety");
  approx->add_option("--variety", variety, "Variety")->required();
  approx->add_option("--kernel", kernel, "Kernel, e.g. gaussian:sigma=1")->capture_default_str();
  approx->add_option("--eps", apx.eps, "Target accuracy")->capture_default_str();
  approx->add_option("--method", method, "taylor, cheb or nystrom")->capture_default_str();
  approx->add_option("--rank", apx.rank, "Landmarks (nystrom) or rank cap (taylor)");
  approx->add_option("--audit-pairs", apx.audit_pairs, "Sampled pairs for the error audit")->capture_default_str();
  approx->add_option("--jitter", apx.jitter, "Nystrom diagonal jitter")->capture_default_str();

  vk_rff_bench_config rfc;
  vk_rff_bench_config_init(&rfc);
  std::vector<int> ranks{64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384};
  auto* rff = app.add_subcommand("rff-bench", "Random Fourier feature error profile");
  rff->add_option("--variety", variety, "Variety")->required();
  rff->add_option("--kernel", kernel, "Kernel (gaussian)")->capture_default_str();
  rff->add_option("--ranks", ranks, "Comma-separated ranks")->delimiter(',');
  rff->add_option("--pairs", rfc.pairs, "Sampled pairs")->capture_default_str();
  rff->add_option("--eps", rfc.eps, "Truncation accuracy")->capture_default_str();

  vk_fekete_config fek;
  vk_fekete_config_init(&fek);
  auto* fekete = app.add_subcommand("fekete", "Approximate Fekete norming set and slack audit");
  fekete->add_option("--variety", variety, "Variety")->required();
  fekete->add_option("--n", fek.n, "Polynomial degree")->capture_default_str();
  fekete->add_option("--a", fek.a, "Tensoring power")->capture_default_str();
  fekete->add_option("--trials", fek.trials, "Random polynomials")->capture_default_str();
  fekete->add_option("--candidates", fek.candidates, "Candidate points (0 = 10 * hf(a n))")->capture_default_str();
  fekete->add_option("--sup-sample", fek.sup_sample, "Fresh points for the sup")->capture_default_str();

  vk_fig1_config f1;
  vk_fig1_config_init(&f1);
  auto* fig1 = app.add_subcommand("fig1", "Taylor features on a variety vs Nystrom");
  fig1->add_option("--d", f1.d, "Ambient dimension")->capture_default_str();
  fig1->add_option("--k", f1.k, "Sparsity")->capture_default_str();
  fig1->add_option("--sigma", f1.sigma, "Gaussian bandwidth")->capture_default_str();
  fig1->add_option("--jitter", f1.jitter, "Nystrom jitter")->capture_default_str();
  fig1->add_option("--runs", f1.runs, "Nystrom runs averaged")->capture_default_str();
  fig1->add_option("--pairs", f1.pairs, "Audit pairs")->capture_default_str();
  fig1->add_option("--n-max", f1.n_max, "Largest Taylor degree")->capture_default_str();

  vk_fig2_config f2;
  vk_fig2_config_init(&f2);
  std::vector<int> k_list{1, 2, 4}, d_list{32, 64, 128};
  auto* fig2 = app.add_subcommand("fig2", "RFF error distribution over sparse data");
  fig2->add_option("--k-list", k_list, "Sparsities")->delimiter(',');
  fig2->add_option("--d-list", d_list, "Dimensions")->delimiter(',');
  fig2->add_option("--ranks", ranks, "Ranks")->delimiter(',');
  fig2->add_option("--pairs", f2.pairs, "Sampled pairs")->capture_default_str();
  fig2->add_option("--eps", f2.eps, "Truncation accuracy")->capture_default_str();
  fig2->add_option("--sigma", f2.sigma, "Gaussian bandwidth")->capture_default_str();

  vk_fig3_config f3;
  vk_fig3_config_init(&f3);
  auto* fig3 = app.add_subcommand("fig3", "Hilbert function vs ambient dimension count");
  fig3->add_option("--n-max", f3.n_max, "Largest degree")->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (hilbert->parsed()) {
    hil.variety = variety.c_str();
    hil.verify = verify.c_str();
    hil.seed = g.seed;
    return execute(g, hil, vk_validate_hilbert, vk_run_hilbert);
  }
  if (approx->parsed()) {
    apx.variety = variety.c_str();
    apx.kernel = kernel.c_str();
    apx.method = method.c_str();
    apx.seed = g.seed;
    return execute(g, apx, vk_validate_approx, vk_run_approx);
  }
  if (rff->parsed()) {
    rfc.variety = variety.c_str();
    rfc.kernel = kernel.c_str();
    rfc.ranks = ranks.data();
    rfc.rank_count = ranks.size();
    rfc.seed = g.seed;
    return execute(g, rfc, vk_validate_rff_bench, vk_run_rff_bench);
  }
  if (fekete->parsed()) {
    fek.variety = variety.c_str();
    fek.seed = g.seed;
    return execute(g, fek, vk_validate_fekete, vk_run_fekete);
  }
  if (fig1->parsed()) {
    f1.seed = g.seed;
    return execute(g, f1, vk_validate_fig1, vk_run_fig1);
  }
  if (fig2->parsed()) {
    f2.k_list = k_list.data();
    f2.k_count = k_list.size();
    f2.d_list = d_list.data();
    f2.d_count = d_list.size();
    f2.ranks = ranks.data();
    f2.rank_count = ranks.size();
    f2.seed = g.seed;
    return execute(g, f2, vk_validate_fig2, vk_run_fig2);
  }
  return execute(g, f3, vk_validate_fig3, vk_run_fig3);
}
