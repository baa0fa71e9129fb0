#include "varkernel/varkernel.h"

#include <cstring>
#include <new>
#include <string>

#include "bench.hpp"
#include "hilbert.hpp"
#include "kernels.hpp"
#include "lowrank.hpp"
#include "norming.hpp"
#include "parallel.hpp"
#include "rff.hpp"
#include "varieties.hpp"

using namespace varkernel;

struct vk_variety {
  VarietySpec spec;
};
struct vk_kernel {
  IsotropicKernel kernel;
};
struct vk_factorization {
  LowRankFactorization f;
  int dim;
};
struct vk_rff_model {
  RffModel m;
};
struct vk_norming_set {
  NormingSet s;
};
struct vk_report {
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

vk_status fail(vk_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename F>
vk_status guard(F&& body) {
  try {
    body();
    return VK_OK;
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::input:
        return fail(VK_ERR_INPUT, e.what());
      case ErrorKind::capability:
        return fail(VK_ERR_CAPABILITY, e.what());
      case ErrorKind::degenerate:
        return fail(VK_ERR_DEGENERATE, e.what());
      case ErrorKind::numerical:
        return fail(VK_ERR_NUMERICAL, e.what());
    }
    return fail(VK_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VK_ERR_CAPABILITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(VK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VK_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw InputError(std::string(what) + " must not be NULL");
}

std::string str(const char* s, const char* what) {
  need(s, what);
  return s;
}

void copy_out(const std::string& s, char* buf, size_t len) {
  need(buf, "buf");
  if (len == 0) throw InputError("buffer length must be > 0");
  if (s.size() + 1 > len) throw InputError("buffer too small: need " + std::to_string(s.size() + 1) + " bytes");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

std::vector<int> ints(const int* p, size_t n, const char* what) {
  if (n > 0) need(p, what);
  return std::vector<int>(p, p + n);
}

Eigen::Map<const Eigen::VectorXd> vec(const double* p, int d) { return Eigen::Map<const Eigen::VectorXd>(p, d); }

HilbertConfig convert(const vk_hilbert_config* c) {
  need(c, "config");
  HilbertConfig h;
  h.variety = str(c->variety, "variety");
  h.n_max = c->n_max;
  h.verify = c->verify ? c->verify : "none";
  h.seed = c->seed;
  return h;
}

ApproxConfig convert(const vk_approx_config* c) {
  need(c, "config");
  ApproxConfig a;
  a.variety = str(c->variety, "variety");
  a.kernel = str(c->kernel, "kernel");
  a.eps = c->eps;
  a.method = str(c->method, "method");
  a.rank = c->rank;
  a.audit_pairs = c->audit_pairs;
  a.jitter = c->jitter;
  a.seed = c->seed;
  return a;
}

RffBenchConfig convert(const vk_rff_bench_config* c) {
  need(c, "config");
  RffBenchConfig r;
  r.variety = str(c->variety, "variety");
  r.kernel = str(c->kernel, "kernel");
  r.ranks = ints(c->ranks, c->rank_count, "ranks");
  r.pairs = c->pairs;
  r.eps = c->eps;
  r.seed = c->seed;
  return r;
}

FeketeConfig convert(const vk_fekete_config* c) {
  need(c, "config");
  FeketeConfig f;
  f.variety = str(c->variety, "variety");
  f.n = c->n;
  f.a = c->a;
  f.trials = c->trials;
  f.candidates = c->candidates;
  f.sup_sample = c->sup_sample;
  f.seed = c->seed;
  return f;
}

Fig1Config convert(const vk_fig1_config* c) {
  need(c, "config");
  Fig1Config f;
  f.d = c->d;
  f.k = c->k;
  f.sigma = c->sigma;
  f.jitter = c->jitter;
  f.runs = c->runs;
  f.pairs = c->pairs;
  f.n_max = c->n_max;
  f.seed = c->seed;
  return f;
}

Fig2Config convert(const vk_fig2_config* c) {
  need(c, "config");
  Fig2Config f;
  f.k_list = ints(c->k_list, c->k_count, "k_list");
  f.d_list = ints(c->d_list, c->d_count, "d_list");
  f.ranks = ints(c->ranks, c->rank_count, "ranks");
  f.pairs = c->pairs;
  f.eps = c->eps;
  f.sigma = c->sigma;
  f.seed = c->seed;
  return f;
}

Fig3Config convert(const vk_fig3_config* c) {
  need(c, "config");
  Fig3Config f;
  f.n_max = c->n_max;
  return f;
}

template <typename Cfg, typename Run>
vk_status run_report(const Cfg* c, vk_report** out, Run run) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    auto cfg = convert(c);
    *out = new vk_report{run(cfg).to_string()};
  });
}

template <typename Cfg>
vk_status run_validate(const Cfg* c) {
  return guard([&] { validate(convert(c)); });
}

}  // namespace

extern "C" {

const char* vk_version(void) { return kVersion; }
const char* vk_last_error(void) { return g_last_error.c_str(); }

vk_status vk_set_threads(unsigned threads) {
  return guard([&] { set_thread_count(threads); });
}

vk_status vk_variety_parse(const char* text, vk_variety** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new vk_variety{parse_variety(str(text, "text"))};
  });
}

void vk_variety_free(vk_variety* v) { delete v; }

vk_status vk_variety_dims(const vk_variety* v, int* ambient_dim, int* intrinsic_dim) {
  return guard([&] {
    need(v, "variety");
    if (ambient_dim) *ambient_dim = v->spec.ambient_dim;
    if (intrinsic_dim) *intrinsic_dim = v->spec.intrinsic_dim;
  });
}

vk_status vk_variety_name(const vk_variety* v, char* buf, size_t len) {
  return guard([&] {
    need(v, "variety");
    copy_out(v->spec.name, buf, len);
  });
}

vk_status vk_variety_hf(const vk_variety* v, int n, char* buf, size_t len) {
  return guard([&] {
    need(v, "variety");
    copy_out(varkernel::to_string(hf(v->spec, n).value), buf, len);
  });
}

vk_status vk_variety_hf_rank(const vk_variety* v, int n, uint64_t seed, int64_t* out) {
  return guard([&] {
    need(v, "variety");
    need(out, "out");
    *out = to_int64(hf_via_rank(v->spec, n, 4, seed).value, "rank");
  });
}

vk_status vk_variety_sample(const vk_variety* v, int count, uint64_t seed, double* out) {
  return guard([&] {
    need(v, "variety");
    need(out, "out");
    const PointSet pts = v->spec.sample(count, seed);
    std::memcpy(out, pts.data(), sizeof(double) * static_cast<size_t>(pts.size()));
  });
}

vk_status vk_kernel_parse(const char* text, int d, vk_kernel** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new vk_kernel{parse_kernel(str(text, "text"), d)};
  });
}

void vk_kernel_free(vk_kernel* k) { delete k; }

vk_status vk_kernel_eval(const vk_kernel* k, const double* x, const double* y, double* out) {
  return guard([&] {
    need(k, "kernel");
    need(x, "x");
    need(y, "y");
    need(out, "out");
    *out = k->kernel(vec(x, k->kernel.dim), vec(y, k->kernel.dim));
  });
}

vk_status vk_kernel_degree_for_eps(const vk_kernel* k, double eps, int* out) {
  return guard([&] {
    need(k, "kernel");
    need(out, "out");
    *out = degree_for_eps(k->kernel, eps);
  });
}

vk_status vk_approximate(const vk_kernel* k, const vk_variety* v, double eps, uint64_t seed, size_t audit_pairs,
                         vk_factorization** out) {
  return guard([&] {
    need(k, "kernel");
    need(v, "variety");
    need(out, "out");
    *out = nullptr;
    ApproximationResult res =
        approximate_on_variety(k->kernel, v->spec, eps, seed, AuditOptions{audit_pairs, derive_seed(seed, 1000)});
    *out = new vk_factorization{std::move(res.factorization), v->spec.ambient_dim};
  });
}

vk_status vk_taylor(const vk_variety* v, int n, double sigma, uint64_t seed, vk_factorization** out) {
  return guard([&] {
    need(v, "variety");
    need(out, "out");
    *out = nullptr;
    *out = new vk_factorization{taylor_on_variety(v->spec, n, sigma, seed), v->spec.ambient_dim};
  });
}

vk_status vk_nystrom(const vk_kernel* k, const double* landmarks, int count, double jitter, vk_factorization** out) {
  return guard([&] {
    need(k, "kernel");
    need(landmarks, "landmarks");
    need(out, "out");
    *out = nullptr;
    if (count < 1) throw InputError("count must be >= 1");
    const PointSet l = Eigen::Map<const Eigen::MatrixXd>(landmarks, k->kernel.dim, count);
    *out = new vk_factorization{nystrom(k->kernel, l, jitter), k->kernel.dim};
  });
}

void vk_factorization_free(vk_factorization* f) { delete f; }

vk_status vk_factorization_rank(const vk_factorization* f, int* out) {
  return guard([&] {
    need(f, "factorization");
    need(out, "out");
    *out = f->f.rank;
  });
}

vk_status vk_factorization_eval(const vk_factorization* f, const double* x, const double* y, double* out) {
  return guard([&] {
    need(f, "factorization");
    need(x, "x");
    need(y, "y");
    need(out, "out");
    *out = f->f(vec(x, f->dim), vec(y, f->dim));
  });
}

vk_status vk_factorization_certificate(const vk_factorization* f, double* measured, double* certified) {
  return guard([&] {
    need(f, "factorization");
    if (measured) *measured = f->f.certificate.measured_sup_error;
    if (certified) *certified = f->f.certificate.certified;
  });
}

vk_status vk_rff_build(const vk_kernel* k, int r, double eps, uint64_t seed, vk_rff_model** out) {
  return guard([&] {
    need(k, "kernel");
    need(out, "out");
    *out = nullptr;
    *out = new vk_rff_model{build_rff(k->kernel, r, eps, seed)};
  });
}

void vk_rff_free(vk_rff_model* m) { delete m; }

vk_status vk_rff_eval(const vk_rff_model* m, const double* x, const double* y, double* out) {
  return guard([&] {
    need(m, "model");
    need(x, "x");
    need(y, "y");
    need(out, "out");
    const int d = static_cast<int>(m->m.frequencies.cols());
    *out = m->m(vec(x, d), vec(y, d));
  });
}

vk_status vk_rff_info(const vk_rff_model* m, int* rank, double* threshold, double* rejection_fraction) {
  return guard([&] {
    need(m, "model");
    if (rank) *rank = m->m.rank();
    if (threshold) *threshold = m->m.truncation_threshold;
    if (rejection_fraction) *rejection_fraction = m->m.truncation_mass_estimate;
  });
}

vk_status vk_norming_build(const vk_variety* v, int n, int a, int candidates, uint64_t seed, vk_norming_set** out) {
  return guard([&] {
    need(v, "variety");
    need(out, "out");
    *out = nullptr;
    *out = new vk_norming_set{norming_set(v->spec, n, a, candidates, seed)};
  });
}

void vk_norming_free(vk_norming_set* s) { delete s; }

vk_status vk_norming_info(const vk_norming_set* s, int* size, double* certified_slack) {
  return guard([&] {
    need(s, "norming set");
    if (size) *size = static_cast<int>(s->s.size);
    if (certified_slack) *certified_slack = s->s.certified_slack;
  });
}

vk_status vk_norming_audit(const vk_norming_set* s, const vk_variety* v, int trials, int sup_sample, uint64_t seed,
                           double* empirical_slack) {
  return guard([&] {
    need(s, "norming set");
    need(v, "variety");
    need(empirical_slack, "empirical_slack");
    *empirical_slack = audit_slack(s->s, v->spec, s->s.target_degree, trials, sup_sample, seed).empirical;
  });
}

void vk_hilbert_config_init(vk_hilbert_config* c) {
  if (!c) return;
  const HilbertConfig d;
  *c = vk_hilbert_config{nullptr, d.n_max, nullptr, d.seed};
}

void vk_approx_config_init(vk_approx_config* c) {
  if (!c) return;
  const ApproxConfig d;
  *c = vk_approx_config{nullptr, nullptr, d.eps, nullptr, d.rank, d.audit_pairs, d.jitter, d.seed};
}

void vk_rff_bench_config_init(vk_rff_bench_config* c) {
  if (!c) return;
  const RffBenchConfig d;
  *c = vk_rff_bench_config{nullptr, nullptr, nullptr, 0, d.pairs, d.eps, d.seed};
}

void vk_fekete_config_init(vk_fekete_config* c) {
  if (!c) return;
  const FeketeConfig d;
  *c = vk_fekete_config{nullptr, d.n, d.a, d.trials, d.candidates, d.sup_sample, d.seed};
}

void vk_fig1_config_init(vk_fig1_config* c) {
  if (!c) return;
  const Fig1Config d;
  *c = vk_fig1_config{d.d, d.k, d.sigma, d.jitter, d.runs, d.pairs, d.n_max, d.seed};
}

void vk_fig2_config_init(vk_fig2_config* c) {
  if (!c) return;
  const Fig2Config d;
  *c = vk_fig2_config{nullptr, 0, nullptr, 0, nullptr, 0, d.pairs, d.eps, d.sigma, d.seed};
}

void vk_fig3_config_init(vk_fig3_config* c) {
  if (!c) return;
  *c = vk_fig3_config{Fig3Config{}.n_max};
}

vk_status vk_validate_hilbert(const vk_hilbert_config* c) { return run_validate(c); }
vk_status vk_validate_approx(const vk_approx_config* c) { return run_validate(c); }
vk_status vk_validate_rff_bench(const vk_rff_bench_config* c) { return run_validate(c); }
vk_status vk_validate_fekete(const vk_fekete_config* c) { return run_validate(c); }
vk_status vk_validate_fig1(const vk_fig1_config* c) { return run_validate(c); }
vk_status vk_validate_fig2(const vk_fig2_config* c) { return run_validate(c); }
vk_status vk_validate_fig3(const vk_fig3_config* c) { return run_validate(c); }

vk_status vk_run_hilbert(const vk_hilbert_config* c, vk_report** out) {
  return run_report(c, out, [](const HilbertConfig& x) { return cmd_hilbert(x); });
}
vk_status vk_run_approx(const vk_approx_config* c, vk_report** out) {
  return run_report(c, out, [](const ApproxConfig& x) { return cmd_approx(x); });
}
vk_status vk_run_rff_bench(const vk_rff_bench_config* c, vk_report** out) {
  return run_report(c, out, [](const RffBenchConfig& x) { return cmd_rff_bench(x); });
}
vk_status vk_run_fekete(const vk_fekete_config* c, vk_report** out) {
  return run_report(c, out, [](const FeketeConfig& x) { return cmd_fekete(x); });
}
vk_status vk_run_fig1(const vk_fig1_config* c, vk_report** out) {
  return run_report(c, out, [](const Fig1Config& x) { return cmd_fig1(x); });
}
vk_status vk_run_fig2(const vk_fig2_config* c, vk_report** out) {
  return run_report(c, out, [](const Fig2Config& x) { return cmd_fig2(x); });
}
vk_status vk_run_fig3(const vk_fig3_config* c, vk_report** out) {
  return run_report(c, out, [](const Fig3Config& x) { return cmd_fig3(x); });
}

const char* vk_report_csv(const vk_report* r) { return r ? r->csv.c_str() : nullptr; }
void vk_report_free(vk_report* r) { delete r; }

}  // extern "C"
