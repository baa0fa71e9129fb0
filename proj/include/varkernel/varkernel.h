/* varkernel: low-rank kernel approximation over algebraic varieties. C API.
 *
 * All functions return a vk_status. On failure the message is available from
 * vk_last_error() on the calling thread until the next failing call. Handles
 * are opaque and owned by the caller; release them with the matching _free.
 * Point arrays are column-major: point j occupies [j*d, (j+1)*d).
 */
#ifndef VARKERNEL_VARKERNEL_H
#define VARKERNEL_VARKERNEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(VARKERNEL_BUILDING_LIBRARY)
#define VK_API __attribute__((visibility("default")))
#else
#define VK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vk_status {
  VK_OK = 0,
  VK_ERR_INPUT = 1,      /* malformed arguments or violated preconditions */
  VK_ERR_CAPABILITY = 2, /* well-formed request outside supported scale or features */
  VK_ERR_DEGENERATE = 3, /* random sampling was degenerate; retry with another seed */
  VK_ERR_NUMERICAL = 4,  /* a numerical routine failed */
  VK_ERR_INTERNAL = 5
} vk_status;

typedef struct vk_variety vk_variety;
typedef struct vk_kernel vk_kernel;
typedef struct vk_factorization vk_factorization;
typedef struct vk_rff_model vk_rff_model;
typedef struct vk_norming_set vk_norming_set;
typedef struct vk_report vk_report;

VK_API const char* vk_version(void);
VK_API const char* vk_last_error(void);
/* 0 selects the hardware concurrency. */
VK_API vk_status vk_set_threads(unsigned threads);

/* Varieties: "full:d=3", "sphere:d=2", "sparse:d=20,k=1", "rank1:m1=2,m2=3",
 * "symrank1:m=3", "trig:d=6", "so3". */
VK_API vk_status vk_variety_parse(const char* text, vk_variety** out);
VK_API void vk_variety_free(vk_variety* v);
VK_API vk_status vk_variety_dims(const vk_variety* v, int* ambient_dim, int* intrinsic_dim);
/* Writes the canonical name, NUL-terminated, truncated to len. */
VK_API vk_status vk_variety_name(const vk_variety* v, char* buf, size_t len);
/* Hilbert function value as a decimal string (values may exceed 64 bits). */
VK_API vk_status vk_variety_hf(const vk_variety* v, int n, char* buf, size_t len);
/* Vandermonde-rank estimate of the Hilbert function. */
VK_API vk_status vk_variety_hf_rank(const vk_variety* v, int n, uint64_t seed, int64_t* out);
/* out has room for ambient_dim * count doubles. */
VK_API vk_status vk_variety_sample(const vk_variety* v, int count, uint64_t seed, double* out);

/* Kernels: "gaussian:sigma=1", "cauchy:sigma=1", over R^d. */
VK_API vk_status vk_kernel_parse(const char* text, int d, vk_kernel** out);
VK_API void vk_kernel_free(vk_kernel* k);
VK_API vk_status vk_kernel_eval(const vk_kernel* k, const double* x, const double* y, double* out);
/* Smallest Chebyshev degree whose measured sup error on [0, 4] is <= eps. */
VK_API vk_status vk_kernel_degree_for_eps(const vk_kernel* k, double eps, int* out);

/* Chebyshev route: fit the profile to eps and factor on a degree-2n design. */
VK_API vk_status vk_approximate(const vk_kernel* k, const vk_variety* v, double eps, uint64_t seed,
                                size_t audit_pairs, vk_factorization** out);
/* Taylor Features kernel of degree n, bandwidth sigma, exact rank hf(n). */
VK_API vk_status vk_taylor(const vk_variety* v, int n, double sigma, uint64_t seed, vk_factorization** out);
/* Nystrom with `count` landmarks (column-major, kernel dimension each). */
VK_API vk_status vk_nystrom(const vk_kernel* k, const double* landmarks, int count, double jitter,
                            vk_factorization** out);
VK_API void vk_factorization_free(vk_factorization* f);
VK_API vk_status vk_factorization_rank(const vk_factorization* f, int* out);
VK_API vk_status vk_factorization_eval(const vk_factorization* f, const double* x, const double* y, double* out);
/* Audited sup error (0 if not audited) and the a-priori certified value. */
VK_API vk_status vk_factorization_certificate(const vk_factorization* f, double* measured, double* certified);

VK_API vk_status vk_rff_build(const vk_kernel* k, int r, double eps, uint64_t seed, vk_rff_model** out);
VK_API void vk_rff_free(vk_rff_model* m);
VK_API vk_status vk_rff_eval(const vk_rff_model* m, const double* x, const double* y, double* out);
VK_API vk_status vk_rff_info(const vk_rff_model* m, int* rank, double* threshold, double* rejection_fraction);

VK_API vk_status vk_norming_build(const vk_variety* v, int n, int a, int candidates, uint64_t seed,
                                  vk_norming_set** out);
VK_API void vk_norming_free(vk_norming_set* s);
VK_API vk_status vk_norming_info(const vk_norming_set* s, int* size, double* certified_slack);
VK_API vk_status vk_norming_audit(const vk_norming_set* s, const vk_variety* v, int trials, int sup_sample,
                                  uint64_t seed, double* empirical_slack);

/* Benchmark reports. String fields are required unless noted; integer lists are
 * given as pointer plus length. */
typedef struct vk_hilbert_config {
  const char* variety;
  int n_max;
  const char* verify; /* none | monomials | rank | both; NULL means none */
  uint64_t seed;
} vk_hilbert_config;

typedef struct vk_approx_config {
  const char* variety;
  const char* kernel;
  double eps;
  const char* method; /* taylor | cheb | nystrom */
  int rank;
  size_t audit_pairs;
  double jitter;
  uint64_t seed;
} vk_approx_config;

typedef struct vk_rff_bench_config {
  const char* variety;
  const char* kernel;
  const int* ranks;
  size_t rank_count;
  size_t pairs;
  double eps;
  uint64_t seed;
} vk_rff_bench_config;

typedef struct vk_fekete_config {
  const char* variety;
  int n;
  int a;
  int trials;
  int candidates; /* 0 selects 10 * hf(a n) */
  int sup_sample;
  uint64_t seed;
} vk_fekete_config;

typedef struct vk_fig1_config {
  int d;
  int k;
  double sigma;
  double jitter;
  int runs;
  size_t pairs;
  int n_max;
  uint64_t seed;
} vk_fig1_config;

typedef struct vk_fig2_config {
  const int* k_list;
  size_t k_count;
  const int* d_list;
  size_t d_count;
  const int* ranks;
  size_t rank_count;
  size_t pairs;
  double eps;
  double sigma;
  uint64_t seed;
} vk_fig2_config;

typedef struct vk_fig3_config {
  int n_max;
} vk_fig3_config;

/* Defaults matching the documented CLI defaults. String fields are left NULL. */
VK_API void vk_hilbert_config_init(vk_hilbert_config* c);
VK_API void vk_approx_config_init(vk_approx_config* c);
VK_API void vk_rff_bench_config_init(vk_rff_bench_config* c);
VK_API void vk_fekete_config_init(vk_fekete_config* c);
VK_API void vk_fig1_config_init(vk_fig1_config* c);
VK_API void vk_fig2_config_init(vk_fig2_config* c);
VK_API void vk_fig3_config_init(vk_fig3_config* c);

/* Validation without computation. */
VK_API vk_status vk_validate_hilbert(const vk_hilbert_config* c);
VK_API vk_status vk_validate_approx(const vk_approx_config* c);
VK_API vk_status vk_validate_rff_bench(const vk_rff_bench_config* c);
VK_API vk_status vk_validate_fekete(const vk_fekete_config* c);
VK_API vk_status vk_validate_fig1(const vk_fig1_config* c);
VK_API vk_status vk_validate_fig2(const vk_fig2_config* c);
VK_API vk_status vk_validate_fig3(const vk_fig3_config* c);

VK_API vk_status vk_run_hilbert(const vk_hilbert_config* c, vk_report** out);
VK_API vk_status vk_run_approx(const vk_approx_config* c, vk_report** out);
VK_API vk_status vk_run_rff_bench(const vk_rff_bench_config* c, vk_report** out);
VK_API vk_status vk_run_fekete(const vk_fekete_config* c, vk_report** out);
VK_API vk_status vk_run_fig1(const vk_fig1_config* c, vk_report** out);
VK_API vk_status vk_run_fig2(const vk_fig2_config* c, vk_report** out);
VK_API vk_status vk_run_fig3(const vk_fig3_config* c, vk_report** out);

/* The full CSV text, valid until vk_report_free. */
VK_API const char* vk_report_csv(const vk_report* r);
VK_API void vk_report_free(vk_report* r);

#ifdef __cplusplus
}
#endif

#endif /* VARKERNEL_VARKERNEL_H */
