#ifndef NETGOF_H
#define NETGOF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NGF_API __declspec(dllexport)
#else
#define NGF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Degree-based goodness-of-fit tests for independent-edge and exchangeable
 * random graph models. All functions return NGF_OK on success; on failure
 * they return a status code and leave a message readable through
 * ngf_last_error() on the calling thread. Output object handles are owned by
 * the caller and released with the matching _free function; strings returned
 * through char** are released with ngf_string_free. */

typedef enum ngf_status {
    NGF_OK = 0,
    NGF_EINVAL = 1,      /* unusable argument or configuration */
    NGF_EPARSE = 2,      /* malformed input text */
    NGF_EDIM = 3,        /* size mismatch */
    NGF_ERANGE = 4,      /* value outside its admissible range */
    NGF_EDEGENERATE = 5, /* null distribution with zero spread */
    NGF_ENUMERIC = 6,    /* internal numerical check failed */
    NGF_EIO = 7          /* file system failure */
} ngf_status;

NGF_API const char* ngf_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
NGF_API const char* ngf_last_error(void);

NGF_API void ngf_string_free(char* s);

/* Writes content to path via a temporary file and rename, creating parent
 * directories; no partial file is ever visible. */
NGF_API ngf_status ngf_write_file_atomic(const char* path, const char* content);

/* ---- graphs ---------------------------------------------------------- */

typedef struct ngf_graph ngf_graph;

/* Edge-list text: "i j" per line, "# n=<count>" declares the node count.
 * n_hint > 0 overrides the declared count. */
NGF_API ngf_status ngf_graph_read_file(const char* path, int n_hint, ngf_graph** out);
NGF_API ngf_status ngf_graph_from_edges(int n, const int32_t* endpoints, int64_t edges,
                                        ngf_graph** out);
NGF_API void ngf_graph_free(ngf_graph* g);
NGF_API int ngf_graph_nodes(const ngf_graph* g);
NGF_API int64_t ngf_graph_edges(const ngf_graph* g);
NGF_API ngf_status ngf_graph_write_file(const ngf_graph* g, const char* path);

/* ---- models ---------------------------------------------------------- */

/* A model file is either a probability-matrix CSV (.csv) or a kernel JSON
 * (.json); the loader picks by content, trying JSON first. */
typedef struct ngf_model ngf_model;

NGF_API ngf_status ngf_model_read_file(const char* path, ngf_model** out);
NGF_API void ngf_model_free(ngf_model* m);
NGF_API int ngf_model_is_kernel(const ngf_model* m); /* 1 kernel, 0 matrix */
NGF_API int ngf_model_nodes(const ngf_model* m);     /* 0 for kernels */

/* Samples a graph. n must match matrix models (or be 0 to take their size).
 * For kernel models, out_latent_csv (optional) receives "i,u" rows with the
 * latent positions. */
NGF_API ngf_status ngf_model_sample(const ngf_model* m, int n, uint64_t seed, uint64_t stream,
                                    ngf_graph** out_g, char** out_latent_csv);

/* ---- tests ----------------------------------------------------------- */

typedef struct ngf_test_result {
    double statistic;
    double null_mean;
    double null_sd;
    double z;
    double p_value; /* one-sided upper */
    double alpha;
    int reject;
} ngf_test_result;

/* Degree statistic against a fixed probability matrix (model must be one). */
NGF_API ngf_status ngf_test_her(const ngf_graph* g, const ngf_model* p0, double alpha,
                                ngf_test_result* out);
/* Degree variance against the homogeneous model with plug-in density. */
NGF_API ngf_status ngf_test_dv_er(const ngf_graph* g, double alpha, ngf_test_result* out);
/* Degree statistic against an exchangeable kernel (model must be one). */
NGF_API ngf_status ngf_test_eg(const ngf_graph* g, const ngf_model* phi0, double alpha,
                               ngf_test_result* out);

/* Analytic power of the one-sided tests. */
NGF_API ngf_status ngf_power_her(const ngf_model* p0, const ngf_model* p, double alpha,
                                 double* out);
NGF_API ngf_status ngf_power_eg(const ngf_model* phi0, const ngf_model* phi, int n, double alpha,
                                double* out);

/* ---- logistic null fitting ------------------------------------------- */

typedef struct ngf_logistic ngf_logistic;

/* Covariate CSV: header "i,j,<names...>", one row per pair i<j. */
NGF_API ngf_status ngf_fit_logistic_file(const ngf_graph* g, const char* covariates_path,
                                         ngf_logistic** out);
NGF_API void ngf_logistic_free(ngf_logistic* f);
NGF_API int ngf_logistic_dim(const ngf_logistic* f); /* coefficients incl. intercept */
NGF_API double ngf_logistic_coef(const ngf_logistic* f, int k);
NGF_API double ngf_logistic_stderr(const ngf_logistic* f, int k);
NGF_API int ngf_logistic_converged(const ngf_logistic* f);
NGF_API int ngf_logistic_iterations(const ngf_logistic* f);
NGF_API double ngf_logistic_score_norm(const ngf_logistic* f);
/* Degree test against the fitted matrix. */
NGF_API ngf_status ngf_logistic_test(const ngf_graph* g, const ngf_logistic* f, double alpha,
                                     ngf_test_result* out);

/* ---- studies ---------------------------------------------------------- */

/* Runs the study described by flat key = value text (keys: study, design,
 * kind, n, rho_star, beta, exponent, p, replicates, alpha, seed). Returns the
 * result CSV and the canonical configuration echo. threads <= 0 uses all
 * available; results do not depend on it. */
NGF_API ngf_status ngf_study_run(const char* config_text, int threads, char** out_csv,
                                 char** out_config_echo);

#ifdef __cplusplus
}
#endif

#endif /* NETGOF_H */
