#ifndef MAZU_H
#define MAZU_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MAZU_API __declspec(dllexport)
#else
#define MAZU_API __attribute__((visibility("default")))
#endif

typedef enum mazu_status {
  MAZU_OK = 0,
  MAZU_ERR_MALFORMED_SPEC = 1,
  MAZU_ERR_RESOLUTION_TOO_COARSE = 2,
  MAZU_ERR_WINDOW_EMPTY = 3,
  MAZU_ERR_NOT_BOUNDARY = 4,
  MAZU_ERR_DISCONNECTED = 5,
  MAZU_ERR_BUDGET_EXCEEDED = 6,
  MAZU_ERR_QUERY_IN_OBSTACLE = 7,
  MAZU_ERR_NOT_FINITELY_CONNECTED = 8,
  MAZU_ERR_UNKNOWN_EXAMPLE = 9,
  MAZU_ERR_PAYLOAD_TOO_LARGE = 10,
  MAZU_ERR_INVALID_ARGUMENT = 11,
  MAZU_ERR_IO = 12,
  MAZU_ERR_INTERNAL = 13
} mazu_status;

/* A domain: a spec file, a spec document, or a corpus example whose
   truncation follows the spacing it is rasterized at. */
typedef struct mazu_domain mazu_domain;

/* A finished report: a JSON document (or SVG for render calls) plus a
   pass flag for commands that check expectations. */
typedef struct mazu_report mazu_report;

typedef struct mazu_ladder_options {
  double r0;        /* outer ladder radius */
  int kmax;         /* scales r0, r0/2, ..., r0 2^-kmax */
  double h_ratio;   /* spacing h_k = r_k / h_ratio */
} mazu_ladder_options;

typedef struct mazu_fiber_options {
  double threshold_factor; /* fibers split at threshold_factor * r0 */
  int strict;              /* nonzero: fail with NOT_FINITELY_CONNECTED */
  int phi_samples;         /* pairs checked by the projection onto x0 */
  unsigned seed;
} mazu_fiber_options;

typedef struct mazu_seplab_options {
  int count;
  unsigned seed;
  double h;
  double min_separation; /* in units of h */
  int max_attempts;
  int max_sets;
} mazu_seplab_options;

MAZU_API const char* mazu_version(void);
MAZU_API const char* mazu_status_name(mazu_status status);
/* Message of the last failure on the calling thread. */
MAZU_API const char* mazu_last_error(void);

MAZU_API void mazu_ladder_options_init(mazu_ladder_options* opts);
MAZU_API void mazu_fiber_options_init(mazu_fiber_options* opts);
MAZU_API void mazu_seplab_options_init(mazu_seplab_options* opts);

/* Parses "p/q", decimals and plain integers. */
MAZU_API mazu_status mazu_parse_rational(const char* text, double* out);
/* Parses "x,y" or "x,y,z" of rationals into out[3]; *dim receives 2 or 3. */
MAZU_API mazu_status mazu_parse_point(const char* text, double* out, int* dim);

MAZU_API mazu_status mazu_domain_from_json(const char* json, mazu_domain** out);
MAZU_API mazu_status mazu_domain_from_file(const char* path, mazu_domain** out);
MAZU_API mazu_status mazu_domain_from_example(const char* name, mazu_domain** out);
MAZU_API void mazu_domain_free(mazu_domain* domain);
MAZU_API int mazu_domain_dim(const mazu_domain* domain);
/* Hex hash of the canonical spec (examples: at their reference spacing). */
MAZU_API const char* mazu_domain_spec_hash(const mazu_domain* domain);
/* Spec document at spacing h (h <= 0: reference spacing). */
MAZU_API mazu_status mazu_domain_spec_json(const mazu_domain* domain, double h, mazu_report** out);

/* Points are arrays of domain dimension. */
MAZU_API mazu_status mazu_classify(const mazu_domain* domain, const double* point, const mazu_ladder_options* opts,
                                   mazu_report** out);
/* Classifies boundary samples taken at spacing `stride`, at most `limit`. */
MAZU_API mazu_status mazu_classify_boundary(const mazu_domain* domain, double stride, int limit,
                                            const mazu_ladder_options* opts, mazu_report** out);
MAZU_API mazu_status mazu_dm(const mazu_domain* domain, double h, const double* from, const double* to, int exact,
                             uint64_t budget, mazu_report** out);
MAZU_API mazu_status mazu_net_profile(const mazu_domain* domain, const double* eps, size_t count,
                                      const double* spacings, size_t spacing_count, mazu_report** out);
MAZU_API mazu_status mazu_fibers(const mazu_domain* domain, const double* point, const mazu_ladder_options* opts,
                                 const mazu_fiber_options* fiber_opts, mazu_report** out);
MAZU_API mazu_status mazu_seplab(const char* suite, const mazu_seplab_options* opts, mazu_report** out);

MAZU_API mazu_status mazu_corpus_list(mazu_report** out);
/* names == NULL runs the whole corpus; h_ratio <= 0 keeps each entry's
   spacing; threads <= 0 uses the hardware limit capped by MAZU_THREADS. */
MAZU_API mazu_status mazu_corpus_run(const char* const* names, size_t count, double h_ratio, int threads,
                                     mazu_report** out);

MAZU_API mazu_status mazu_render_domain(const mazu_domain* domain, double h, mazu_report** out);
MAZU_API mazu_status mazu_render_verdict(const mazu_domain* domain, const double* point,
                                         const mazu_ladder_options* opts, mazu_report** out);
MAZU_API mazu_status mazu_render_dm_path(const mazu_domain* domain, double h, const double* from, const double* to,
                                         mazu_report** out);

MAZU_API const char* mazu_report_text(const mazu_report* report);
MAZU_API size_t mazu_report_size(const mazu_report* report);
/* 1 unless the report records failed expectations or counterexamples. */
MAZU_API int mazu_report_pass(const mazu_report* report);
MAZU_API void mazu_report_free(mazu_report* report);

#ifdef __cplusplus
}
#endif

#endif
