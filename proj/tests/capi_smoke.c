#include <stdio.h>
#include <string.h>

#include "mazu.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  double v = 0.0;
  EXPECT(mazu_parse_rational("1/128", &v) == MAZU_OK && v == 1.0 / 128);
  EXPECT(mazu_parse_rational("1/0", &v) == MAZU_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(mazu_last_error()) > 0);

  double p[3];
  int dim = 0;
  EXPECT(mazu_parse_point("-1/2,0", p, &dim) == MAZU_OK && dim == 2 && p[0] == -0.5);

  mazu_domain* d = NULL;
  EXPECT(mazu_domain_from_example("no-such-domain", &d) == MAZU_ERR_UNKNOWN_EXAMPLE);
  EXPECT(d == NULL);
  EXPECT(mazu_domain_from_file("missing.json", &d) == MAZU_ERR_IO);

  EXPECT(mazu_domain_from_example("slit-disc", &d) == MAZU_OK);
  if (!d) return 1;
  EXPECT(mazu_domain_dim(d) == 2);
  EXPECT(strlen(mazu_domain_spec_hash(d)) == 16);

  mazu_ladder_options opts;
  mazu_ladder_options_init(&opts);
  mazu_report* r = NULL;
  double x0[2] = {-0.5, 0.0};
  EXPECT(mazu_classify(d, x0, &opts, &r) == MAZU_OK);
  EXPECT(r && strstr(mazu_report_text(r), "NConnected(2)") != NULL);
  EXPECT(r && strstr(mazu_report_text(r), "\"toolVersion\"") != NULL);
  EXPECT(mazu_report_pass(r) == 1);
  mazu_report_free(r);

  double inside[2] = {0.3, 0.3};
  r = NULL;
  EXPECT(mazu_classify(d, inside, &opts, &r) == MAZU_ERR_NOT_BOUNDARY);
  EXPECT(r == NULL);

  double a[2] = {-0.5, 1.0 / 32}, b[2] = {-0.5, -1.0 / 32};
  EXPECT(mazu_dm(d, 1.0 / 64, a, b, 0, 0, &r) == MAZU_OK);
  EXPECT(r && strstr(mazu_report_text(r), "\"witnessPath\"") != NULL);
  mazu_report_free(r);

  EXPECT(mazu_render_dm_path(d, 1.0 / 64, a, b, &r) == MAZU_OK);
  EXPECT(r && strncmp(mazu_report_text(r), "<svg", 4) == 0 && strstr(mazu_report_text(r), "<polyline") != NULL);
  mazu_report_free(r);

  mazu_domain_free(d);

  mazu_seplab_options sep;
  mazu_seplab_options_init(&sep);
  sep.count = 10;
  EXPECT(mazu_seplab("nested", &sep, &r) == MAZU_OK);
  EXPECT(mazu_report_pass(r) == 1);
  mazu_report_free(r);
  EXPECT(mazu_seplab("no-such-suite", &sep, &r) == MAZU_ERR_INVALID_ARGUMENT);

  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("capi smoke: ok\n");
  return failures ? 1 : 0;
}
