#include <math.h>
#include <stdio.h>
#include <string.h>

#include "lorentz_flow.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  LfComposition c;
  CHECK(lf_compose(1.0, 1.0, M_PI / 2, &c) == LF_STATUS_OK);
  CHECK(fabs(c.tau - 0.4207839616380729) < 1e-12);

  CHECK(lf_compose(0.0, 0.0, 1.0, &c) == LF_STATUS_DEGENERATE);
  CHECK(strstr(lf_last_error_message(), "both rapidities zero") != NULL);

  LfTrajectory *t = NULL;
  CHECK(lf_integrate(M_PI / 2, 0.6, 0.0, 5.0, 1e-3, &t) == LF_STATUS_OK);
  CHECK(lf_trajectory_len(t) == 5001);
  LfSample s;
  CHECK(lf_trajectory_sample(t, 5000, &s) == LF_STATUS_OK);
  CHECK(fabs(s.theta - 0.0080857273) < 1e-9);
  CHECK(lf_trajectory_sample(t, 5001, &s) == LF_STATUS_INDEX_OUT_OF_RANGE);
  lf_trajectory_free(t);

  LfFixedPoint fps[4];
  CHECK(lf_fixed_points(fps) == LF_STATUS_OK);

  char *svg = NULL;
  CHECK(lf_render_portrait_default(LF_FORMAT_SVG, &svg) == LF_STATUS_OK);
  CHECK(strncmp(svg, "<?xml", 5) == 0);
  lf_string_free(svg);

  printf("ok %s\n", lf_version());
  return 0;
}
