/* The public header must stay valid C; a minimal end-to-end run from C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "moran.h"

static void expect(int cond, const char* what) {
  if (!cond) {
    fprintf(stderr, "FAIL: %s (%s)\n", what, moran_last_error());
    exit(1);
  }
}

int main(void) {
  moran_weights* w = NULL;
  expect(moran_weights_line_decay(10, 1, &w) == MORAN_OK, "line_decay");

  double y[10];
  expect(moran_extremal_observations(w, MORAN_UPPER, 0.0, 1.0, y) == MORAN_OK,
         "extremal");

  moran_result r;
  expect(moran_analyze(w, y, 10, &r) == MORAN_OK, "analyze");
  expect(fabs(r.i - 0.935) < 5e-4, "upper bound attained");
  expect(r.i_m == 1.0, "rescaled value at the upper bound");

  moran_weights* bad = NULL;
  expect(moran_weights_complete(2, &bad) == MORAN_ERR_TOO_SMALL,
         "too-small order rejected");

  moran_weights_free(w);
  printf("ok\n");
  return 0;
}
