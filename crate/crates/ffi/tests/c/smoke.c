#include <math.h>
#include <stdio.h>
#include <string.h>

#include "tensorcomm.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  /* printed U_{2x3}: second row has its 1 in the fourth column */
  TcmMatrix *u = NULL;
  CHECK(tcm_commutation_matrix(2, 3, TCM_METHOD_GELL_MANN, &u) == TCM_STATUS_OK);
  CHECK(tcm_matrix_rows(u) == 6 && tcm_matrix_cols(u) == 6);
  double re = 0, im = 0;
  CHECK(tcm_matrix_get(u, 2, 4, &re, &im) == TCM_STATUS_OK);
  CHECK(fabs(re - 1.0) < 1e-12 && fabs(im) < 1e-12);
  CHECK(tcm_matrix_get(u, 4, 2, &re, &im) == TCM_STATUS_OK);
  CHECK(fabs(re) < 1e-12);
  tcm_matrix_free(u);

  size_t targets[6];
  CHECK(tcm_permutation_targets(2, 3, targets, 6) == TCM_STATUS_OK);
  CHECK(targets[3] == 1);

  double in[12] = {1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 6, 0};
  double out[12];
  CHECK(tcm_apply_swap(2, 3, in, out, 6) == TCM_STATUS_OK);
  CHECK(out[2] == 4.0);

  CHECK(tcm_commutation_matrix(1, 3, TCM_METHOD_RULE, &u) == TCM_STATUS_DOMAIN);
  CHECK(tcm_last_error_message() != NULL);

  TcmStructureConstants *f = NULL;
  CHECK(tcm_structure_constants_new(2, 3, 1e-12, &f) == TCM_STATUS_OK);
  double v = 0;
  CHECK(tcm_structure_constant(f, 4, 5, 2, &v) == TCM_STATUS_OK);
  CHECK(fabs(v - 2.0) < 1e-12);
  tcm_structure_constants_free(f);

  int code = -1;
  char *json = NULL;
  CHECK(tcm_verify(2, 3, 1e-12, &code, &json) == TCM_STATUS_OK);
  CHECK(code == 0);
  CHECK(strstr(json, "erratum-expected") != NULL);
  tcm_string_free(json);

  printf("ok\n");
  return 0;
}
