#include <stdio.h>
#include "affine_endo.h"
int main(void) {
  AePlane *p = NULL; AeSkewField *f = NULL; size_t n = 0, inv = 0; char *js = NULL;
  if (ae_plane_build_ag2(4, &p) != AE_STATUS_OK) return 1;
  if (ae_skewfield_new(p, 0, &f) != AE_STATUS_OK) return 2;
  ae_skewfield_order(f, &n);
  if (ae_skewfield_inverse(f, 2, &inv) != AE_STATUS_OK) return 3;
  AeStatus s = ae_skewfield_verify(f, true, &js);
  printf("order=%zu inv(2)=%zu verify=%s\n", n, inv, ae_status_message(s));
  printf("zero inverse: %s\n", ae_status_message(ae_skewfield_inverse(f, 0, &inv)));
  ae_string_free(js); ae_skewfield_free(f); ae_plane_free(p);
  return s;
}
