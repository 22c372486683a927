#include <stdio.h>

#include "dfsf/dfsf.h"

int main(void) {
  dfsf_config* cfg = NULL;
  dfsf_report* rep = NULL;
  double max_u = 0.0;
  if (dfsf_config_create(&cfg) != DFSF_OK) return 1;
  dfsf_config_set_n(cfg, 2000);
  dfsf_config_set_epsilon(cfg, 0.1);
  dfsf_config_set_seed(cfg, 7);
  if (dfsf_run(cfg, &rep) != DFSF_OK) {
    fprintf(stderr, "run failed: %s\n", dfsf_last_error());
    return 1;
  }
  if (dfsf_report_get_double(rep, "max_U", &max_u) != DFSF_OK || max_u < 1.0) return 1;
  printf("dfsf %s: max_U = %.0f\n", dfsf_version(), max_u);
  dfsf_report_destroy(rep);
  dfsf_config_destroy(cfg);
  return 0;
}
