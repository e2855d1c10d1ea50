/* Copyright 2026 The kstree Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Proves the public header is consumable from plain C. */

#include <stdio.h>

#include "kstree.h"

int main(void) {
  ks_construction* c = NULL;
  uint32_t vars = 0;
  int pass = 0;

  if (ks_construction_create(4, KS_STAGE_JOINED, &c) != KS_OK) {
    fprintf(stderr, "create: %s\n", ks_last_error());
    return 1;
  }
  if (ks_construction_variable_count(c, &vars) != KS_OK || vars != 23) {
    fprintf(stderr, "variable count: %s\n", ks_last_error());
    ks_construction_destroy(c);
    return 1;
  }
  if (ks_construction_verify(c, &pass, NULL) != KS_OK || pass != 1) {
    fprintf(stderr, "verify: %s\n", ks_last_error());
    ks_construction_destroy(c);
    return 1;
  }
  ks_construction_destroy(c);
  printf("ok: %u variables\n", vars);
  return 0;
}
