/* SPDX-License-Identifier: Apache-2.0 */
/* The header compiles as C and the library runs a command end to end. */

#include <enrifact/enrifact.h>

#include <stdio.h>
#include <string.h>

static const char* w2 =
   "{\"kind\":\"generator\",\"meta\":{\"name\":\"W2\"},\"body\":{\"directive\":\"walking\",\"shape\":\"arrow\"}}";

int main(void) {
   enrifact_document* doc = NULL;
   if(enrifact_document_parse(w2, strlen(w2), &doc) != ENRIFACT_OK) {
      fprintf(stderr, "parse: %s\n", enrifact_last_error());
      return 1;
   }
   char* report = NULL;
   int code = -1;
   const int status = enrifact_execute(doc, "{\"command\":\"orth\",\"args\":{\"e\":\"0->1\",\"m\":\"0->1\"}}", &report, &code);
   int failed = status != ENRIFACT_OK || code != 1 || report == NULL || strstr(report, "\"status\":\"fails\"") == NULL;

   enrifact_workspace* ws = NULL;
   size_t objects = 0, morphisms = 0;
   int holds = -1;
   failed |= enrifact_workspace_new(doc, &ws) != ENRIFACT_OK;
   failed |= enrifact_workspace_counts(ws, &objects, &morphisms) != ENRIFACT_OK || objects != 2 || morphisms != 3;
   failed |= enrifact_orthogonal(ws, "0->0", "0->1", 0, &holds) != ENRIFACT_OK || holds != 1;
   failed |= enrifact_orthogonal(ws, "0->9", "0->1", 0, &holds) != ENRIFACT_E_DANGLING_ID;
   failed |= strcmp(enrifact_status_name(ENRIFACT_E_DANGLING_ID), "DanglingID") != 0;

   enrifact_workspace_free(ws);
   enrifact_string_free(report);
   enrifact_document_free(doc);
   printf("%s\n", failed ? "FAIL" : "ok");
   return failed;
}
