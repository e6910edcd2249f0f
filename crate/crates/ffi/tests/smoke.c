#include <stdio.h>
#include <string.h>
#include "hoca.h"

static const char *TWO_TORSION =
    "{\"format\":1,\"ring\":{\"kind\":\"Z\"},"
    "\"components\":{\"0\":{\"factors\":[0]},\"1\":{\"factors\":[0]}},"
    "\"differentials\":{\"0\":[[2]]}}";

int main(void) {
    HocaComplex *c = NULL;
    if (hoca_complex_from_json(TWO_TORSION, &c) != HOCA_STATUS_OK) return 10;
    HocaModule *h = NULL;
    if (hoca_complex_homology(c, 1, &h) != HOCA_STATUS_OK) return 11;
    char *s = NULL;
    if (hoca_module_to_string(h, &s) != HOCA_STATUS_OK) return 12;
    printf("%s\n", s);
    int ok = strcmp(s, "Z/2") == 0;
    hoca_string_free(s);
    hoca_module_free(h);
    hoca_complex_free(c);

    HocaComplex *bad = NULL;
    HocaStatus st = hoca_complex_from_json("{\"format\":1,\"ring\":{\"kind\":\"Z\"},"
                                           "\"components\":{\"0\":{\"factors\":[1]}}}", &bad);
    if (st != HOCA_STATUS_MALFORMED || bad != NULL) return 13;
    printf("%s\n", hoca_last_error());
    return ok ? 0 : 14;
}
