#include <stdio.h>
#include <string.h>

#include "osserman.h"

int main(void) {
    OssTensor *t = NULL;
    if (oss_tensor_constant_curvature(2, 1, 1, 3, &t) != OSS_STATUS_OK) {
        fprintf(stderr, "constructor failed: %s\n", oss_last_error_message());
        return 1;
    }
    size_t n = 0, bad = 0;
    oss_tensor_dimension(t, &n);
    oss_tensor_validate(t, &bad);

    OssVerdict v;
    if (oss_is_osserman(t, 8, 0, &v) != OSS_STATUS_OK) {
        return 1;
    }
    char *poly = NULL;
    if (oss_tensor_char_poly_json(t, "[\"1\", \"2\", \"0\"]", &poly) != OSS_STATUS_OK) {
        return 1;
    }
    printf("version %s n=%zu violations=%zu osserman=%d char_poly=%s\n", oss_version(), n, bad, (int)v, poly);
    oss_string_free(poly);

    OssTensor *u = NULL;
    OssStatus s = oss_tensor_from_json("{", &u);
    printf("parse status %d: %s\n", (int)s, oss_last_error_message() ? "message set" : "no message");
    oss_tensor_free(t);
    return s == OSS_STATUS_PARSE_ERROR && bad == 0 && n == 3 && v == OSS_VERDICT_HOLDS_ON_SAMPLES ? 0 : 1;
}
