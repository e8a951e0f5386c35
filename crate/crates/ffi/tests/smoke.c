#include <stdio.h>
#include "varcoalg.h"

int main(void) {
    VcSystem *sys = NULL;
    if (vc_system_parse("index 2\nx = [1, $x]\ny = <1 ; $y>\none = 1\nzero = 0\n", &sys) != VC_STATUS_OK)
        return 10;
    char *text = NULL;
    if (vc_solve_expand(sys, "x", 2, VC_FORMAT_SET, &text) != VC_STATUS_OK)
        return 11;
    printf("%s\n", text);
    vc_string_free(text);
    if (vc_equal(sys, "x", "y", NULL) == VC_STATUS_OK)
        printf("bisimilar\n");
    size_t depth = 0;
    if (vc_equal(sys, "one", "zero", &depth) == VC_STATUS_DISTINCT)
        printf("distinct %zu\n", depth);
    VcStatus s = vc_equal(sys, "x", "missing", NULL);
    if (vc_last_error_message() != NULL)
        printf("error %d\n", (int)s);
    vc_system_free(sys);
    return 0;
}
