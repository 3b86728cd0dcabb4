/* cc examples/smoke.c -Iinclude ../../target/release/libnjc_ffi.a -lm -lpthread -ldl -o smoke */
#include <stdio.h>
#include "njc.h"

int main(void) {
    NjcSingleParams p = {1.0, 1e-3, 1e-4, 0.0};
    double d;
    if (njc_critical_detuning_single(30.0, &p, &d) != NJC_STATUS_OK) return 1;
    printf("critical detuning: %.6f\n", d);

    NjcState *s = NULL;
    if (njc_state_coherent(5.477225575051661, 0.0, 0, &s) != NJC_STATUS_OK) return 1;
    NjcSingleRecord r;
    p.delta = d;
    if (njc_single_record(s, &p, 10.0 / p.lambda, &r) != NJC_STATUS_OK) return 1;
    printf("lambda t = 10: W = %.6f, L = %.6f\n", r.inversion, r.linear_entropy);
    njc_state_free(s);

    p.k = 0.0;
    if (njc_critical_detuning_single(30.0, &p, &d) == NJC_STATUS_ZERO_DEFORMATION) {
        char msg[128];
        njc_last_error_message(msg, sizeof msg);
        printf("expected error: %s\n", msg);
    }
    return 0;
}
