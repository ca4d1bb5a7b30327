#include <stdio.h>
#include "qsprep.h"

int main(void) {
    QsprepState *state = NULL;
    QsprepCircuit *circuit = NULL;
    QsprepCounts counts;
    char msg[256];

    if (qsprep_state_generate("w", 8, 0, 0, &state) != QSPREP_STATUS_OK) return 1;
    printf("support %zu\n", qsprep_state_support(state));
    if (qsprep_synthesize(state, "qrom", 6, &circuit) != QSPREP_STATUS_OK) return 1;
    if (qsprep_circuit_counts(circuit, &counts) != QSPREP_STATUS_OK) return 1;
    printf("t_proxy %llu\n", (unsigned long long)counts.t_proxy);

    QsprepStatus s = qsprep_state_generate("nope", 8, 0, 0, &state);
    qsprep_last_error(msg, sizeof msg);
    printf("status %d: %s\n", (int)s, msg);

    qsprep_circuit_free(circuit);
    qsprep_state_free(state);
    return 0;
}
