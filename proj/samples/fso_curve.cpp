// Minimal library usage: print the satellite-hop coverage curve plus its
// high-SNR asymptote for the default parameter set.

#include <cstdio>

#include "satcov/satcov.hpp"

int main() {
    using namespace satcov;
    const RunConfig cfg = RunConfig::table1_defaults();
    std::printf("# gamma_th_dB  cp  cp_asymptotic_raw\n");
    for (double th = 0.0; th <= 40.0; th += 2.0) {
        const double x = db_to_linear(th);
        std::printf("%5.1f  %.6f  %.6f\n", th, cp_sch(x, cfg.mc.geometry, cfg.mc.fso),
                    cp_sch_asymptotic(x, cfg.mc.geometry, cfg.mc.fso));
    }
    return 0;
}
