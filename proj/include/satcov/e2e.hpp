#pragma once

#include <stdexcept>

#include "satcov/fso_coverage.hpp"
#include "satcov/rf_coverage.hpp"

namespace satcov {

enum class RfCase { InterferenceFree, InterferenceDominated, InterferenceAndNoise };

inline double cp_rf_case(double gamma_th, RfCase rf_case, const RfLinkParams& rf,
                         const DeploymentParams& dep, int M_r = kDefaultMr) {
    switch (rf_case) {
    case RfCase::InterferenceFree: return cp_rf_nointerference(gamma_th, rf, dep.D);
    case RfCase::InterferenceDominated: return cp_rf_sir(gamma_th, rf, dep, M_r);
    case RfCase::InterferenceAndNoise: return cp_rf_sinr(gamma_th, rf, dep, M_r);
    }
    throw std::domain_error("cp_rf_case: unknown case");
}

// End-to-end outage of the decode-and-forward chain: the equivalent SNR is
// the minimum of the two hops, so OP = 1 - CP_fso * CP_rf.
inline double op_e2e(double gamma_th, const SystemGeometry& g, const FsoLinkParams& fso,
                     const RfLinkParams& rf, const DeploymentParams& dep, RfCase rf_case,
                     int M_f = kDefaultMf, int M_r = kDefaultMr) {
    return 1.0 - cp_sch(gamma_th, g, fso, M_f) * cp_rf_case(gamma_th, rf_case, rf, dep, M_r);
}

} // namespace satcov
