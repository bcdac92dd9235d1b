#include "disturbsim/metrics/report.hpp"

namespace disturbsim {

EnergyBreakdown energy_total(const RunStats& s, const EnergyParams& p) {
    EnergyBreakdown e;
    e.pcm_read_pj = static_cast<double>(s.media_reads) * p.pcm_read_pj;
    e.pcm_set_pj = static_cast<double>(s.set_pulses) * p.pcm_set_pj_per_bit;
    e.pcm_reset_pj = static_cast<double>(s.reset_pulses) * p.pcm_reset_pj_per_bit;
    e.sram_search_pj = static_cast<double>(s.sram_searches) * p.sram_search_pj;
    e.sram_access_pj = static_cast<double>(s.sram_accesses) * p.sram_access_pj;
    e.bb_access_pj = static_cast<double>(s.bb_accesses) * p.bb_access_pj;
    return e;
}

}  // namespace disturbsim
