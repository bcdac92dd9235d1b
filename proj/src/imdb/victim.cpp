#include "disturbsim/imdb/victim.hpp"

#include <bit>

namespace disturbsim::imdb {

std::uint32_t comparator_latency_cycles(std::uint32_t inputs) {
    if (inputs <= 1) return 0;
    return static_cast<std::uint32_t>(std::bit_width(inputs - 1));
}

void require_full(const MainTable& mt) {
    if (mt.capacity() == 0) throw PreconditionError("victim selection on an empty table");
    for (std::size_t i = 0; i < mt.capacity(); ++i)
        if (!mt[i].valid)
            throw PreconditionError("victim selection with free slot " + std::to_string(i));
}

std::size_t select_victim_exact(const MainTable& mt) {
    require_full(mt);
    std::size_t best = 0;
    for (std::size_t i = 1; i < mt.capacity(); ++i)
        if (victim_key(mt, i) < victim_key(mt, best)) best = i;
    return best;
}

}  // namespace disturbsim::imdb
