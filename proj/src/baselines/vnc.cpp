#include "disturbsim/baselines/vnc.hpp"

#include <deque>

#include "disturbsim/core/error.hpp"

namespace disturbsim {

namespace {

// Corrections only follow accumulated disturbance, so chains die out quickly; the cap
// guards against a pathological limit of 1.
constexpr std::size_t kMaxCorrections = 1u << 16;

void push_neighbors(std::deque<LineAddress>& q, const LineAddress& a, const Geometry& g) {
    for (int delta : {-1, +1})
        if (auto n = row_neighbor(a, g, delta)) q.push_back(*n);
}

}  // namespace

VncResult vnc_wrap_write(CellArray& media, const LineAddress& addr, const DataLine& data,
                         WriteMode mode) {
    const Geometry& g = media.geometry();
    VncResult r;

    for (int delta : {-1, +1})
        if (auto n = row_neighbor(addr, g, delta)) {
            r.outcome.extra_reads.push_back(*n);
            (void)media.read_line(*n);
        }

    r.media_writes.push_back(media.apply_write(addr, data, mode));

    std::deque<LineAddress> verify;
    push_neighbors(verify, addr, g);
    while (!verify.empty()) {
        const LineAddress line = verify.front();
        verify.pop_front();
        r.outcome.extra_reads.push_back(line);
        const DataLine expected = media.intended(line);
        if (media.read_line(line) == expected) continue;
        if (r.outcome.extra_writes.size() >= kMaxCorrections)
            throw InvariantError("verify-and-correct did not converge");
        r.outcome.extra_writes.push_back({line, expected, WriteMode::Full});
        r.media_writes.push_back(media.apply_write(line, expected, WriteMode::Full));
        push_neighbors(verify, line, g);
    }
    return r;
}

}  // namespace disturbsim
