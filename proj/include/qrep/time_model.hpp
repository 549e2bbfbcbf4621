// Timing parameters: elementary-pair generation time and the classical-signal
// waiting times that drive memory decoherence.
#pragma once

#include <stdexcept>
#include <string>

namespace qrep {

// t0_s is the time to generate (and herald) one elementary pair across a
// segment — also the light travel time used for classical signalling over
// one segment.  A pair at repeater level l spans 2^(l-1) segments, so the
// per-step signal wait at level l is 2^(l-1) * t0.
struct TimeModel {
    double t0_s = 0.333e-4;   // one segment of 10 km at 2/3 c, two-way heralding
    double segment_km = 10.0;

    void validate() const {
        if (!(t0_s > 0.0)) {
            throw std::domain_error("t0 must be positive, got " + std::to_string(t0_s));
        }
        if (!(segment_km > 0.0)) {
            throw std::domain_error("segment length must be positive, got " +
                                    std::to_string(segment_km));
        }
    }

    // Classical-signal waiting time for one purification round at the given
    // repeater level (level >= 1).
    double signal_wait_s(int level) const {
        if (level < 1) {
            throw std::domain_error("repeater level must be >= 1, got " +
                                    std::to_string(level));
        }
        return static_cast<double>(1ULL << (level - 1)) * t0_s;
    }

    // Distance spanned by a level-l pair.
    double span_km(int level) const {
        if (level < 1) {
            throw std::domain_error("repeater level must be >= 1, got " +
                                    std::to_string(level));
        }
        return static_cast<double>(1ULL << (level - 1)) * segment_km;
    }
};

}  // namespace qrep
