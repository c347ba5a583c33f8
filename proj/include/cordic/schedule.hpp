#pragma once

#include "cordic/fixnum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cordic {

// Hardware-cost proxy attached to every engine result.
struct OpCount {
    std::int64_t adds = 0;       // adders/subtracters, x/y and z paths
    std::int64_t shifts = 0;     // barrel-shifter uses
    std::int64_t multiplies = 0; // scale corrections only
    std::int64_t iterations = 0; // micro-rotation steps (or merged stages)

    OpCount& operator+=(const OpCount& o) noexcept
    {
        adds += o.adds;
        shifts += o.shifts;
        multiplies += o.multiplies;
        iterations += o.iterations;
        return *this;
    }

    friend OpCount operator+(OpCount a, const OpCount& b) noexcept { return a += b; }
    friend bool operator==(const OpCount&, const OpCount&) = default;
};

enum class ScheduleSource { conventional, lobd, recoding, radix4, hybrid };

std::string to_string(ScheduleSource source);

struct ScheduleEntry {
    int index = 0;  // shift index i (radix-4: the digit position, shifts are 2i)
    int sigma = 0;  // {-1, 0, +1}, or {-2..+2} for radix-4
    FixedWord angle; // signed angle contributed by this entry
};

// Ordered list of micro-rotations in order of application.
struct MicroRotationSchedule {
    ScheduleSource source = ScheduleSource::conventional;
    std::vector<ScheduleEntry> entries;

    // Entries with sigma != 0.
    std::size_t active_count() const noexcept;
};

} // namespace cordic
