#pragma once

#include <iosfwd>

#include "pebble/instance.hpp"
#include "pebble/mapf.hpp"
#include "pebble/upmt.hpp"

namespace pebble {

// Plan text:        "# moves=L" then one "u v" per line.
// Timed plan text:  "# moves=L makespan=M soc=S" then one "u v t" per line,
//                   nondecreasing in t.
// Nodes are written with the instance's names (labels when present).
void write_plan(std::ostream& out, const Instance& inst, const Plan& plan);
void write_timed_plan(std::ostream& out, const Instance& inst,
                      const TimedPlan& plan, std::int64_t soc);

// Comment and blank lines are skipped; unknown node names or malformed lines
// throw ParseError.
Plan read_plan(std::istream& in, const Instance& inst);
TimedPlan read_timed_plan(std::istream& in, const Instance& inst);

}  // namespace pebble
