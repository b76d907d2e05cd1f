#pragma once

#include <string>

#include "core/box.hpp"

namespace nsb {

class spec_error : public std::runtime_error {
  public:
    spec_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Constructor grammar:
//   det:ABGE          deterministic box, four bit labels
//   pr:ABG            PR box, three bit labels
//   noise             maximally mixed box
//   noisy-pr:ABG:p    PR/noise mixture, p a rational in [0,1]
//   mix:w1*S1+w2*S2+...   convex mixture of sub-specs; weights rational
// Sub-specs may be parenthesized; a mix nested inside a mix term requires
// parentheses, since '+' otherwise continues the outer term list.
Box parse_box_spec(const std::string& spec);

}  // namespace nsb
