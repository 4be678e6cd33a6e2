#pragma once

#include <string>

#include "looij/polytope.hpp"

namespace looij {

// Static SVG 1.1 pictures. Frames and diagrams are drawn in the developed or
// seed plane; traces and polytopes through a picture map that sends the rays
// of the fan to evenly spaced directions, so wrapping lines show up as spirals.
std::string svg_frame(const DevelopedFrame& fr);
std::string svg_diagram(const Diagram& d);
std::string svg_trace(const Fan& f, const LineTrace& L);
std::string svg_polytope(const Fan& f, const StrongPolytope& P);

}  // namespace looij
