#pragma once

// Line-based diagram files.
//
//   # comment
//   spine g=<int>            or   link n=<int>
//   loop <i>: <edge ids, cyclic> [side=left|right]
//   arc <i>: <edge ids, from x to loop i>
//   wedge: <first edge of each arc, counterclockwise around x>
//   X <id> <a> <b> <c> <d> over=<a|b|c|d>
//
// Crossing edges are listed counterclockwise; `over=` names the slot holding
// the incoming edge of the over strand. The direction of the under strand is
// read off the component lists; when both directions fit (a two-edge
// component) the earlier-listed under slot is taken as incoming.
// `serialize` always writes the incoming under edge first, so its output
// re-parses to the same diagram.

#include <string>
#include <string_view>

#include "spinecert/diagram.hpp"

namespace spinecert {

/// Syntax-level parse. Throws ParseError on malformed text and DiagramError for a
/// wedge entry naming no arc. Does not validate.
Diagram parse_diagram(std::string_view text);

/// parse_diagram + validate + kind check; throws DiagramError listing every
/// violated invariant.
Diagram parse_spine(std::string_view text);
Diagram parse_link(std::string_view text);

/// Byte-stable text form.
std::string serialize(const Diagram& d);

}  // namespace spinecert
