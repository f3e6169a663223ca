#pragma once

#include <string>
#include <vector>

#include "ietab/flips.hpp"

namespace ietab {

// Line-oriented text formats. Numbers are "p/q" (rationals) or "(c0, c1, ...)" power-basis
// tuples; '#' starts a comment line. Parse failures raise ErrorKind::Parse.

GroundNum parse_number(const Field& F, const std::string& s);

struct Context {
  Field field;
  Lattice lattice;
};

Context parse_context(const std::string& text);
std::string format_context(const Lattice& L);

enum class ElementKind { Iet, Flip };

struct Element {
  ElementKind kind;
  FlipMap map;  // an iet element has no reversed interval

  static Element iet(const IetMap& f) { return {ElementKind::Iet, FlipMap::embed(f)}; }
  static Element flip(const FlipMap& f) { return {ElementKind::Flip, f}; }
  // KindMismatch unless the element is of kind iet.
  IetMap as_iet() const;
};

Element parse_element(const Lattice& L, const std::string& text);
std::string format_element(const Element& e);

// Documents separated by a line "---". An empty text is the empty list.
std::vector<Element> parse_element_list(const Lattice& L, const std::string& text);
std::string format_element_list(const std::vector<Element>& es);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Graph of f (sources on the x-axis, arrivals on the y-axis) over its shaded inversion set.
std::string render_svg(const FlipMap& f);

}  // namespace ietab
