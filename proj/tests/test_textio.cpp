#include <gtest/gtest.h>

#include "ietab/error.hpp"
#include "ietab/textio.hpp"
#include "support.hpp"

using namespace ietab;
using namespace testsupport;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST(TextIo, Numbers) {
  Field F = sqrt2_field();
  EXPECT_EQ(parse_number(F, "(1, -1)"), F.from_coords({Rational(1), Rational(-1)}));
  EXPECT_EQ(parse_number(F, " (2/4,3) "), F.from_coords({Rational(1, 2), Rational(3)}));
  EXPECT_EQ(parse_number(F, "-7/3"), F.from_rational(Rational(-7, 3)));
  EXPECT_EQ(parse_number(F, "(1/2, 0)").str(), "(1/2, 0)");
  for (const char* bad : {"", "(1)", "(1, 2, 3)", "1/0", "1/-2", "abc", "(1, x)", "(1, 2", "1.5"})
    EXPECT_EQ(kind_of([&] { parse_number(F, bad); }), ErrorKind::Parse) << bad;
}

TEST(TextIo, ContextRoundTrip) {
  std::string text =
      "# comment\nietabel-context 1\nminpoly: -2 0 1\ninterval: 1 2\ngenerator: (0, 1)\ngenerator: (1/2, 1)\n";
  Context c = parse_context(text);
  EXPECT_EQ(c.lattice.rank(), 2);
  EXPECT_TRUE(c.lattice.contains(c.field.from_rational(Rational(1, 2))));
  std::string once = format_context(c.lattice);
  EXPECT_EQ(format_context(parse_context(once).lattice), once);
  EXPECT_EQ(kind_of([] { parse_context("ietabel-context 1\nminpoly: -2 0 1\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_context("ietabel-context 1\nminpoly: -2 0 1\ninterval: 2 3\n"); }),
            ErrorKind::BadInterval);
  EXPECT_EQ(kind_of([] { parse_context("ietabel-context 1\nminpoly: -2 0 1\ninterval: 1 2\ncolour: red\n"); }),
            ErrorKind::Parse);
}

TEST(TextIo, ElementExamplesAndErrors) {
  Lattice L = z_sqrt2();
  Element t = parse_element(L, "ietabel-element 1\nkind: iet\nalpha: (-1, 1) (3, -2) (-1, 1)\ntau: 3 2 1\n");
  EXPECT_EQ(t.as_iet(), IetMap::transposition(L, q2(L, -1, 1), L.zero(), q2(L, 2, -1)));
  // Loading canonicalizes: two adjacent intervals moved together merge.
  Element m = parse_element(L, "ietabel-element 1\nkind: iet\nalpha: (-1, 1) (3, -2) (-1, 1)\ntau: 1 2 3\n");
  EXPECT_EQ(format_element(m), "ietabel-element 1\nkind: iet\nalpha: (1, 0)\ntau: 1\n");
  Element r = parse_element(L, "ietabel-element 1\nkind: flip\nalpha: (-2, 2) (3, -2)\ntau: 1 2\nsigns: -+\n");
  EXPECT_EQ(r.map, FlipMap::reflection(L, L.zero(), q2(L, -2, 2)));
  EXPECT_EQ(kind_of([&] { r.as_iet(); }), ErrorKind::KindMismatch);
  auto bad = [&](const std::string& body) { return kind_of([&] { parse_element(L, "ietabel-element 1\n" + body); }); };
  EXPECT_EQ(bad("kind: iet\nalpha: 1\ntau: 2\n"), ErrorKind::Parse);
  EXPECT_EQ(bad("kind: iet\nalpha: 1/2 1/2\ntau: 1 2\n"), ErrorKind::NotInLattice);
  EXPECT_EQ(bad("kind: iet\nalpha: (-1, 1) (-1, 1)\ntau: 1 2\n"), ErrorKind::OutOfRange);
  EXPECT_EQ(bad("kind: iet\nalpha: (-1, 1) (2, -1)\ntau: 1 1\n"), ErrorKind::OutOfRange);
  EXPECT_EQ(bad("kind: iet\nalpha: 1\ntau: 1\nsigns: +\n"), ErrorKind::Parse);
  EXPECT_EQ(bad("kind: flip\nalpha: 1\ntau: 1\n"), ErrorKind::Parse);
  EXPECT_EQ(bad("kind: flip\nalpha: 1\ntau: 1\nsigns: x\n"), ErrorKind::Parse);
  EXPECT_EQ(bad("kind: shape\nalpha: 1\ntau: 1\n"), ErrorKind::Parse);
}

TEST(TextIoProperty, SaveLoadSaveIsByteIdentical) {
  std::mt19937 rng(90);
  for (const Lattice& L : {z_sqrt2(), z_cbrt2(), one_over(12)}) {
    for (int it = 0; it < 40; ++it) {
      Element e = it % 2 ? Element::flip(random_flip(rng, L, 5, 12)) : Element::iet(random_iet(rng, L, 5, 12));
      std::string once = format_element(e);
      Element back = parse_element(L, once);
      EXPECT_EQ(back.map, e.map);
      EXPECT_EQ(format_element(back), once);
    }
    std::vector<Element> list;
    for (int it = 0; it < 3; ++it) list.push_back(Element::iet(random_iet(rng, L, 3, 12)));
    std::string s = format_element_list(list);
    EXPECT_EQ(format_element_list(parse_element_list(L, s)), s);
    EXPECT_TRUE(parse_element_list(L, "").empty());
  }
}

TEST(TextIo, SvgIsDeterministic) {
  Lattice L = z_sqrt2();
  FlipMap f = FlipMap::from_description(L, {q2(L, 3, -2), q2(L, -1, 1), q2(L, -1, 1)}, {2, 0, 1}, {true, false, true});
  std::string a = render_svg(f), b = render_svg(parse_element(L, format_element(Element::flip(f))).map);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_EQ(a.find("NaN"), std::string::npos);
  // One line per piece, one shaded rectangle per inversion rectangle.
  size_t lines = 0, rects = 0;
  for (size_t p = a.find("<line"); p != std::string::npos; p = a.find("<line", p + 1)) ++lines;
  for (size_t p = a.find("<rect"); p != std::string::npos; p = a.find("<rect", p + 1)) ++rects;
  EXPECT_EQ(lines, f.size());
  EXPECT_EQ(rects, inversion_set(f).rectangles().size() + 2);
}
