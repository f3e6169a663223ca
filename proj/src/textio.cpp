#include "ietab/textio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ietab/error.hpp"

namespace ietab {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::Parse, what); }

bool is_integer_literal(const std::string& s) {
  size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(const std::string& s) {
  std::string t = trim(s);
  if (!is_integer_literal(t)) parse_fail("not an integer: '" + s + "'");
  if (t[0] == '+') t = t.substr(1);
  return Integer(t, 10);
}

Rational parse_rational(const std::string& s) {
  std::string t = trim(s);
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(t));
  Integer p = parse_integer(t.substr(0, slash));
  std::string qs = trim(t.substr(slash + 1));
  if (!qs.empty() && (qs[0] == '-' || qs[0] == '+')) parse_fail("sign in denominator: '" + s + "'");
  Integer q = parse_integer(qs);
  if (q == 0) parse_fail("zero denominator: '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Whitespace-separated tokens, where a parenthesized tuple counts as one token.
std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    if (s[i] == '(') {
      j = s.find(')', i);
      if (j == std::string::npos) parse_fail("unbalanced parenthesis in '" + s + "'");
      ++j;
    } else {
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    }
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// "key: value" lines after a header line; repeated keys keep their order.
struct Doc {
  std::vector<std::pair<std::string, std::string>> fields;

  std::vector<std::string> all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : fields)
      if (k == key) out.push_back(v);
    return out;
  }
  std::string one(const std::string& key) const {
    auto v = all(key);
    if (v.size() != 1) parse_fail("expected exactly one '" + key + "' line");
    return v[0];
  }
};

Doc parse_doc(const std::string& text, const std::string& header, const std::vector<std::string>& keys) {
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  Doc d;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!seen_header) {
      if (t != header) parse_fail("expected header '" + header + "', got '" + t + "'");
      seen_header = true;
      continue;
    }
    auto colon = t.find(':');
    if (colon == std::string::npos) parse_fail("expected 'key: value', got '" + t + "'");
    std::string key = trim(t.substr(0, colon));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) parse_fail("unknown key '" + key + "'");
    d.fields.push_back({key, trim(t.substr(colon + 1))});
  }
  if (!seen_header) parse_fail("missing header '" + header + "'");
  return d;
}

const char* kContextHeader = "ietabel-context 1";
const char* kElementHeader = "ietabel-element 1";

}  // namespace

GroundNum parse_number(const Field& F, const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) parse_fail("empty number");
  if (t.front() != '(') return F.from_rational(parse_rational(t));
  if (t.back() != ')') parse_fail("unterminated tuple '" + s + "'");
  std::vector<Rational> c;
  std::string body = t.substr(1, t.size() - 2);
  size_t start = 0;
  for (;;) {
    size_t comma = body.find(',', start);
    c.push_back(parse_rational(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(c.size()) != F.degree())
    parse_fail("tuple '" + s + "' has " + std::to_string(c.size()) + " entries, field degree is " +
               std::to_string(F.degree()));
  return F.from_coords(std::move(c));
}

Context parse_context(const std::string& text) {
  Doc d = parse_doc(text, kContextHeader, {"minpoly", "interval", "generator"});
  FieldSpec spec;
  for (const auto& tok : split_tokens(d.one("minpoly"))) spec.minpoly.push_back(parse_integer(tok));
  auto iv = split_tokens(d.one("interval"));
  if (iv.size() != 2) parse_fail("interval needs two endpoints");
  spec.lo = parse_rational(iv[0]);
  spec.hi = parse_rational(iv[1]);
  Field F = Field::create(spec);
  std::vector<GroundNum> gens;
  for (const auto& g : d.all("generator")) gens.push_back(parse_number(F, g));
  return {F, Lattice::from_generators(F, gens)};
}

std::string format_context(const Lattice& L) {
  const FieldSpec& spec = L.field().spec();
  std::ostringstream os;
  os << kContextHeader << "\nminpoly:";
  for (const auto& c : spec.minpoly) os << ' ' << c.get_str();
  os << "\ninterval: " << spec.lo.get_str() << ' ' << spec.hi.get_str() << '\n';
  for (const auto& b : L.basis()) os << "generator: " << b.str() << '\n';
  return os.str();
}

IetMap Element::as_iet() const {
  if (kind != ElementKind::Iet) fail(ErrorKind::KindMismatch, "this operation needs an element of kind iet");
  return try_unflip(map);
}

Element parse_element(const Lattice& L, const std::string& text) {
  Doc d = parse_doc(text, kElementHeader, {"kind", "alpha", "tau", "signs"});
  std::string kind = d.one("kind");
  if (kind != "iet" && kind != "flip") parse_fail("kind must be iet or flip, got '" + kind + "'");
  std::vector<GroundNum> alpha;
  for (const auto& tok : split_tokens(d.one("alpha"))) {
    GroundNum a = parse_number(L.field(), tok);
    if (!L.contains(a)) fail(ErrorKind::NotInLattice, tok + " is not in the lattice");
    alpha.push_back(a);
  }
  std::vector<int> tau;
  for (const auto& tok : split_tokens(d.one("tau"))) {
    Integer v = parse_integer(tok);
    if (v < 1 || v > static_cast<long>(alpha.size())) parse_fail("tau entry out of range: " + tok);
    tau.push_back(static_cast<int>(v.get_si()) - 1);
  }
  if (tau.size() != alpha.size()) parse_fail("alpha and tau have different lengths");
  std::vector<bool> flips(alpha.size(), false);
  auto signs = d.all("signs");
  if (kind == "iet" && !signs.empty()) parse_fail("an iet element has no signs line");
  if (kind == "flip") {
    if (signs.size() != 1) parse_fail("a flip element needs one signs line");
    const std::string& s = signs[0];
    if (s.size() != alpha.size()) parse_fail("signs and alpha have different lengths");
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '+' && s[i] != '-') parse_fail("signs must be + or -");
      flips[i] = s[i] == '-';
    }
  }
  FlipMap f = FlipMap::from_description(L, alpha, tau, flips);
  return {kind == "iet" ? ElementKind::Iet : ElementKind::Flip, f};
}

std::string format_element(const Element& e) {
  std::ostringstream os;
  os << kElementHeader << "\nkind: " << (e.kind == ElementKind::Iet ? "iet" : "flip") << "\nalpha:";
  for (const auto& a : e.map.lengths()) os << ' ' << a.str();
  os << "\ntau:";
  for (int t : e.map.tau()) os << ' ' << t + 1;
  os << '\n';
  if (e.kind == ElementKind::Flip) {
    os << "signs: ";
    for (bool b : e.map.flips()) os << (b ? '-' : '+');
    os << '\n';
  }
  return os.str();
}

std::vector<Element> parse_element_list(const Lattice& L, const std::string& text) {
  std::vector<Element> out;
  std::istringstream in(text);
  std::string line, cur;
  bool any = false;
  auto flush = [&] {
    if (any) out.push_back(parse_element(L, cur));
    cur.clear();
    any = false;
  };
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t == "---") {
      flush();
      continue;
    }
    if (!t.empty() && t[0] != '#') any = true;
    cur += line + '\n';
  }
  flush();
  return out;
}

std::string format_element_list(const std::vector<Element>& es) {
  std::string out;
  for (size_t i = 0; i < es.size(); ++i) {
    if (i) out += "---\n";
    out += format_element(es[i]);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Parse, "cannot write " + path);
  out << text;
}

std::string render_svg(const FlipMap& f) {
  constexpr double kSize = 400, kMargin = 20;
  auto X = [&](double v) { return kMargin + kSize * v; };
  auto Y = [&](double v) { return kMargin + kSize * (1 - v); };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"440\" height=\"440\" "
        "viewBox=\"0 0 440 440\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"440\" height=\"440\" fill=\"white\"/>\n";
  os << "<g fill=\"#c6d4e8\" stroke=\"none\">\n";
  for (const auto& r : inversion_set(f).rectangles()) {
    double x0 = r.x.first.to_double(), x1 = r.x.second.to_double();
    double y0 = r.y.first.to_double(), y1 = r.y.second.to_double();
    os << "<rect x=\"" << fmt(X(x0)) << "\" y=\"" << fmt(Y(y1)) << "\" width=\"" << fmt(kSize * (x1 - x0))
       << "\" height=\"" << fmt(kSize * (y1 - y0)) << "\"/>\n";
  }
  os << "</g>\n";
  os << "<rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin) << "\" width=\"" << fmt(kSize) << "\" height=\""
     << fmt(kSize) << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  os << "<g stroke=\"#000000\" stroke-width=\"2\" stroke-linecap=\"butt\">\n";
  for (const auto& p : f.map().pieces()) {
    double s0 = p.src.to_double(), s1 = (p.src + p.len).to_double();
    double d0 = p.dst.to_double(), d1 = (p.dst + p.len).to_double();
    if (p.flip) std::swap(d0, d1);
    os << "<line x1=\"" << fmt(X(s0)) << "\" y1=\"" << fmt(Y(d0)) << "\" x2=\"" << fmt(X(s1)) << "\" y2=\""
       << fmt(Y(d1)) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace ietab
