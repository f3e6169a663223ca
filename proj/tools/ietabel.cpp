// ietabel: command-line front end for the ietab library.
//
// Exit codes: 0 ok, 2 parse error, 3 semantic error, 4 budget exceeded, 1 internal failure.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <random>

#include "ietab/error.hpp"
#include "ietab/textio.hpp"

using namespace ietab;

namespace {

constexpr int kExitOk = 0, kExitInternal = 1, kExitParse = 2, kExitSemantic = 3, kExitBudget = 4;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return kExitParse;
    case ErrorKind::BudgetExceeded:
      return kExitBudget;
    case ErrorKind::Internal:
      return kExitInternal;
    default:
      return kExitSemantic;
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

Context load_context(const std::string& path) { return parse_context(read_text_file(path)); }

std::vector<Element> load_elements(const Lattice& L, const std::string& path) {
  return parse_element_list(L, read_text_file(path));
}

Element load_element(const Lattice& L, const std::string& path) {
  auto es = load_elements(L, path);
  if (es.size() != 1) fail(ErrorKind::Parse, path + " must hold exactly one element");
  return es[0];
}

// Product of all elements of all files, leftmost first (the last element acts first).
Element load_product(const Lattice& L, const std::vector<std::string>& paths) {
  std::vector<Element> es;
  for (const auto& p : paths)
    for (auto& e : load_elements(L, p)) es.push_back(std::move(e));
  if (es.empty()) fail(ErrorKind::Parse, "no elements given");
  Element acc = es[0];
  for (size_t i = 1; i < es.size(); ++i) {
    acc.map = compose(acc.map, es[i].map);
    if (es[i].kind == ElementKind::Flip) acc.kind = ElementKind::Flip;
  }
  return acc;
}

// Spaces and the torsion note dropped, for one-line verdict evidence.
std::string compact(std::string s) {
  const std::string note = " (torsion)";
  if (auto p = s.find(note); p != std::string::npos) s.erase(p, note.size());
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

Lattice preset_lattice(const std::string& preset, long denominator) {
  if (preset == "sqrt2") {
    Field F = Field::create({{-2, 0, 1}, Rational(1), Rational(2)});
    return Lattice::from_generators(F, {F.theta()});
  }
  if (preset == "cbrt2") {
    Field F = Field::create({{-2, 0, 0, 1}, Rational(1), Rational(2)});
    return Lattice::from_generators(F, {F.theta(), F.theta() * F.theta()});
  }
  if (preset == "rational") {
    if (denominator <= 0) fail(ErrorKind::OutOfRange, "denominator must be positive");
    Field F = Field::rationals();
    return Lattice::from_generators(F, {F.from_rational(Rational(1, denominator))});
  }
  fail(ErrorKind::Parse, "unknown preset '" + preset + "'");
}

std::vector<Element> factor_elements(const Lattice& L, const std::vector<Factor>& fs) {
  std::vector<Element> out;
  for (const auto& f : fs) out.push_back(Element::iet(f.map(L)));
  return out;
}

struct Check {
  std::string name;
  std::function<bool()> run;
};

// Quick exact identities over Z + sqrt2 Z; the full suites live in the test binaries.
int selftest() {
  Lattice L = preset_lattice("sqrt2", 0);
  const Field& F = L.field();
  auto q2 = [&](long a, long b) { return F.from_coords({Rational(a), Rational(b)}); };
  GroundNum l = q2(-1, 1);
  std::vector<Check> checks{
      {"transposition of type sqrt2-1 has zero SAF and nonzero signature",
       [&] {
         IetMap t = IetMap::transposition(L, l, L.zero(), q2(2, -1));
         return saf(t).is_zero() && !signature(t).is_zero();
       }},
      {"signature of a rotation is a^b",
       [&] {
         GroundNum a = q2(3, -2), b = q2(-7, 5);
         return signature(IetMap::restricted_rotation(L, a, b, L.zero())) == wedge(L, a, b);
       }},
      {"2 signature = -saf on random maps",
       [&] {
         std::mt19937 rng(7);
         for (int it = 0; it < 10; ++it) {
           std::vector<int> tau{0, 1, 2};
           std::shuffle(tau.begin(), tau.end(), rng);
           IetMap f = IetMap::from_description(L, {q2(3, -2), q2(-1, 1), q2(-1, 1)}, tau);
           SW2 s = signature(f);
           if (!(s + s + saf(f)).is_zero()) return false;
         }
         return true;
       }},
      {"order of the two-transposition example is 10",
       [&] {
         auto [f, g] = two_transposition_example(L, 10);
         return order(compose(g, f)) == Order::finite(10);
       }},
      {"psi of the reflection of type 2(sqrt2-1) is nonzero",
       [&] { return !psi(FlipMap::reflection(L, L.zero(), l + l)).value.is_zero(); }},
      {"reflection of type 12-8sqrt2 is in the derived subgroup",
       [&] { return in_derived_flip(FlipMap::reflection(L, L.zero(), q2(12, -8))); }},
      {"element text round trip",
       [&] {
         Element e = Element::flip(FlipMap::from_description(L, {q2(3, -2), q2(-2, 2)}, {1, 0}, {true, false}));
         std::string s = format_element(e);
         return format_element(parse_element(L, s)) == s;
       }},
  };
  int failed = 0;
  for (const auto& c : checks) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception&) {
      ok = false;
    }
    std::cout << (ok ? "PASS " : "FAIL ") << c.name << '\n';
    if (!ok) ++failed;
  }
  std::cout << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
  return failed ? kExitInternal : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants of interval exchanges and interval exchanges with flips"};
  app.require_subcommand(1);
  std::string out_path;
  std::function<int()> action;

  // ctx new
  auto* ctx = app.add_subcommand("ctx", "Context files");
  ctx->require_subcommand(1);
  auto* ctx_new = ctx->add_subcommand("new", "Write a context file");
  std::string preset, minpoly, interval;
  std::vector<std::string> gens;
  long denominator = 0;
  ctx_new->add_option("--preset", preset, "sqrt2, cbrt2 or rational");
  ctx_new->add_option("--denominator", denominator, "N for the rational preset, giving (1/N)Z");
  ctx_new->add_option("--minpoly", minpoly, "integer coefficients, constant term first");
  ctx_new->add_option("--interval", interval, "isolating interval 'lo hi'");
  ctx_new->add_option("--gen", gens, "lattice generator");
  ctx_new->add_option("-o,--out", out_path, "output file (default stdout)");
  ctx_new->callback([&] {
    action = [&] {
      if (!preset.empty()) {
        emit(out_path, format_context(preset_lattice(preset, denominator)));
        return kExitOk;
      }
      std::string text = "ietabel-context 1\nminpoly: " + minpoly + "\ninterval: " + interval + "\n";
      for (const auto& g : gens) text += "generator: " + g + "\n";
      emit(out_path, format_context(parse_context(text).lattice));
      return kExitOk;
    };
  });

  std::string ctx_path, elem_path, which, svg_path;
  std::vector<std::string> elem_paths;

  // elem check
  auto* elem = app.add_subcommand("elem", "Element files");
  elem->require_subcommand(1);
  auto* elem_check = elem->add_subcommand("check", "Validate and print the canonical form");
  elem_check->add_option("context", ctx_path)->required();
  elem_check->add_option("element", elem_path)->required();
  elem_check->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      std::cout << format_element_list(load_elements(L, elem_path));
      return kExitOk;
    };
  });

  auto* comp = app.add_subcommand("compose", "Product of the given elements, leftmost first");
  comp->add_option("context", ctx_path)->required();
  comp->add_option("elements", elem_paths)->required();
  comp->add_option("-o,--out", out_path, "output file (default stdout)");
  comp->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      emit(out_path, format_element(load_product(L, elem_paths)));
      return kExitOk;
    };
  });

  auto* inv = app.add_subcommand("inverse", "Inverse of an element");
  inv->add_option("context", ctx_path)->required();
  inv->add_option("element", elem_path)->required();
  inv->add_option("-o,--out", out_path, "output file (default stdout)");
  inv->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      Element e = load_element(L, elem_path);
      e.map = inverse(e.map);
      emit(out_path, format_element(e));
      return kExitOk;
    };
  });

  auto* invar = app.add_subcommand("invariant", "saf, eps (iet only), epsflip or psi");
  invar->add_option("context", ctx_path)->required();
  invar->add_option("element", elem_path)->required();
  invar->add_option("which", which)->required()->check(CLI::IsMember({"saf", "eps", "epsflip", "psi"}));
  invar->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      Element e = load_element(L, elem_path);
      if (which == "saf") std::cout << saf(e.as_iet()).str() << '\n';
      if (which == "eps") std::cout << signature(e.as_iet()).str() << '\n';
      if (which == "epsflip") std::cout << eps_flip(e.map).str() << '\n';
      if (which == "psi") std::cout << psi(e.map).value.str() << '\n';
      return kExitOk;
    };
  });

  auto* member = app.add_subcommand("member", "derived, kerphi (iet only) or kereps");
  member->add_option("context", ctx_path)->required();
  member->add_option("element", elem_path)->required();
  member->add_option("which", which)->required()->check(CLI::IsMember({"derived", "kerphi", "kereps"}));
  member->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      Element e = load_element(L, elem_path);
      auto verdict = [](bool v, const std::string& evidence) {
        std::cout << (v ? "true" : "false") << " (" << evidence << ")\n";
      };
      if (which == "kerphi") {
        SW2 s = saf(e.as_iet());
        verdict(s.is_zero(), "φ = " + compact(s.str()));
      } else if (e.kind == ElementKind::Iet) {
        // For IET(Γ) the signature kernel is the derived subgroup.
        SW2 s = signature(e.as_iet());
        verdict(s.is_zero(), "ε = " + compact(s.str()));
      } else if (which == "kereps") {
        T2Mod2 t = eps_flip(e.map);
        verdict(t.is_zero(), "ε⋈ = " + compact(t.str()));
      } else {
        AbImage im = ab_image(e.map);
        verdict(im.eps.is_zero() && im.psi.is_zero(), "ε⋈ = " + compact(im.eps.str()) + ", ψ = " + compact(im.psi.str()));
      }
      return kExitOk;
    };
  });

  auto* dec = app.add_subcommand("decompose", "rotations, balanced or small:EPS");
  dec->add_option("context", ctx_path)->required();
  dec->add_option("element", elem_path)->required();
  dec->add_option("which", which)->required();
  dec->add_option("-o,--out", out_path, "output file (default stdout)");
  dec->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      IetMap f = load_element(L, elem_path).as_iet();
      std::vector<Factor> fs;
      if (which == "rotations") {
        fs = decompose_rotations(f);
      } else if (which == "balanced") {
        fs = decompose_balanced(f);
      } else if (which.rfind("small:", 0) == 0) {
        fs = decompose_small(f, parse_number(L.field(), which.substr(6)));
      } else {
        fail(ErrorKind::Parse, "decomposition must be rotations, balanced or small:EPS");
      }
      if (recompose(L, fs) != f) fail(ErrorKind::Internal, "decomposition does not recompose");
      emit(out_path, format_element_list(factor_elements(L, fs)));
      return kExitOk;
    };
  });

  long budget = -1;
  auto* ord = app.add_subcommand("order", "Order of the product of the given elements");
  ord->add_option("context", ctx_path)->required();
  ord->add_option("elements", elem_paths)->required();
  ord->add_option("--budget", budget, "iteration budget (default: IETABEL_BUDGET or built-in)");
  ord->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      Element e = load_product(L, elem_paths);
      Order o = e.kind == ElementKind::Iet ? order(e.as_iet(), budget) : order_flip(e.map, budget);
      std::cout << o.str() << '\n';
      return kExitOk;
    };
  });

  std::string example_name;
  unsigned example_n = 0;
  auto* ex = app.add_subcommand("example", "two-transpositions-order N: writes g then f, whose product gf has order N");
  ex->add_option("context", ctx_path)->required();
  ex->add_option("name", example_name)->required()->check(CLI::IsMember({"two-transpositions-order"}));
  ex->add_option("n", example_n)->required();
  ex->add_option("-o,--out", out_path, "output file (default stdout)");
  ex->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      auto [f, g] = two_transposition_example(L, example_n);
      emit(out_path, format_element_list({Element::iet(g), Element::iet(f)}));
      return kExitOk;
    };
  });

  auto* ren = app.add_subcommand("render", "SVG of the graph and the inversion set");
  ren->add_option("context", ctx_path)->required();
  ren->add_option("element", elem_path)->required();
  ren->add_option("svg", svg_path)->required();
  ren->callback([&] {
    action = [&] {
      Lattice L = load_context(ctx_path).lattice;
      write_text_file(svg_path, render_svg(load_element(L, elem_path).map));
      return kExitOk;
    };
  });

  auto* st = app.add_subcommand("selftest", "Run a few exact identity checks");
  st->callback([&] { action = selftest; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}
