// dcim command-line front end.
//
// Exit codes: 0/1 answer boolean queries, 2 reports an error. Errors go to
// stderr as one line "E_CODE: message".

#include <cstddef>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dcim/dcim.hpp>

namespace {

  using namespace dcim;

  constexpr int exit_true  = 0;
  constexpr int exit_false = 1;
  constexpr int exit_error = 2;

  struct Options {
    bool                     verbose    = false;
    std::size_t              max_rounds = ClosureConfig{}.max_rounds;
    std::string              format     = "json";
    std::string              file;
    std::string              target;
    std::string              w1;
    std::string              w2;
    std::string              at;
    std::string              map;
    std::string              out;
    std::string              map_out;
    std::vector<std::string> gens;
    std::vector<std::string> gens_h;
    std::vector<std::string> gens_k;
  };

  ClosureConfig config(Options const& o) {
    return ClosureConfig{o.max_rounds};
  }

  void write_text(std::string const& path, std::string const& text) {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) {
      throw Error(Errc::io, "cannot write '" + path + "'");
    }
  }

  std::string dump(Json const& j) {
    return j.dump(2) + "\n";
  }

  int answer(Options const& o, bool value) {
    if (o.verbose) {
      std::cout << (value ? "true" : "false") << "\n";
    }
    return value ? exit_true : exit_false;
  }

  std::vector<Word> parse_words(std::vector<std::string> const& texts, Alphabet const& a) {
    std::vector<Word> out;
    for (auto const& t : texts) {
      out.push_back(parse_word(t, a));
    }
    return out;
  }

  std::pair<std::string, std::string> split_pin(std::string const& at) {
    auto eq = at.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == at.size()) {
      throw Error(Errc::usage, "--at expects <v>=<u>, got '" + at + "'");
    }
    return {at.substr(0, eq), at.substr(eq + 1)};
  }

  std::shared_ptr<LabeledComplex const> load_labeled(std::string const& path) {
    return std::make_shared<LabeledComplex const>(read_complex(path));
  }

  SubmonoidSpec submonoid(std::shared_ptr<LabeledComplex const> const& c,
                          std::string const&                           at,
                          std::vector<std::string> const&              gens) {
    return SubmonoidSpec{c, c->complex().vertex_index(at), parse_words(gens, c->alphabet())};
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  int run_validate(Options const& o) {
    auto diags = validate(read_complex(o.file));
    for (auto const& d : diags) {
      std::cerr << d.code << ": " << d.message << "\n";
    }
    if (!diags.empty()) {
      return exit_error;
    }
    if (o.verbose) {
      std::cout << "valid\n";
    }
    return exit_true;
  }

  int run_labels(Options const& o) {
    auto c = read_complex(o.file);
    detail::throw_if(validate_structure(c), "invalid complex '" + c.name() + "'");
    auto [base, labelled] = canonical_labeling(c);
    Json j;
    j["base"]    = complex_to_json(base.complex());
    j["complex"] = complex_to_json(labelled);
    std::cout << dump(j);
    return exit_true;
  }

  int run_word(Options const& o, bool equality) {
    Presentation p(BaseComplex(read_complex(o.file)));
    Word         u = parse_word(o.w1, p.alphabet());
    Word         w = parse_word(o.w2, p.alphabet());
    return answer(o, equality ? m_equal(p, u, w, config(o)) : m_leq(p, u, w, config(o)));
  }

  int run_schutz(Options const& o) {
    Presentation p(BaseComplex(read_complex(o.file)));
    auto         a = schutzenberger(p, parse_word(o.w1, p.alphabet()), config(o));
    std::cout << (o.format == "dot" ? automaton_to_dot(a) : dump(automaton_to_json(a)));
    return exit_true;
  }

  int run_pi1(Options const& o) {
    std::cout << pi1_presentation(BaseComplex(read_complex(o.file))).to_string() << "\n";
    return exit_true;
  }

  CellMap immersion_map(Options const& o) {
    auto c = load_labeled(o.target);
    auto d = std::make_shared<DeltaComplex const>(
        LabeledComplex(read_complex(o.file), c->base()).complex());
    auto target        = std::make_shared<DeltaComplex const>(c->complex());
    auto [v_id, u_id]  = split_pin(o.at);
    std::size_t v      = d->vertex_index(v_id);
    std::size_t u      = target->vertex_index(u_id);
    if (!o.map.empty()) {
      CellMap f = cellmap_from_json(read_json(o.map), d, target);
      if (f(0, v) != u) {
        throw Error(Errc::usage, "--map disagrees with --at");
      }
      return f;
    }
    return infer_map(d, target, v, u);
  }

  int run_check_immersion(Options const& o) {
    std::optional<CellMap> f;
    try {
      f = immersion_map(o);
    } catch (Error const& e) {
      if (e.code() != Errc::no_such_map) {
        throw;
      }
      if (o.verbose) {
        std::cerr << code_name(e.code()) << ": " << e.what() << "\n";
      }
      return answer(o, false);
    }
    auto diags = check_immersion(*f);
    if (o.verbose) {
      for (auto const& d : diags) {
        std::cerr << d.code << ": " << d.message << "\n";
      }
    }
    return answer(o, diags.empty());
  }

  int run_is_covering(Options const& o) {
    return answer(o, is_covering(immersion_map(o)));
  }

  int run_coset_graph(Options const& o) {
    auto c = load_labeled(o.file);
    auto h = coset_automaton(submonoid(c, o.at, o.gens), config(o));
    if (o.format == "dot") {
      std::vector<std::string> names;
      for (auto const& w : h.representatives) {
        names.push_back(format_word(w, h.graph.alphabet()));
      }
      std::cout << automaton_to_dot(h.graph, names);
    } else {
      std::cout << dump(coset_to_json(h));
    }
    return exit_true;
  }

  int run_build(Options const& o) {
    auto c     = load_labeled(o.file);
    auto built = build_complex(submonoid(c, o.at, o.gens), config(o));
    write_text(o.out, dump(complex_to_json(*built.complex)));
    if (!o.map_out.empty()) {
      write_text(o.map_out, dump(cellmap_to_json(built.map)));
    }
    return exit_true;
  }

  int run_conjugate(Options const& o) {
    auto c       = load_labeled(o.file);
    auto witness = are_conjugate(submonoid(c, o.at, o.gens_h), submonoid(c, o.at, o.gens_k),
                                 config(o));
    std::cout << (witness ? format_word(*witness, c->alphabet()) : std::string("none")) << "\n";
    return exit_true;
  }

  std::string error_line(Error const& e) {
    std::string msg = e.what();
    if (e.code() == Errc::invalid_complex && msg.rfind("E_", 0) == 0) {
      return msg;
    }
    return std::string(code_name(e.code())) + ": " + msg;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Immersions of Delta-complexes via presented inverse monoids", "dcim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");
  Options o;
  app.add_flag("--verbose", o.verbose, "Print boolean answers and diagnostics");

  auto max_rounds = [&](CLI::App* s) {
    s->add_option("--max-rounds", o.max_rounds, "Closure round budget")
        ->check(CLI::PositiveNumber);
  };
  auto format = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "dot"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a complex, print diagnostics");
  validate_cmd->add_option("file", o.file, "Complex JSON")->required();

  auto* labels_cmd = app.add_subcommand("labels", "Emit the canonical labelling");
  labels_cmd->add_option("file", o.file, "Complex JSON")->required();

  auto* eq_cmd  = app.add_subcommand("word-eq", "Decide u = w in the monoid");
  auto* leq_cmd = app.add_subcommand("word-leq", "Decide u <= w in the monoid");
  for (auto* s : {eq_cmd, leq_cmd}) {
    s->add_option("base", o.file, "Base complex JSON")->required();
    s->add_option("w1", o.w1, "First word")->required();
    s->add_option("w2", o.w2, "Second word")->required();
    max_rounds(s);
  }

  auto* schutz_cmd = app.add_subcommand("schutz", "Emit the Schutzenberger automaton of a word");
  schutz_cmd->add_option("base", o.file, "Base complex JSON")->required();
  schutz_cmd->add_option("w", o.w1, "Word")->required();
  format(schutz_cmd);
  max_rounds(schutz_cmd);

  auto* pi1_cmd = app.add_subcommand("pi1", "Emit a fundamental group presentation");
  pi1_cmd->add_option("base", o.file, "Base complex JSON")->required();

  auto* imm_cmd = app.add_subcommand("check-immersion", "Decide whether D -> C is an immersion");
  auto* cov_cmd = app.add_subcommand("is-covering", "Decide whether D -> C is a covering");
  for (auto* s : {imm_cmd, cov_cmd}) {
    s->add_option("source", o.file, "Source complex D")->required();
    s->add_option("target", o.target, "Target complex C")->required();
    s->add_option("--at", o.at, "Pinned vertices <v>=<u>")->required();
    s->add_option("--map", o.map, "Explicit cell map JSON");
  }

  auto* coset_cmd = app.add_subcommand("coset-graph", "Emit the coset automaton of H");
  auto* build_cmd = app.add_subcommand("build", "Build C_H and its immersion into C");
  for (auto* s : {coset_cmd, build_cmd}) {
    s->add_option("file", o.file, "Complex JSON")->required();
    s->add_option("--at", o.at, "Base vertex u")->required();
    s->add_option("--gens", o.gens, "Generators of H")->required()->expected(1, -1);
    max_rounds(s);
  }
  format(coset_cmd);
  build_cmd->add_option("--out", o.out, "Write D here instead of stdout");
  build_cmd->add_option("--map-out", o.map_out, "Write the cell map here");

  auto* conj_cmd = app.add_subcommand("conjugate", "Find m with K = m' H m");
  conj_cmd->add_option("file", o.file, "Complex JSON")->required();
  conj_cmd->add_option("--at", o.at, "Base vertex u")->required();
  conj_cmd->add_option("--gens-h", o.gens_h, "Generators of H")->required()->expected(1, -1);
  conj_cmd->add_option("--gens-k", o.gens_k, "Generators of K")->required()->expected(1, -1);
  max_rounds(conj_cmd);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    std::cerr << "E_USAGE: " << e.what() << "\n";
    return exit_error;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(o);
    if (labels_cmd->parsed()) return run_labels(o);
    if (eq_cmd->parsed()) return run_word(o, true);
    if (leq_cmd->parsed()) return run_word(o, false);
    if (schutz_cmd->parsed()) return run_schutz(o);
    if (pi1_cmd->parsed()) return run_pi1(o);
    if (imm_cmd->parsed()) return run_check_immersion(o);
    if (cov_cmd->parsed()) return run_is_covering(o);
    if (coset_cmd->parsed()) return run_coset_graph(o);
    if (build_cmd->parsed()) return run_build(o);
    if (conj_cmd->parsed()) return run_conjugate(o);
  } catch (Error const& e) {
    std::cerr << error_line(e) << "\n";
    return exit_error;
  } catch (std::exception const& e) {
    std::cerr << "E_INTERNAL: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
