// dcim - immersions of Delta-complexes via presented inverse monoids
//
// omega-coset automata of finitely generated closed inverse submonoids H of
// a loop monoid L(C, u), conjugacy of such submonoids, and the construction
// of the complex C_H together with its immersion into C.

#ifndef DCIM_COSET_HPP_
#define DCIM_COSET_HPP_

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "automata.hpp"
#include "complex.hpp"
#include "core.hpp"
#include "immersion.hpp"
#include "monoid.hpp"

namespace dcim {

  //! H = the smallest closed inverse submonoid containing `generators`,
  //! anchored at `base_vertex` of `ambient`.
  struct SubmonoidSpec {
    std::shared_ptr<LabeledComplex const> ambient;
    std::size_t                           base_vertex = 0;
    std::vector<Word>                     generators;
  };

  struct CosetAutomaton {
    InverseAutomaton  graph;            // start = end = H
    std::vector<Word> representatives;  // shortlex-least word reaching each vertex
    std::size_t       rounds = 0;       // closure rounds used
  };

  namespace detail {
    inline void require_loops(SubmonoidSpec const& spec) {
      if (!spec.ambient) {
        throw Error(Errc::usage, "submonoid has no ambient complex");
      }
      for (Word const& w : spec.generators) {
        if (!loop_contains(*spec.ambient, spec.base_vertex, w)) {
          throw Error(Errc::not_in_loop_monoid,
                      "generator '" + format_word(w, spec.ambient->alphabet())
                          + "' does not label a loop at '"
                          + spec.ambient->complex().cell(0, spec.base_vertex).id + "'");
        }
      }
    }

    // Breadth-first from the start root with labels in id order, so the first
    // word reaching a vertex is its shortlex-least label.
    inline std::vector<Word> representatives(InverseAutomaton const& g) {
      std::vector<Word>        reps(g.vertex_count());
      std::vector<bool>        seen(g.vertex_count(), false);
      std::deque<std::size_t> queue{g.start()};
      seen[g.start()] = true;
      while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (LabelId l = 0; l < g.alphabet().label_count(); ++l) {
          auto t = g.next(v, l);
          if (t && !seen[*t]) {
            seen[*t] = true;
            reps[*t] = reps[v] * Word{g.alphabet().letter(l)};
            queue.push_back(*t);
          }
        }
      }
      return reps;
    }
  }  // namespace detail

  //! Fold/expand closure of the flower automaton of the generators.
  inline CosetAutomaton coset_automaton(SubmonoidSpec const& spec, ClosureConfig const& cfg = {}) {
    detail::require_loops(spec);
    Presentation p(spec.ambient->base());
    auto         result = closure(p, flower_automaton(spec.generators, p.alphabet()), cfg);
    CosetAutomaton out{std::move(result.automaton), {}, result.rounds};
    out.representatives = detail::representatives(out.graph);
    return out;
  }

  inline bool contains(CosetAutomaton const& h, Word const& w) {
    return accepts(h.graph, w);
  }

  //! A word m in L(C, u) such that Gamma_H re-rooted at the vertex reached by
  //! m is birooted-isomorphic to Gamma_K, or nothing if H and K are not
  //! conjugate.
  inline std::optional<Word> are_conjugate(SubmonoidSpec const& h,
                                           SubmonoidSpec const& k,
                                           ClosureConfig const& cfg = {}) {
    if (h.ambient != k.ambient || h.base_vertex != k.base_vertex) {
      throw Error(Errc::usage, "conjugacy needs a shared ambient complex and base vertex");
    }
    auto gh = coset_automaton(h, cfg);
    auto gk = coset_automaton(k, cfg);
    if (gh.graph.vertex_count() != gk.graph.vertex_count()) {
      return std::nullopt;
    }
    for (std::size_t v = 0; v < gh.graph.vertex_count(); ++v) {
      Word const& m = gh.representatives[v];
      if (!loop_contains(*h.ambient, h.base_vertex, m)) {
        continue;
      }
      if (birooted_isomorphic(gh.graph.rerooted(v, v), gk.graph)) {
        return m;
      }
    }
    return std::nullopt;
  }

  struct BuiltComplex {
    std::shared_ptr<DeltaComplex const> complex;
    CellMap                             map;
    std::size_t                         base_vertex = 0;
    CosetAutomaton                      coset;
  };

  //! Builds C_H and the immersion f: C_H -> C with f(v) = u and
  //! L(C_H, v) = H. Vertices are the vertices of Gamma_H, 1-cells its
  //! positive x-edges, and a k-cell is attached at every rho-loop, with faces
  //! read off the ambient cell it lies over.
  inline BuiltComplex build_complex(SubmonoidSpec const& spec, ClosureConfig const& cfg = {}) {
    auto                    coset = coset_automaton(spec, cfg);
    auto const&             G     = coset.graph;
    auto const&             A     = G.alphabet();
    LabeledComplex const&   amb   = *spec.ambient;
    DeltaComplex const&     C     = amb.complex();
    std::size_t const       n     = C.dimension();

    // vertices and their images
    std::vector<std::size_t> f0(G.vertex_count(), no_vertex);
    f0[G.start()] = spec.base_vertex;
    std::deque<std::size_t> queue{G.start()};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (LabelId l = 0; l < A.label_count(); ++l) {
        auto t = G.next(v, l);
        if (!t) {
          continue;
        }
        auto image = amb.graph().next(f0[v], l);
        if (!image) {
          throw Error(Errc::lift_failure, "coset edge '" + A.name(A.letter(l))
                                              + "' has no counterpart in the ambient complex");
        }
        if (f0[*t] == no_vertex) {
          f0[*t] = *image;
          queue.push_back(*t);
        } else if (f0[*t] != *image) {
          throw Error(Errc::lift_failure, "coset vertex maps to two ambient vertices");
        }
      }
    }

    std::vector<std::vector<Cell>>        cells(n + 1);
    std::vector<std::vector<std::size_t>> f(n + 1);
    std::vector<std::string>              vid(G.vertex_count());
    for (std::size_t v = 0; v < G.vertex_count(); ++v) {
      vid[v] = format_word(coset.representatives[v], A);
      cells[0].push_back(Cell{vid[v], {}, {}});
      f[0].push_back(f0[v]);
    }
    // (dimension, label, root) -> cell of the new complex
    std::map<std::tuple<std::size_t, std::string, std::size_t>, std::size_t> rooted;
    for (std::size_t v = 0; v < G.vertex_count(); ++v) {
      for (std::uint32_t x = 0; x < A.x_size(); ++x) {
        Letter letter = Letter::x(x);
        auto   head   = G.next(v, A.label(letter));
        if (!head) {
          continue;
        }
        auto const& name = A.name(letter);
        auto        edge = amb.cell_at(1, name, 0, f0[v]);
        if (!edge) {
          throw Error(Errc::lift_failure, "no ambient edge '" + name + "' at the image vertex");
        }
        rooted.emplace(std::make_tuple(std::size_t{1}, name, v), cells[1].size());
        cells[1].push_back(Cell{name + "@" + vid[v], {*head, v}, name});
        f[1].push_back(*edge);
      }
    }
    for (std::size_t k = 2; k <= n; ++k) {
      for (std::size_t v = 0; v < G.vertex_count(); ++v) {
        for (std::uint32_t j = 0; j < A.p_size(); ++j) {
          Letter rho = Letter::p(j);
          if (A.dimension(rho) != k) {
            continue;
          }
          auto loop = G.next(v, A.label(rho));
          if (!loop) {
            continue;
          }
          if (*loop != v) {
            throw Error(Errc::lift_failure, "cell letter edge in the coset graph is not a loop");
          }
          auto const& name = A.name(rho);
          std::size_t matches = 0;
          std::size_t target  = 0;
          for (std::size_t c = 0; c < C.count(k); ++c) {
            if (C.cell(k, c).label == name && C.root(k, c) == f0[v]) {
              ++matches;
              target = c;
            }
          }
          if (matches == 0) {
            throw Error(Errc::lift_failure,
                        "no ambient " + std::to_string(k) + "-cell '" + name + "' rooted at '"
                            + C.cell(0, f0[v]).id + "'");
          }
          if (matches > 1) {
            throw Error(Errc::ambiguous_cell,
                        "several ambient cells '" + name + "' share a root");
          }
          Cell cell{name + "@" + vid[v], std::vector<std::size_t>(k + 1), name};
          auto const& amb_cell = C.cell(k, target);
          for (std::size_t i = 0; i <= k; ++i) {
            std::size_t root = v;
            if (i == 0) {
              auto e   = *A.find(C.cell(1, leading_edge(C, k, target)).label);
              auto hop = G.next(v, A.label(e));
              if (!hop) {
                throw Error(Errc::lift_failure, "leading edge of '" + name + "' is missing");
              }
              root = *hop;
            }
            auto const& face_label = C.cell(k - 1, amb_cell.faces[i]).label;
            auto        it         = rooted.find(std::make_tuple(k - 1, face_label, root));
            if (it == rooted.end()) {
              throw Error(Errc::lift_failure, "face " + std::to_string(i) + " of '" + name
                                                  + "' at '" + vid[v] + "' is missing");
            }
            cell.faces[i] = it->second;
          }
          rooted.emplace(std::make_tuple(k, name, v), cells[k].size());
          cells[k].push_back(std::move(cell));
          f[k].push_back(target);
        }
      }
    }
    while (cells.size() > 1 && cells.back().empty()) {
      cells.pop_back();
      f.pop_back();
    }
    auto complex = std::make_shared<DeltaComplex const>(C.name() + "_H", std::move(cells));
    auto target  = std::make_shared<DeltaComplex const>(C);
    BuiltComplex out{complex, CellMap{complex, target, std::move(f)}, G.start(), std::move(coset)};
    return out;
  }

}  // namespace dcim

#endif  // DCIM_COSET_HPP_
