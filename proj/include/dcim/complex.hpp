// dcim - immersions of Delta-complexes via presented inverse monoids
//
// Semi-simplicial encoding of Delta-complexes. A k-cell stores its ordered
// face list [d_0, ..., d_k], where d_i is the (k-1)-cell opposite vertex v_i
// of the model simplex.

#ifndef DCIM_COMPLEX_HPP_
#define DCIM_COMPLEX_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "automata.hpp"
#include "core.hpp"

namespace dcim {

  struct Cell {
    std::string              id;
    std::vector<std::size_t> faces;  // indices into dimension k-1
    std::string              label;  // unused for 0-cells
  };

  struct Diagnostic {
    std::string              code;  // E_FACE_IDENTITY, E_LABEL_DETERMINISM, ...
    std::string              message;
    std::vector<std::string> cells;
  };

  using Diagnostics = std::vector<Diagnostic>;

  class DeltaComplex {
   public:
    DeltaComplex() = default;

    //! Structural checks only (face arity, face references, unique ids).
    //! Semantic invariants are reported by validate(). Empty labels default
    //! to the cell id.
    DeltaComplex(std::string name, std::vector<std::vector<Cell>> cells)
        : name_(std::move(name)), cells_(std::move(cells)) {
      if (cells_.empty() || cells_[0].empty()) {
        throw Error(Errc::invalid_complex, "a complex needs at least one 0-cell");
      }
      std::set<std::string> ids;
      for (std::size_t k = 0; k < cells_.size(); ++k) {
        for (std::size_t i = 0; i < cells_[k].size(); ++i) {
          Cell& c = cells_[k][i];
          if (!ids.insert(c.id).second) {
            throw Error(Errc::invalid_complex, "E_DUPLICATE_ID: cell id '" + c.id + "' is used twice");
          }
          index_.emplace(std::make_pair(k, c.id), i);
          if (k == 0) {
            if (!c.faces.empty()) {
              throw Error(Errc::invalid_complex, "E_BAD_FACE: 0-cell '" + c.id + "' has faces");
            }
            continue;
          }
          if (c.label.empty()) {
            c.label = c.id;
          }
          if (c.faces.size() != k + 1) {
            throw Error(Errc::invalid_complex,
                        "E_BAD_FACE: " + std::to_string(k) + "-cell '" + c.id + "' needs "
                            + std::to_string(k + 1) + " faces");
          }
          for (std::size_t f : c.faces) {
            if (f >= cells_[k - 1].size()) {
              throw Error(Errc::invalid_complex, "E_BAD_FACE: cell '" + c.id + "' has an unknown face");
            }
          }
        }
      }
      build_vertices();
    }

    std::string const& name() const noexcept {
      return name_;
    }

    std::size_t dimension() const noexcept {
      return cells_.size() - 1;
    }

    std::vector<Cell> const& cells(std::size_t k) const {
      return cells_.at(k);
    }

    std::size_t count(std::size_t k) const {
      return k < cells_.size() ? cells_[k].size() : 0;
    }

    Cell const& cell(std::size_t k, std::size_t i) const {
      return cells_.at(k).at(i);
    }

    std::size_t face(std::size_t k, std::size_t i, std::size_t j) const {
      return cells_.at(k).at(i).faces.at(j);
    }

    std::optional<std::size_t> find(std::size_t k, std::string const& id) const {
      auto it = index_.find(std::make_pair(k, id));
      if (it == index_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    std::size_t vertex_index(std::string const& id) const {
      auto v = find(0, id);
      if (!v) {
        throw Error(Errc::unknown_vertex, "no 0-cell '" + id + "' in " + name_);
      }
      return *v;
    }

    //! The 0-cell that is the image of v_j under the characteristic map of
    //! the k-cell i: vertex(C, j) = vertex(d_k C, j) for j < k and
    //! vertex(C, k) = vertex(d_0 C, k-1).
    std::size_t vertex(std::size_t k, std::size_t i, std::size_t j) const {
      if (j > k) {
        throw Error(Errc::index_out_of_range,
                    "vertex index " + std::to_string(j) + " exceeds cell dimension "
                        + std::to_string(k));
      }
      return vertices_.at(k).at(i)[j];
    }

    std::vector<std::size_t> const& vertices(std::size_t k, std::size_t i) const {
      return vertices_.at(k).at(i);
    }

    std::size_t root(std::size_t k, std::size_t i) const {
      return vertex(k, i, 0);
    }

    //! The cell spanned by the sorted vertex positions `positions` of the
    //! model simplex of the k-cell i; returns (dimension, index).
    std::pair<std::size_t, std::size_t> subcell(std::size_t              k,
                                                std::size_t              i,
                                                std::vector<std::size_t> positions) const {
      while (positions.size() < k + 1) {
        // delete the largest vertex not kept
        std::size_t m = k;
        while (std::find(positions.begin(), positions.end(), m) != positions.end()) {
          --m;
        }
        i = face(k, i, m);
        --k;
        for (auto& p : positions) {
          if (p > m) {
            --p;
          }
        }
      }
      return {k, i};
    }

   private:
    void build_vertices() {
      vertices_.resize(cells_.size());
      vertices_[0].resize(cells_[0].size());
      for (std::size_t i = 0; i < cells_[0].size(); ++i) {
        vertices_[0][i] = {i};
      }
      for (std::size_t k = 1; k < cells_.size(); ++k) {
        vertices_[k].resize(cells_[k].size());
        for (std::size_t i = 0; i < cells_[k].size(); ++i) {
          auto const& last  = vertices_[k - 1][cells_[k][i].faces[k]];
          auto const& first = vertices_[k - 1][cells_[k][i].faces[0]];
          std::vector<std::size_t> vs(last.begin(), last.end());
          vs.push_back(first[k - 1]);
          vertices_[k][i] = std::move(vs);
        }
      }
    }

    std::string                                                name_;
    std::vector<std::vector<Cell>>                             cells_;
    std::map<std::pair<std::size_t, std::string>, std::size_t> index_;
    std::vector<std::vector<std::vector<std::size_t>>>         vertices_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  //! Face identities, root coherence and connectivity of the 1-skeleton.
  inline Diagnostics validate_structure(DeltaComplex const& c) {
    Diagnostics out;
    for (std::size_t k = 2; k <= c.dimension(); ++k) {
      for (std::size_t n = 0; n < c.count(k); ++n) {
        auto const& C = c.cell(k, n);
        for (std::size_t j = 1; j <= k; ++j) {
          for (std::size_t i = 0; i < j; ++i) {
            std::size_t lhs = c.face(k - 1, C.faces[j], i);
            std::size_t rhs = c.face(k - 1, C.faces[i], j - 1);
            if (lhs != rhs) {
              out.push_back(
                  {"E_FACE_IDENTITY",
                   "cell '" + C.id + "': d" + std::to_string(i) + "(d" + std::to_string(j)
                       + ") = '" + c.cell(k - 2, lhs).id + "' but d" + std::to_string(j - 1)
                       + "(d" + std::to_string(i) + ") = '" + c.cell(k - 2, rhs).id + "'",
                   {C.id, c.cell(k - 2, lhs).id, c.cell(k - 2, rhs).id}});
            }
          }
        }
        for (std::size_t i = 0; i <= k; ++i) {
          std::size_t expect = c.vertex(k, n, i == 0 ? 1 : 0);
          if (c.root(k - 1, C.faces[i]) != expect) {
            out.push_back({"E_ROOT_COHERENCE",
                           "cell '" + C.id + "': face " + std::to_string(i) + " has the wrong root",
                           {C.id, c.cell(k - 1, C.faces[i]).id}});
          }
        }
      }
    }
    std::vector<std::size_t> parent(c.count(0));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) {
        v = parent[v] = parent[parent[v]];
      }
      return v;
    };
    std::size_t components = c.count(0);
    for (std::size_t e = 0; e < c.count(1); ++e) {
      std::size_t a = find(c.vertex(1, e, 0)), b = find(c.vertex(1, e, 1));
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components != 1) {
      out.push_back({"E_DISCONNECTED",
                     "the 1-skeleton has " + std::to_string(components) + " components",
                     {}});
    }
    return out;
  }

  namespace detail {
    // (dimension, label, vertex position, vertex) -> cells
    using StarKey   = std::tuple<std::size_t, std::string, std::size_t, std::size_t>;
    using StarIndex = std::map<StarKey, std::vector<std::size_t>>;

    inline StarIndex star_index(DeltaComplex const& c) {
      StarIndex out;
      for (std::size_t k = 1; k <= c.dimension(); ++k) {
        for (std::size_t n = 0; n < c.count(k); ++n) {
          for (std::size_t i = 0; i <= k; ++i) {
            auto& cells = out[StarKey{k, c.cell(k, n).label, i, c.vertex(k, n, i)}];
            if (std::find(cells.begin(), cells.end(), n) == cells.end()) {
              cells.push_back(n);
            }
          }
        }
      }
      return out;
    }

    inline void check_determinism(DeltaComplex const& c, Diagnostics& out) {
      for (auto const& [key, cells] : star_index(c)) {
        if (cells.size() > 1) {
          auto const& [k, label, i, v] = key;
          Diagnostic d{"E_LABEL_DETERMINISM",
                       "vertex '" + c.cell(0, v).id + "': " + std::to_string(cells.size())
                           + " distinct " + std::to_string(k) + "-cells labelled '" + label
                           + "' have it at position " + std::to_string(i),
                       {c.cell(0, v).id}};
          for (std::size_t n : cells) {
            d.cells.push_back(c.cell(k, n).id);
          }
          out.push_back(std::move(d));
        }
      }
    }
  }  // namespace detail

  //! Label syntax, label/dimension disjointness, face-compatibility of
  //! equally labelled cells, and label determinism at every vertex.
  inline Diagnostics validate_labels(DeltaComplex const& c) {
    Diagnostics                                                     out;
    std::map<std::string, std::size_t>                              dims;
    std::map<std::string, std::pair<std::size_t, std::size_t>>     first;
    for (std::size_t k = 1; k <= c.dimension(); ++k) {
      for (std::size_t n = 0; n < c.count(k); ++n) {
        auto const& C = c.cell(k, n);
        if (!is_identifier(C.label)) {
          out.push_back({"E_BAD_LABEL", "label '" + C.label + "' is not an identifier", {C.id}});
          continue;
        }
        auto [it, fresh] = dims.emplace(C.label, k);
        if (!fresh && it->second != k) {
          out.push_back({"E_LABEL_DIMENSION",
                         "label '" + C.label + "' is used in dimensions "
                             + std::to_string(it->second) + " and " + std::to_string(k),
                         {C.id}});
          continue;
        }
        if (k < 2) {
          continue;
        }
        auto [f, inserted] = first.emplace(C.label, std::make_pair(k, n));
        if (inserted) {
          continue;
        }
        auto const& R = c.cell(k, f->second.second);
        for (std::size_t i = 0; i <= k; ++i) {
          if (c.cell(k - 1, C.faces[i]).label != c.cell(k - 1, R.faces[i]).label) {
            out.push_back({"E_LABEL_FACE",
                           "cells '" + R.id + "' and '" + C.id + "' share label '" + C.label
                               + "' but face " + std::to_string(i) + " labels differ",
                           {R.id, C.id}});
          }
        }
      }
    }
    detail::check_determinism(c, out);
    return out;
  }

  inline Diagnostics validate(DeltaComplex const& c) {
    Diagnostics out = validate_structure(c);
    Diagnostics lab = validate_labels(c);
    out.insert(out.end(), lab.begin(), lab.end());
    return out;
  }

  namespace detail {
    inline void throw_if(Diagnostics const& d, std::string const& what) {
      if (!d.empty()) {
        throw Error(Errc::invalid_complex, d.front().code + ": " + what + ": " + d.front().message);
      }
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Boundary labels
  ////////////////////////////////////////////////////////////////////////

  //! The edge [v_0, v_1] of a k-cell, k >= 1.
  inline std::size_t leading_edge(DeltaComplex const& c, std::size_t k, std::size_t i) {
    return c.subcell(k, i, {0, 1}).second;
  }

  //! Boundary label over `alphabet` (cell labels are looked up by name).
  //! k = 2: l(d_2) l(d_0) l(d_1)^-1; k >= 3: l(d_k) ... l(d_1) l(e) l(d_0) l(e)^-1
  //! with e the edge [v_0, v_1].
  inline Word boundary_label(DeltaComplex const& c,
                             std::size_t         k,
                             std::size_t         i,
                             Alphabet const&     alphabet) {
    if (k < 2) {
      throw Error(Errc::dimension_too_low, "boundary labels need a cell of dimension >= 2");
    }
    auto letter = [&](std::size_t dim, std::size_t n) {
      auto const& name = c.cell(dim, n).label;
      auto        l    = alphabet.find(name);
      if (!l) {
        throw Error(Errc::unknown_letter, "unknown letter '" + name + "'");
      }
      return *l;
    };
    auto const& C = c.cell(k, i);
    Word        w;
    if (k == 2) {
      w.push_back(letter(1, C.faces[2]));
      w.push_back(letter(1, C.faces[0]));
      w.push_back(letter(1, C.faces[1]).inverse());
      return w;
    }
    for (std::size_t j = k; j >= 1; --j) {
      w.push_back(letter(k - 1, C.faces[j]));
    }
    Letter e = letter(1, leading_edge(c, k, i));
    w.push_back(e);
    w.push_back(letter(k - 1, C.faces[0]));
    w.push_back(e.inverse());
    return w;
  }

  ////////////////////////////////////////////////////////////////////////
  // Base complexes
  ////////////////////////////////////////////////////////////////////////

  //! A complex with exactly one 0-cell whose cell labels are their ids.
  //! X is the list of 1-cell ids, P_k the list of k-cell ids, in file order.
  class BaseComplex {
   public:
    BaseComplex() = default;

    explicit BaseComplex(DeltaComplex c) : complex_(std::move(c)) {
      if (complex_.count(0) != 1) {
        throw Error(Errc::invalid_complex,
                    "E_NOT_BASE: a base complex has exactly one 0-cell, '" + complex_.name()
                        + "' has " + std::to_string(complex_.count(0)));
      }
      std::vector<std::string>                          x;
      std::vector<std::pair<std::string, std::size_t>> p;
      for (std::size_t k = 1; k <= complex_.dimension(); ++k) {
        for (auto const& cell : complex_.cells(k)) {
          if (cell.label != cell.id) {
            throw Error(Errc::invalid_complex,
                        "E_NOT_BASE: base cell '" + cell.id + "' must be labelled by its id");
          }
          if (k == 1) {
            x.push_back(cell.id);
          } else {
            p.emplace_back(cell.id, k);
          }
        }
      }
      detail::throw_if(validate_structure(complex_), "invalid base complex");
      try {
        alphabet_ = Alphabet(std::move(x), std::move(p));
      } catch (Error const& e) {
        throw Error(Errc::invalid_complex, std::string("E_BAD_LABEL: ") + e.what());
      }
    }

    DeltaComplex const& complex() const noexcept {
      return complex_;
    }
    Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }

    //! The base cell carrying cell letter `l`, as (dimension, index).
    std::pair<std::size_t, std::size_t> cell_of(Letter l) const {
      std::size_t k = alphabet_.dimension(l);
      return {k, *complex_.find(k, alphabet_.name(l))};
    }

    Word boundary_label(Letter rho) const {
      auto [k, i] = cell_of(rho);
      return dcim::boundary_label(complex_, k, i, alphabet_);
    }

   private:
    DeltaComplex complex_;
    Alphabet     alphabet_;
  };

  //! The one-vertex complex obtained by identifying all 0-cells of `c` and
  //! all cells sharing a label. Requires consistent labels.
  inline BaseComplex induced_base(DeltaComplex const& c) {
    Diagnostics d = validate_labels(c);
    d.erase(std::remove_if(d.begin(), d.end(),
                           [](Diagnostic const& x) { return x.code == "E_LABEL_DETERMINISM"; }),
            d.end());
    detail::throw_if(d, "inconsistent labels in '" + c.name() + "'");
    std::set<std::string> labels;
    for (std::size_t k = 1; k <= c.dimension(); ++k) {
      for (auto const& cell : c.cells(k)) {
        labels.insert(cell.label);
      }
    }
    std::string vertex = "o";
    while (labels.count(vertex) != 0) {
      vertex += "_";
    }
    std::vector<std::vector<Cell>>                  cells(c.dimension() + 1);
    std::vector<std::map<std::string, std::size_t>> where(c.dimension() + 1);
    cells[0].push_back(Cell{vertex, {}, vertex});
    for (std::size_t k = 1; k <= c.dimension(); ++k) {
      for (auto const& C : c.cells(k)) {
        if (where[k].count(C.label) != 0) {
          continue;
        }
        Cell B{C.label, {}, C.label};
        for (std::size_t f : C.faces) {
          B.faces.push_back(k == 1 ? 0 : where[k - 1].at(c.cell(k - 1, f).label));
        }
        where[k].emplace(C.label, cells[k].size());
        cells[k].push_back(std::move(B));
      }
    }
    while (cells.size() > 1 && cells.back().empty()) {
      cells.pop_back();
    }
    return BaseComplex(DeltaComplex(c.name() + "_base", std::move(cells)));
  }

  //! Labels every cell by its own id and returns the induced base with the
  //! relabelled complex.
  inline std::pair<BaseComplex, DeltaComplex> canonical_labeling(DeltaComplex const& c) {
    detail::throw_if(validate_structure(c), "invalid complex '" + c.name() + "'");
    std::vector<std::vector<Cell>> cells;
    for (std::size_t k = 0; k <= c.dimension(); ++k) {
      cells.push_back(c.cells(k));
      for (auto& cell : cells.back()) {
        cell.label = k == 0 ? std::string() : cell.id;
      }
    }
    DeltaComplex relabelled(c.name(), std::move(cells));
    return {induced_base(relabelled), std::move(relabelled)};
  }

  //! Face-compatibility with `b` and label determinism at every vertex.
  inline Diagnostics check_labeling(DeltaComplex const& c, BaseComplex const& b) {
    Diagnostics out;
    auto const& base = b.complex();
    for (std::size_t k = 1; k <= c.dimension(); ++k) {
      for (auto const& C : c.cells(k)) {
        auto bi = base.find(k, C.label);
        if (!bi) {
          out.push_back({"E_LABEL_UNKNOWN",
                         "label '" + C.label + "' is not a " + std::to_string(k)
                             + "-cell of the base",
                         {C.id}});
          continue;
        }
        if (k < 2) {
          continue;
        }
        for (std::size_t i = 0; i <= k; ++i) {
          auto const& have = c.cell(k - 1, C.faces[i]).label;
          auto const& want = base.cell(k - 1, base.face(k, *bi, i)).id;
          if (have != want) {
            out.push_back({"E_LABEL_FACE",
                           "cell '" + C.id + "': face " + std::to_string(i) + " is labelled '"
                               + have + "' but the base expects '" + want + "'",
                           {C.id, c.cell(k - 1, C.faces[i]).id}});
          }
        }
      }
    }
    detail::check_determinism(c, out);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Labelled complexes and the action of words on vertices
  ////////////////////////////////////////////////////////////////////////

  //! A validated complex labelled over a base, with its (X u P)-graph:
  //! vertices are the 0-cells, x-edges the 1-cells, and each k-cell
  //! contributes a loop labelled by its cell letter at its root.
  class LabeledComplex {
   public:
    explicit LabeledComplex(DeltaComplex c) : LabeledComplex(c, induced_base(c)) {}

    LabeledComplex(DeltaComplex c, BaseComplex b) : complex_(std::move(c)), base_(std::move(b)) {
      detail::throw_if(validate_structure(complex_), "invalid complex '" + complex_.name() + "'");
      detail::throw_if(check_labeling(complex_, base_),
                       "invalid labelling of '" + complex_.name() + "'");
      auto const&       A = base_.alphabet();
      std::vector<Edge> edges;
      for (std::size_t k = 1; k <= complex_.dimension(); ++k) {
        for (std::size_t n = 0; n < complex_.count(k); ++n) {
          Letter l = *A.find(complex_.cell(k, n).label);
          if (k == 1) {
            edges.push_back(Edge{complex_.vertex(1, n, 0), l, complex_.vertex(1, n, 1)});
          } else {
            std::size_t r = complex_.root(k, n);
            edges.push_back(Edge{r, l, r});
          }
        }
      }
      graph_ = InverseAutomaton(A, complex_.count(0), std::move(edges), 0, 0);
      for (auto const& [key, cells] : detail::star_index(complex_)) {
        star_.emplace(key, cells.front());
      }
    }

    DeltaComplex const& complex() const noexcept {
      return complex_;
    }
    BaseComplex const& base() const noexcept {
      return base_;
    }
    Alphabet const& alphabet() const noexcept {
      return base_.alphabet();
    }
    InverseAutomaton const& graph() const noexcept {
      return graph_;
    }

    //! The unique k-cell labelled `label` with vertex `v` at position `i`.
    std::optional<std::size_t> cell_at(std::size_t        k,
                                       std::string const& label,
                                       std::size_t        i,
                                       std::size_t        v) const {
      auto it = star_.find(detail::StarKey{k, label, i, v});
      if (it == star_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

   private:
    DeltaComplex                            complex_;
    BaseComplex                             base_;
    InverseAutomaton                        graph_;
    std::map<detail::StarKey, std::size_t> star_;
  };

  //! v.w: x moves along the x-edge out of v, x^-1 along the x-edge into v,
  //! a cell letter fixes v iff some cell with that label is rooted at v.
  inline std::optional<std::size_t> act(LabeledComplex const& c, std::size_t v, Word const& w) {
    if (v >= c.complex().count(0)) {
      throw Error(Errc::unknown_vertex, "vertex " + std::to_string(v) + " is not a 0-cell");
    }
    return run_from(c.graph(), v, w);
  }

  inline bool loop_contains(LabeledComplex const& c, std::size_t v, Word const& w) {
    auto end = act(c, v, w);
    return end && *end == v;
  }

}  // namespace dcim

#endif  // DCIM_COMPLEX_HPP_
