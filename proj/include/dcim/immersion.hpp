// dcim - immersions of Delta-complexes via presented inverse monoids
//
// Cell maps between labelled complexes: inference from one vertex pair,
// immersion and covering checks, and isomorphism.

#ifndef DCIM_IMMERSION_HPP_
#define DCIM_IMMERSION_HPP_

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "core.hpp"

namespace dcim {

  //! Assignment of the cells of `source` to cells of `target`, one table per
  //! dimension: assignment[k][source index] = target index.
  struct CellMap {
    std::shared_ptr<DeltaComplex const>   source;
    std::shared_ptr<DeltaComplex const>   target;
    std::vector<std::vector<std::size_t>> assignment;

    std::size_t operator()(std::size_t k, std::size_t i) const {
      return assignment.at(k).at(i);
    }
  };

  namespace detail {
    inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
    edge_incidence(DeltaComplex const& d) {
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(d.count(0));
      for (std::size_t e = 0; e < d.count(1); ++e) {
        out[d.vertex(1, e, 0)].emplace_back(e, 0);
        out[d.vertex(1, e, 1)].emplace_back(e, 1);
      }
      return out;
    }

    inline std::size_t unique_star_cell(StarIndex const&   star,
                                        std::size_t        k,
                                        std::string const& label,
                                        std::size_t        i,
                                        std::size_t        v,
                                        std::string const& context) {
      auto it = star.find(StarKey{k, label, i, v});
      if (it == star.end()) {
        throw Error(Errc::no_such_map, context + ": no " + std::to_string(k) + "-cell labelled '"
                                           + label + "' at the image vertex");
      }
      if (it->second.size() > 1) {
        throw Error(Errc::no_such_map, context + ": the target is not deterministic at label '"
                                           + label + "'");
      }
      return it->second.front();
    }
  }  // namespace detail

  //! The unique label-preserving cell map with f(v) = u, extended over edges
  //! by matching labels and over higher cells by matching labels at roots.
  inline CellMap infer_map(std::shared_ptr<DeltaComplex const> d,
                           std::shared_ptr<DeltaComplex const> c,
                           std::size_t                         v,
                           std::size_t                         u) {
    if (v >= d->count(0) || u >= c->count(0)) {
      throw Error(Errc::unknown_vertex, "pinned vertex is not a 0-cell");
    }
    auto const star = detail::star_index(*c);
    auto const inc  = detail::edge_incidence(*d);

    std::vector<std::vector<std::size_t>> f(d->dimension() + 1);
    for (std::size_t k = 0; k <= d->dimension(); ++k) {
      f[k].assign(d->count(k), no_vertex);
    }
    if (d->dimension() > c->dimension() && d->count(d->dimension()) > 0) {
      throw Error(Errc::no_such_map, "source has higher dimension than target");
    }
    f[0][v] = u;
    std::deque<std::size_t> queue{v};
    while (!queue.empty()) {
      std::size_t a = queue.front();
      queue.pop_front();
      for (auto [e, i] : inc[a]) {
        std::size_t t = detail::unique_star_cell(star, 1, d->cell(1, e).label, i, f[0][a],
                                                 "edge '" + d->cell(1, e).id + "'");
        if (f[1][e] != no_vertex && f[1][e] != t) {
          throw Error(Errc::no_such_map, "edge '" + d->cell(1, e).id + "' has two images");
        }
        f[1][e]       = t;
        std::size_t b = d->vertex(1, e, 1 - i);
        std::size_t w = c->vertex(1, t, 1 - i);
        if (f[0][b] == no_vertex) {
          f[0][b] = w;
          queue.push_back(b);
        } else if (f[0][b] != w) {
          throw Error(Errc::no_such_map, "vertex '" + d->cell(0, b).id + "' has two images");
        }
      }
    }
    for (std::size_t a = 0; a < d->count(0); ++a) {
      if (f[0][a] == no_vertex) {
        throw Error(Errc::no_such_map, "source is not connected");
      }
    }
    for (std::size_t k = 2; k <= d->dimension(); ++k) {
      for (std::size_t n = 0; n < d->count(k); ++n) {
        f[k][n] = detail::unique_star_cell(star, k, d->cell(k, n).label, 0,
                                           f[0][d->root(k, n)],
                                           "cell '" + d->cell(k, n).id + "'");
      }
    }
    for (std::size_t k = 1; k <= d->dimension(); ++k) {
      for (std::size_t n = 0; n < d->count(k); ++n) {
        for (std::size_t i = 0; i <= k; ++i) {
          if (f[k - 1][d->face(k, n, i)] != c->face(k, f[k][n], i)) {
            throw Error(Errc::no_such_map,
                        "faces of cell '" + d->cell(k, n).id + "' do not commute with the map");
          }
        }
      }
    }
    return CellMap{std::move(d), std::move(c), std::move(f)};
  }

  //! Empty iff f is total, dimension-, face- and label-preserving, and
  //! locally injective at every source vertex: no two distinct cells with
  //! the same image have that vertex at the same position.
  inline Diagnostics check_immersion(CellMap const& f) {
    Diagnostics out;
    auto const& d = *f.source;
    auto const& c = *f.target;
    if (f.assignment.size() != d.dimension() + 1) {
      out.push_back({"E_MAP_PARTIAL", "map does not cover every dimension", {}});
      return out;
    }
    for (std::size_t k = 0; k <= d.dimension(); ++k) {
      if (f.assignment[k].size() != d.count(k)) {
        out.push_back({"E_MAP_PARTIAL", "map is not total in dimension " + std::to_string(k), {}});
        return out;
      }
      for (std::size_t n = 0; n < d.count(k); ++n) {
        if (f.assignment[k][n] >= c.count(k)) {
          out.push_back({"E_MAP_PARTIAL", "cell '" + d.cell(k, n).id + "' has no image",
                         {d.cell(k, n).id}});
          return out;
        }
      }
    }
    for (std::size_t k = 1; k <= d.dimension(); ++k) {
      for (std::size_t n = 0; n < d.count(k); ++n) {
        auto const& D = d.cell(k, n);
        auto const& C = c.cell(k, f(k, n));
        if (D.label != C.label) {
          out.push_back({"E_MAP_LABEL",
                         "cell '" + D.id + "' (" + D.label + ") maps to '" + C.id + "' ("
                             + C.label + ")",
                         {D.id, C.id}});
        }
        for (std::size_t i = 0; i <= k; ++i) {
          if (f(k - 1, D.faces[i]) != C.faces[i]) {
            out.push_back({"E_MAP_FACE",
                           "face " + std::to_string(i) + " of '" + D.id
                               + "' does not map to the matching face of '" + C.id + "'",
                           {D.id, C.id}});
          }
        }
      }
    }
    // (dimension, position, vertex, image) -> first source cell seen
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> seen;
    for (std::size_t k = 1; k <= d.dimension(); ++k) {
      for (std::size_t n = 0; n < d.count(k); ++n) {
        for (std::size_t i = 0; i <= k; ++i) {
          std::size_t v = d.vertex(k, n, i);
          auto [it, fresh] = seen.emplace(std::make_tuple(k, i, v, f(k, n)), n);
          if (!fresh && it->second != n) {
            out.push_back({"E_NOT_LOCALLY_INJECTIVE",
                           "at vertex '" + d.cell(0, v).id + "': cells '"
                               + d.cell(k, it->second).id + "' and '" + d.cell(k, n).id
                               + "' have the same image",
                           {d.cell(0, v).id, d.cell(k, it->second).id, d.cell(k, n).id}});
          }
        }
      }
    }
    return out;
  }

  //! True iff the immersion is star-surjective at every source vertex: each
  //! target cell having f(v) at position i is the image of a source cell
  //! having v at position i.
  inline bool is_covering(CellMap const& f) {
    auto diags = check_immersion(f);
    if (!diags.empty()) {
      throw Error(Errc::not_an_immersion, diags.front().code + ": " + diags.front().message);
    }
    auto const& d = *f.source;
    auto const& c = *f.target;
    // (dimension, position, target vertex) -> target cells there
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::set<std::size_t>> target_star;
    for (std::size_t k = 1; k <= c.dimension(); ++k) {
      for (std::size_t n = 0; n < c.count(k); ++n) {
        for (std::size_t i = 0; i <= k; ++i) {
          target_star[{k, i, c.vertex(k, n, i)}].insert(n);
        }
      }
    }
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::set<std::size_t>> lifted;
    for (std::size_t k = 1; k <= d.dimension(); ++k) {
      for (std::size_t n = 0; n < d.count(k); ++n) {
        for (std::size_t i = 0; i <= k; ++i) {
          lifted[{k, i, d.vertex(k, n, i)}].insert(f(k, n));
        }
      }
    }
    for (std::size_t v = 0; v < d.count(0); ++v) {
      std::size_t u = f(0, v);
      for (std::size_t k = 1; k <= c.dimension(); ++k) {
        for (std::size_t i = 0; i <= k; ++i) {
          auto it = target_star.find({k, i, u});
          if (it == target_star.end()) {
            continue;
          }
          auto jt = lifted.find({k, i, v});
          if (jt == lifted.end() || jt->second != it->second) {
            return false;
          }
        }
      }
    }
    return true;
  }

  namespace detail {
    inline bool bijective(CellMap const& f) {
      for (std::size_t k = 0; k < f.assignment.size(); ++k) {
        std::set<std::size_t> image(f.assignment[k].begin(), f.assignment[k].end());
        if (image.size() != f.target->count(k) || f.assignment[k].size() != f.target->count(k)) {
          return false;
        }
      }
      return f.source->dimension() == f.target->dimension()
             || f.target->count(f.target->dimension()) == 0;
    }
  }  // namespace detail

  //! An isomorphism d1 -> d2 (matching `pinned` if given), or nothing.
  inline std::optional<CellMap>
  complex_isomorphic(std::shared_ptr<DeltaComplex const>                d1,
                     std::shared_ptr<DeltaComplex const>                d2,
                     std::optional<std::pair<std::size_t, std::size_t>> pinned = std::nullopt) {
    if (d1->dimension() != d2->dimension()) {
      return std::nullopt;
    }
    for (std::size_t k = 0; k <= d1->dimension(); ++k) {
      if (d1->count(k) != d2->count(k)) {
        return std::nullopt;
      }
    }
    auto attempt = [&](std::size_t v, std::size_t u) -> std::optional<CellMap> {
      try {
        CellMap f = infer_map(d1, d2, v, u);
        if (detail::bijective(f)) {
          return f;
        }
      } catch (Error const& e) {
        if (e.code() != Errc::no_such_map) {
          throw;
        }
      }
      return std::nullopt;
    };
    if (pinned) {
      return attempt(pinned->first, pinned->second);
    }
    for (std::size_t v = 0; v < d1->count(0); ++v) {
      if (auto f = attempt(v, 0)) {
        return f;
      }
    }
    return std::nullopt;
  }

  //! For immersions f1: D1 -> C and f2: D2 -> C, an isomorphism h: D1 -> D2
  //! with f2 o h = f1, if one exists.
  inline std::optional<CellMap> equivalent_immersions(CellMap const& f1, CellMap const& f2) {
    auto const& d1 = f1.source;
    auto const& d2 = f2.source;
    if (d2->count(0) == 0) {
      return std::nullopt;
    }
    for (std::size_t v = 0; v < d1->count(0); ++v) {
      if (f1(0, v) != f2(0, 0)) {
        continue;
      }
      auto h = complex_isomorphic(d1, d2, std::make_pair(v, std::size_t{0}));
      if (!h) {
        continue;
      }
      bool commutes = true;
      for (std::size_t k = 0; k < h->assignment.size() && commutes; ++k) {
        for (std::size_t n = 0; n < h->assignment[k].size(); ++n) {
          if (f2(k, (*h)(k, n)) != f1(k, n)) {
            commutes = false;
            break;
          }
        }
      }
      if (commutes) {
        return h;
      }
    }
    return std::nullopt;
  }

}  // namespace dcim

#endif  // DCIM_IMMERSION_HPP_
