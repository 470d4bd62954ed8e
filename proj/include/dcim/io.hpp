// dcim - immersions of Delta-complexes via presented inverse monoids
//
// JSON interchange for complexes, cell maps and automata; DOT export.
//
// Complex:  {"name": s, "dimension": n,
//            "cells": {"0": [{"id"}...], "k": [{"id", "faces": [d0..dk], "label"}...]}}
// Cell map: {"0": {"v": "u", ...}, "1": {...}, ...}

#ifndef DCIM_IO_HPP_
#define DCIM_IO_HPP_

#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "automata.hpp"
#include "complex.hpp"
#include "coset.hpp"
#include "core.hpp"
#include "immersion.hpp"

namespace dcim {

  using Json = nlohmann::ordered_json;

  inline DeltaComplex complex_from_json(nlohmann::json const& j) {
    try {
      std::string name = j.value("name", std::string("complex"));
      auto const& cj   = j.at("cells");
      std::size_t n    = 0;
      if (j.contains("dimension")) {
        n = j.at("dimension").get<std::size_t>();
      } else {
        for (auto it = cj.begin(); it != cj.end(); ++it) {
          n = std::max<std::size_t>(n, std::stoul(it.key()));
        }
      }
      for (auto it = cj.begin(); it != cj.end(); ++it) {
        std::size_t k = 0;
        try {
          k = std::stoul(it.key());
        } catch (std::exception const&) {
          throw Error(Errc::syntax, "dimension key '" + it.key() + "' is not an integer");
        }
        if (k > n) {
          throw Error(Errc::invalid_complex,
                      "cells of dimension " + it.key() + " exceed the declared dimension");
        }
      }
      std::vector<std::vector<Cell>> cells(n + 1);
      std::vector<std::map<std::string, std::size_t>> where(n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        auto key = std::to_string(k);
        if (!cj.contains(key)) {
          continue;
        }
        for (auto const& c : cj.at(key)) {
          Cell cell;
          cell.id = c.at("id").get<std::string>();
          if (k > 0) {
            for (auto const& face : c.at("faces")) {
              auto id = face.get<std::string>();
              auto it = where[k - 1].find(id);
              if (it == where[k - 1].end()) {
                throw Error(Errc::invalid_complex, "E_BAD_FACE: cell '" + cell.id
                                                       + "' names unknown face '" + id + "'");
              }
              cell.faces.push_back(it->second);
            }
            cell.label = c.value("label", std::string());
          }
          where[k].emplace(cell.id, cells[k].size());
          cells[k].push_back(std::move(cell));
        }
      }
      return DeltaComplex(std::move(name), std::move(cells));
    } catch (nlohmann::json::exception const& e) {
      throw Error(Errc::syntax, std::string("malformed complex JSON: ") + e.what());
    }
  }

  inline Json complex_to_json(DeltaComplex const& c) {
    Json j;
    j["name"]      = c.name();
    j["dimension"] = c.dimension();
    Json cells     = Json::object();
    for (std::size_t k = 0; k <= c.dimension(); ++k) {
      Json list = Json::array();
      for (auto const& cell : c.cells(k)) {
        Json cj;
        cj["id"] = cell.id;
        if (k > 0) {
          Json faces = Json::array();
          for (std::size_t f : cell.faces) {
            faces.push_back(c.cell(k - 1, f).id);
          }
          cj["faces"] = std::move(faces);
          cj["label"] = cell.label;
        }
        list.push_back(std::move(cj));
      }
      cells[std::to_string(k)] = std::move(list);
    }
    j["cells"] = std::move(cells);
    return j;
  }

  inline nlohmann::json read_json(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error(Errc::io, "cannot open '" + path + "'");
    }
    try {
      return nlohmann::json::parse(in);
    } catch (nlohmann::json::exception const& e) {
      throw Error(Errc::syntax, "'" + path + "': " + e.what());
    }
  }

  inline DeltaComplex read_complex(std::string const& path) {
    return complex_from_json(read_json(path));
  }

  inline Json cellmap_to_json(CellMap const& f) {
    Json j = Json::object();
    for (std::size_t k = 0; k < f.assignment.size(); ++k) {
      Json dim = Json::object();
      for (std::size_t n = 0; n < f.assignment[k].size(); ++n) {
        dim[f.source->cell(k, n).id] = f.target->cell(k, f(k, n)).id;
      }
      j[std::to_string(k)] = std::move(dim);
    }
    return j;
  }

  inline CellMap cellmap_from_json(nlohmann::json const&               j,
                                   std::shared_ptr<DeltaComplex const> source,
                                   std::shared_ptr<DeltaComplex const> target) {
    std::vector<std::vector<std::size_t>> f(source->dimension() + 1);
    for (std::size_t k = 0; k <= source->dimension(); ++k) {
      f[k].assign(source->count(k), no_vertex);
      auto key = std::to_string(k);
      if (!j.contains(key)) {
        continue;
      }
      for (auto it = j.at(key).begin(); it != j.at(key).end(); ++it) {
        auto s = source->find(k, it.key());
        auto t = target->find(k, it.value().get<std::string>());
        if (!s || !t) {
          throw Error(Errc::invalid_complex, "map entry '" + it.key() + "' names an unknown cell");
        }
        f[k][*s] = *t;
      }
    }
    return CellMap{std::move(source), std::move(target), std::move(f)};
  }

  inline Json alphabet_to_json(Alphabet const& a) {
    Json j;
    j["x"]   = a.x_letters();
    Json p   = Json::object();
    for (auto const& [name, k] : a.p_letters()) {
      p[name] = k;
    }
    j["p"] = std::move(p);
    return j;
  }

  inline std::string letter_text(Alphabet const& a, Letter l) {
    return a.name(l) + (l.inverted() ? "'" : "");
  }

  inline Json automaton_to_json(InverseAutomaton const& a) {
    Json j;
    j["alphabet"] = alphabet_to_json(a.alphabet());
    j["vertices"] = a.vertex_count();
    Json edges    = Json::array();
    for (Edge const& e : a.edges()) {
      edges.push_back(Json{{"source", e.source},
                           {"label", letter_text(a.alphabet(), e.letter)},
                           {"target", e.target}});
    }
    j["edges"] = std::move(edges);
    j["start"] = a.start();
    j["end"]   = a.end();
    return j;
  }

  inline Json coset_to_json(CosetAutomaton const& h) {
    Json j    = automaton_to_json(h.graph);
    Json reps = Json::array();
    for (auto const& w : h.representatives) {
      reps.push_back(format_word(w, h.graph.alphabet()));
    }
    j["representatives"] = std::move(reps);
    return j;
  }

  //! Start is a double circle, end has a bold border; cell-letter edges are
  //! undirected. `names`, if non-empty, supplies vertex captions.
  inline std::string automaton_to_dot(InverseAutomaton const&         a,
                                      std::vector<std::string> const& names = {}) {
    std::ostringstream out;
    out << "digraph automaton {\n";
    out << "  node [shape=circle];\n";
    for (std::size_t v = 0; v < a.vertex_count(); ++v) {
      out << "  " << v << " [";
      if (v == a.start()) {
        out << "shape=doublecircle, ";
      }
      if (v == a.end()) {
        out << "style=bold, ";
      }
      std::string caption = v < names.size() ? names[v] : std::to_string(v);
      out << "label=\"" << caption << "\"];\n";
    }
    for (Edge const& e : a.edges()) {
      out << "  " << e.source << " -> " << e.target << " [label=\""
          << letter_text(a.alphabet(), e.letter) << "\"";
      if (e.letter.is_p()) {
        out << ", dir=none";
      }
      out << "];\n";
    }
    out << "}\n";
    return out.str();
  }

  inline Json diagnostics_to_json(Diagnostics const& d) {
    Json j = Json::array();
    for (auto const& x : d) {
      j.push_back(Json{{"code", x.code}, {"message", x.message}, {"cells", x.cells}});
    }
    return j;
  }

}  // namespace dcim

#endif  // DCIM_IO_HPP_
