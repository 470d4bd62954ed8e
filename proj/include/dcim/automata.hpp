// dcim - immersions of Delta-complexes via presented inverse monoids
//
// Birooted inverse automata over X u P: linear and flower automata,
// Stallings-style folding, runs, acceptance and birooted isomorphism.

#ifndef DCIM_AUTOMATA_HPP_
#define DCIM_AUTOMATA_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "core.hpp"

namespace dcim {

  inline constexpr std::size_t no_vertex
      = std::numeric_limits<std::size_t>::max();

  //! An edge (source, letter, target). x-edges are kept with a positive
  //! letter; the inverse edge is implicit. Cell-letter edges are symmetric
  //! and kept once with source <= target.
  struct Edge {
    std::size_t source;
    Letter      letter;
    std::size_t target;

    friend bool operator==(Edge const&, Edge const&) = default;
  };

  class InverseAutomaton {
   public:
    InverseAutomaton() : InverseAutomaton(Alphabet(), 1, {}, 0, 0) {}

    InverseAutomaton(Alphabet          alphabet,
                     std::size_t       vertex_count,
                     std::vector<Edge> edges,
                     std::size_t       start,
                     std::size_t       end)
        : alphabet_(std::move(alphabet)),
          vertex_count_(vertex_count),
          start_(start),
          end_(end) {
      if (start >= vertex_count || end >= vertex_count) {
        throw Error(Errc::unknown_vertex, "root is not a vertex");
      }
      for (Edge& e : edges) {
        if (e.source >= vertex_count || e.target >= vertex_count) {
          throw Error(Errc::unknown_vertex, "edge endpoint is not a vertex");
        }
        if (e.letter.inverted()) {
          e = Edge{e.target, e.letter.inverse(), e.source};
        } else if (e.letter.is_p() && e.source > e.target) {
          std::swap(e.source, e.target);
        }
      }
      auto key = [this](Edge const& e) {
        return std::make_tuple(e.source, alphabet_.label(e.letter), e.target);
      };
      std::sort(edges.begin(), edges.end(), [&](Edge const& a, Edge const& b) {
        return key(a) < key(b);
      });
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      edges_ = std::move(edges);
      build_table();
    }

    Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }
    std::size_t vertex_count() const noexcept {
      return vertex_count_;
    }
    std::vector<Edge> const& edges() const noexcept {
      return edges_;
    }
    std::size_t start() const noexcept {
      return start_;
    }
    std::size_t end() const noexcept {
      return end_;
    }

    //! At most one edge with each label leaves and enters every vertex.
    bool deterministic() const noexcept {
      return deterministic_;
    }

    //! Target of the edge labelled `label` out of `v`, if any. Requires a
    //! deterministic automaton.
    std::optional<std::size_t> next(std::size_t v, LabelId label) const {
      require_deterministic();
      std::size_t t = table_[v * alphabet_.label_count() + label];
      if (t == no_vertex) {
        return std::nullopt;
      }
      return t;
    }

    //! Same edges and vertices, new roots.
    InverseAutomaton rerooted(std::size_t start, std::size_t end) const {
      return InverseAutomaton(alphabet_, vertex_count_, edges_, start, end);
    }

    void require_deterministic() const {
      if (!deterministic_) {
        throw Error(Errc::not_deterministic,
                    "operation requires a folded (deterministic) automaton");
      }
    }

   private:
    void build_table() {
      std::size_t const L = alphabet_.label_count();
      table_.assign(vertex_count_ * L, no_vertex);
      deterministic_ = true;
      auto set = [&](std::size_t v, LabelId l, std::size_t t) {
        std::size_t& slot = table_[v * L + l];
        if (slot != no_vertex && slot != t) {
          deterministic_ = false;
        }
        slot = t;
      };
      for (Edge const& e : edges_) {
        LabelId l = alphabet_.label(e.letter);
        set(e.source, l, e.target);
        set(e.target, alphabet_.inverse(l), e.source);
      }
    }

    Alphabet                 alphabet_;
    std::size_t              vertex_count_;
    std::vector<Edge>        edges_;
    std::size_t              start_;
    std::size_t              end_;
    std::vector<std::size_t> table_;
    bool                     deterministic_ = true;
  };

  namespace detail {

    // Mutable scratch graph for folding: union-find over vertices, one
    // row of out-neighbours per vertex (both directions of every edge are
    // recorded), and a FIFO worklist of pending identifications. Stale
    // row entries are resolved through find().
    class FoldingGraph {
     public:
      explicit FoldingGraph(Alphabet const& alphabet)
          : alphabet_(&alphabet), width_(alphabet.label_count()) {}

      std::size_t add_vertex() {
        std::size_t v = parent_.size();
        parent_.push_back(v);
        size_.push_back(1);
        rows_.resize(rows_.size() + width_, no_vertex);
        return v;
      }

      std::size_t size() const noexcept {
        return parent_.size();
      }

      std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
          parent_[v] = parent_[parent_[v]];
          v          = parent_[v];
        }
        return v;
      }

      bool is_rep(std::size_t v) const noexcept {
        return parent_[v] == v;
      }

      void add_edge(std::size_t p, LabelId l, std::size_t q) {
        set(find(p), l, q);
        set(find(q), alphabet_->inverse(l), p);
      }

      // Sews a fresh path labelled `labels` from p to q.
      void sew(std::size_t                 p,
               std::vector<LabelId> const& labels,
               std::size_t                 q) {
        if (labels.empty()) {
          identify(p, q);
          return;
        }
        std::size_t cur = p;
        for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
          std::size_t fresh = add_vertex();
          add_edge(cur, labels[i], fresh);
          cur = fresh;
        }
        add_edge(cur, labels.back(), q);
      }

      void identify(std::size_t a, std::size_t b) {
        pending_.emplace_back(a, b);
      }

      void fold() {
        while (!pending_.empty()) {
          auto [a, b] = pending_.front();
          pending_.pop_front();
          a = find(a);
          b = find(b);
          if (a == b) {
            continue;
          }
          if (size_[a] < size_[b]) {
            std::swap(a, b);
          }
          parent_[b] = a;
          size_[a] += size_[b];
          for (LabelId l = 0; l < width_; ++l) {
            std::size_t t = rows_[b * width_ + l];
            if (t != no_vertex) {
              set(a, l, t);
            }
          }
        }
      }

      // Requires fold() to have run.
      std::optional<std::size_t> next(std::size_t v, LabelId l) {
        std::size_t t = rows_[find(v) * width_ + l];
        if (t == no_vertex) {
          return std::nullopt;
        }
        return find(t);
      }

      // Canonical extraction: vertices are numbered in breadth-first order
      // from the start root, exploring labels in id order. Any vertices not
      // reachable from the start follow in index order. `renaming`, if
      // given, receives the new index of every old vertex.
      InverseAutomaton extract(std::size_t               start,
                               std::size_t               end,
                               std::vector<std::size_t>* renaming = nullptr) {
        fold();
        std::vector<std::size_t> fresh(parent_.size(), no_vertex);
        std::vector<std::size_t> order;
        auto visit = [&](std::size_t root) {
          if (fresh[root] != no_vertex) {
            return;
          }
          fresh[root] = order.size();
          order.push_back(root);
          for (std::size_t head = order.size() - 1; head < order.size();
               ++head) {
            std::size_t v = order[head];
            for (LabelId l = 0; l < width_; ++l) {
              auto t = next(v, l);
              if (t && fresh[*t] == no_vertex) {
                fresh[*t] = order.size();
                order.push_back(*t);
              }
            }
          }
        };
        visit(find(start));
        for (std::size_t v = 0; v < parent_.size(); ++v) {
          if (is_rep(v)) {
            visit(v);
          }
        }
        std::vector<Edge> edges;
        for (std::size_t v : order) {
          for (LabelId l = 0; l < width_; ++l) {
            Letter letter = alphabet_->letter(l);
            if (letter.inverted()) {
              continue;
            }
            if (auto t = next(v, l)) {
              edges.push_back(Edge{fresh[v], letter, fresh[*t]});
            }
          }
        }
        if (renaming != nullptr) {
          renaming->assign(parent_.size(), no_vertex);
          for (std::size_t v = 0; v < parent_.size(); ++v) {
            (*renaming)[v] = fresh[find(v)];
          }
        }
        return InverseAutomaton(*alphabet_,
                                order.size(),
                                std::move(edges),
                                fresh[find(start)],
                                fresh[find(end)]);
      }

     private:
      void set(std::size_t v, LabelId l, std::size_t t) {
        std::size_t& slot = rows_[v * width_ + l];
        if (slot == no_vertex) {
          slot = t;
        } else if (find(slot) != find(t)) {
          pending_.emplace_back(slot, t);
        }
      }

      Alphabet const*                                   alphabet_;
      std::size_t                                       width_;
      std::vector<std::size_t>                          parent_;
      std::vector<std::size_t>                          size_;
      std::vector<std::size_t>                          rows_;
      std::deque<std::pair<std::size_t, std::size_t>> pending_;
    };

    inline void load(FoldingGraph& g, InverseAutomaton const& a) {
      std::size_t base = g.size();
      for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        g.add_vertex();
      }
      for (Edge const& e : a.edges()) {
        g.add_edge(base + e.source,
                   a.alphabet().label(e.letter),
                   base + e.target);
      }
    }

    inline std::vector<LabelId> labels_of(Word const&     w,
                                          Alphabet const& alphabet) {
      std::vector<LabelId> out;
      out.reserve(w.size());
      for (Letter l : w) {
        out.push_back(alphabet.label(l));
      }
      return out;
    }

  }  // namespace detail

  //! A simple path spelling `w` from vertex 0 (start) to vertex |w| (end).
  inline InverseAutomaton linear_automaton(Word const&     w,
                                           Alphabet const& alphabet) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < w.size(); ++i) {
      edges.push_back(Edge{i, w[i], i + 1});
    }
    return InverseAutomaton(alphabet, w.size() + 1, std::move(edges), 0, w.size());
  }

  //! One base vertex 0 and, for each word, a fresh petal from the base back
  //! to the base. start = end = base.
  inline InverseAutomaton flower_automaton(std::vector<Word> const& words,
                                           Alphabet const&          alphabet) {
    std::vector<Edge> edges;
    std::size_t       count = 1;
    for (Word const& w : words) {
      std::size_t prev = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::size_t next = (i + 1 == w.size()) ? 0 : count++;
        edges.push_back(Edge{prev, w[i], next});
        prev = next;
      }
    }
    return InverseAutomaton(alphabet, count, std::move(edges), 0, 0);
  }

  //! Quotient by the least equivalence making the automaton deterministic
  //! and co-deterministic. Output vertices are in canonical BFS order.
  inline InverseAutomaton fold(InverseAutomaton const& a) {
    detail::FoldingGraph g(a.alphabet());
    detail::load(g, a);
    return g.extract(a.start(), a.end());
  }

  inline std::optional<std::size_t> run_from(InverseAutomaton const& a,
                                             std::size_t             v,
                                             Word const&             w) {
    if (v >= a.vertex_count()) {
      throw Error(Errc::unknown_vertex,
                  "vertex " + std::to_string(v) + " is not in the automaton");
    }
    a.require_deterministic();
    std::optional<std::size_t> cur = v;
    for (Letter l : w) {
      cur = a.next(*cur, a.alphabet().label(l));
      if (!cur) {
        break;
      }
    }
    return cur;
  }

  inline bool accepts(InverseAutomaton const& a, Word const& w) {
    auto v = run_from(a, a.start(), w);
    return v && *v == a.end();
  }

  //! Label-preserving isomorphism matching both roots, found by a
  //! synchronised breadth-first traversal from the start roots.
  inline bool birooted_isomorphic(InverseAutomaton const& a,
                                  InverseAutomaton const& b) {
    a.require_deterministic();
    b.require_deterministic();
    if (a.vertex_count() != b.vertex_count()
        || a.edges().size() != b.edges().size()
        || !(a.alphabet() == b.alphabet())) {
      return false;
    }
    std::size_t const        n = a.vertex_count();
    std::vector<std::size_t> fwd(n, no_vertex), bwd(n, no_vertex);
    std::deque<std::size_t>  queue;
    fwd[a.start()] = b.start();
    bwd[b.start()] = a.start();
    queue.push_back(a.start());
    std::size_t seen = 1;
    while (!queue.empty()) {
      std::size_t va = queue.front();
      queue.pop_front();
      std::size_t vb = fwd[va];
      for (LabelId l = 0; l < a.alphabet().label_count(); ++l) {
        auto na = a.next(va, l);
        auto nb = b.next(vb, l);
        if (na.has_value() != nb.has_value()) {
          return false;
        }
        if (!na) {
          continue;
        }
        if (fwd[*na] == no_vertex && bwd[*nb] == no_vertex) {
          fwd[*na] = *nb;
          bwd[*nb] = *na;
          queue.push_back(*na);
          ++seen;
        } else if (fwd[*na] != *nb || bwd[*nb] != *na) {
          return false;
        }
      }
    }
    return seen == n && fwd[a.end()] == b.end();
  }

}  // namespace dcim

#endif  // DCIM_AUTOMATA_HPP_
