// dcim - immersions of Delta-complexes via presented inverse monoids
//
// The inverse monoid M(X,P) with generators X u P and relations
// rho^2 = rho and rho = rho bl(rho) for each cell letter rho. Equality and
// the natural partial order are decided with Schutzenberger automata,
// computed by alternating full folds with full expansion sweeps.

#ifndef DCIM_MONOID_HPP_
#define DCIM_MONOID_HPP_

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "automata.hpp"
#include "complex.hpp"
#include "core.hpp"

namespace dcim {

  struct Relation {
    Word lhs;
    Word rhs;
  };

  class Presentation {
   public:
    Presentation() = default;

    explicit Presentation(BaseComplex base) : base_(std::move(base)) {
      auto const& A = base_.alphabet();
      for (std::uint32_t j = 0; j < A.p_size(); ++j) {
        Word rho{Letter::p(j)};
        relations_.push_back({rho, rho * rho});
        relations_.push_back({rho, rho * base_.boundary_label(Letter::p(j))});
      }
    }

    BaseComplex const& base() const noexcept {
      return base_;
    }
    Alphabet const& alphabet() const noexcept {
      return base_.alphabet();
    }
    std::vector<Relation> const& relations() const noexcept {
      return relations_;
    }

   private:
    BaseComplex           base_;
    std::vector<Relation> relations_;
  };

  inline Presentation relations(BaseComplex const& b) {
    return Presentation(b);
  }

  struct ClosureConfig {
    std::size_t max_rounds = 10000;
  };

  struct ClosureResult {
    InverseAutomaton automaton;
    std::size_t      rounds = 0;
  };

  namespace detail {

    struct Expansion {
      std::size_t          from;
      std::vector<LabelId> labels;  // remainder still to be sewn
      std::size_t          to;
    };

    // Runs `labels` from v as far as possible; returns (vertex, letters read).
    inline std::pair<std::size_t, std::size_t> partial_run(FoldingGraph&               g,
                                                           std::size_t                 v,
                                                           std::vector<LabelId> const& labels) {
      std::size_t i = 0;
      for (; i < labels.size(); ++i) {
        auto t = g.next(v, labels[i]);
        if (!t) {
          break;
        }
        v = *t;
      }
      return {v, i};
    }

    // Each round is one full fold followed by one full expansion sweep over
    // every vertex, relation and direction. A sweep is computed on the
    // folded graph and applied afterwards; a sweep with nothing to do is the
    // fixed point.
    inline ClosureResult close(Presentation const& p,
                               FoldingGraph&       g,
                               std::size_t         start,
                               std::size_t         end,
                               ClosureConfig const cfg) {
      if (cfg.max_rounds == 0) {
        throw Error(Errc::usage, "max_rounds must be at least 1");
      }
      auto const&                                                      A = p.alphabet();
      std::vector<std::pair<std::vector<LabelId>, std::vector<LabelId>>> rules;
      for (auto const& r : p.relations()) {
        auto lhs = labels_of(r.lhs, A);
        auto rhs = labels_of(r.rhs, A);
        rules.emplace_back(lhs, rhs);
        rules.emplace_back(rhs, lhs);
      }
      for (std::size_t round = 1; round <= cfg.max_rounds; ++round) {
        g.fold();
        std::vector<Expansion> todo;
        for (std::size_t v = 0; v < g.size(); ++v) {
          if (!g.is_rep(v)) {
            continue;
          }
          for (auto const& [r, s] : rules) {
            auto [q, read] = partial_run(g, v, r);
            if (read != r.size()) {
              continue;
            }
            auto [x, done] = partial_run(g, v, s);
            if (done == s.size() && x == q) {
              continue;
            }
            todo.push_back({x, std::vector<LabelId>(s.begin() + done, s.end()), q});
          }
        }
        if (todo.empty()) {
          return {g.extract(start, end), round};
        }
        for (auto const& e : todo) {
          g.sew(e.from, e.labels, e.to);
        }
      }
      throw Error(Errc::closure_budget_exceeded,
                  "no fixed point within " + std::to_string(cfg.max_rounds) + " rounds");
    }

  }  // namespace detail

  //! Closure of an arbitrary seed automaton (folded, then expanded to a
  //! fixed point). The roots are carried through.
  inline ClosureResult closure(Presentation const&     p,
                               InverseAutomaton const& seed,
                               ClosureConfig const&    cfg = {}) {
    if (!(seed.alphabet() == p.alphabet())) {
      throw Error(Errc::usage, "seed automaton is over a different alphabet");
    }
    detail::FoldingGraph g(p.alphabet());
    detail::load(g, seed);
    return detail::close(p, g, seed.start(), seed.end(), cfg);
  }

  inline ClosureResult schutzenberger_closure(Presentation const&  p,
                                              Word const&          w,
                                              ClosureConfig const& cfg = {}) {
    return closure(p, linear_automaton(w, p.alphabet()), cfg);
  }

  //! The Schutzenberger automaton A(w); its language is {u : u >= w}.
  inline InverseAutomaton schutzenberger(Presentation const&  p,
                                         Word const&          w,
                                         ClosureConfig const& cfg = {}) {
    return schutzenberger_closure(p, w, cfg).automaton;
  }

  //! Munn tree of a word over X u X^-1.
  inline InverseAutomaton munn_tree(Word const& w, Alphabet const& alphabet) {
    if (w.has_p_letter()) {
      throw Error(Errc::p_letter_present, "Munn trees are defined for words over X only");
    }
    return fold(linear_automaton(w, alphabet));
  }

  inline bool m_leq(Presentation const&  p,
                    Word const&          u,
                    Word const&          w,
                    ClosureConfig const& cfg = {}) {
    return accepts(schutzenberger(p, u, cfg), w);
  }

  inline bool m_equal(Presentation const&  p,
                      Word const&          u,
                      Word const&          w,
                      ClosureConfig const& cfg = {}) {
    return accepts(schutzenberger(p, u, cfg), w) && accepts(schutzenberger(p, w, cfg), u);
  }

  inline bool is_idempotent(Presentation const&  p,
                            Word const&          w,
                            ClosureConfig const& cfg = {}) {
    return m_equal(p, w, w * w, cfg);
  }

  //! Memoising front end: each Schutzenberger automaton is computed once per
  //! word; safe to share between threads.
  class WordProblem {
   public:
    explicit WordProblem(Presentation p, ClosureConfig cfg = {})
        : presentation_(std::move(p)), cfg_(cfg) {}

    Presentation const& presentation() const noexcept {
      return presentation_;
    }

    std::shared_ptr<ClosureResult const> closure(Word const& w) const {
      std::string key = format_word(w, presentation_.alphabet());
      {
        std::lock_guard<std::mutex> lock(mtx_);
        auto                        it = cache_.find(key);
        if (it != cache_.end()) {
          return it->second;
        }
      }
      auto result = std::make_shared<ClosureResult const>(
          schutzenberger_closure(presentation_, w, cfg_));
      std::lock_guard<std::mutex> lock(mtx_);
      max_rounds_ = std::max(max_rounds_, result->rounds);
      return cache_.emplace(key, result).first->second;
    }

    InverseAutomaton const& schutzenberger(Word const& w) const {
      return closure(w)->automaton;
    }

    bool leq(Word const& u, Word const& w) const {
      return accepts(closure(u)->automaton, w);
    }

    bool equal(Word const& u, Word const& w) const {
      return leq(u, w) && leq(w, u);
    }

    bool idempotent(Word const& w) const {
      return equal(w, w * w);
    }

    //! Largest number of closure rounds any cached computation needed.
    std::size_t max_rounds_seen() const {
      std::lock_guard<std::mutex> lock(mtx_);
      return max_rounds_;
    }

   private:
    Presentation                                                             presentation_;
    ClosureConfig                                                            cfg_;
    mutable std::mutex                                                       mtx_;
    mutable std::unordered_map<std::string, std::shared_ptr<ClosureResult const>> cache_;
    mutable std::size_t                                                      max_rounds_ = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Fundamental group presentation
  ////////////////////////////////////////////////////////////////////////

  struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<std::string> relators;

    std::string to_string() const {
      std::string out = "<";
      for (std::size_t i = 0; i < generators.size(); ++i) {
        out += (i == 0 ? "" : ", ") + generators[i];
      }
      out += " |";
      for (std::size_t i = 0; i < relators.size(); ++i) {
        out += (i == 0 ? " " : ", ") + relators[i];
      }
      out += relators.empty() ? " >" : ">";
      return out;
    }
  };

  //! <X | bl(rho) for each 2-cell rho>. No attempt is made to solve its word
  //! problem.
  inline GroupPresentation pi1_presentation(BaseComplex const& b) {
    GroupPresentation out;
    auto const&       A = b.alphabet();
    out.generators      = A.x_letters();
    for (std::uint32_t j = 0; j < A.p_size(); ++j) {
      if (A.p_letters()[j].second == 2) {
        out.relators.push_back(format_word(b.boundary_label(Letter::p(j)), A));
      }
    }
    return out;
  }

}  // namespace dcim

#endif  // DCIM_MONOID_HPP_
