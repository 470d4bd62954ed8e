#include <random>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include <dcim/io.hpp>
#include <dcim/monoid.hpp>

#include "oracles.hpp"

using namespace dcim;

namespace {

  BaseComplex load_base(std::string const& name) {
    return BaseComplex(read_complex(test::corpus_path(DCIM_CORPUS_DIR, name)));
  }

  std::string text(Word const& w, Presentation const& p) {
    return format_word(w, p.alphabet());
  }

  char const* const bases[] = {"bouquet_a", "bouquet_ab", "triangle_base", "torus",
                               "tetrahedron_base"};

  Word idempotent(std::mt19937& rng, std::vector<Letter> const& letters) {
    Word u = test::random_word(rng, letters, 4);
    return u * invert_word(u);
  }

  // A word accepted by `a`: a random walk from the start, then a shortest
  // path to the end.
  Word accepted_word(std::mt19937& rng, InverseAutomaton const& a) {
    Word        w;
    std::size_t v = a.start();
    for (int steps = std::uniform_int_distribution<int>(0, 6)(rng); steps > 0; --steps) {
      std::vector<LabelId> out;
      for (LabelId l = 0; l < a.alphabet().label_count(); ++l) {
        if (a.next(v, l)) {
          out.push_back(l);
        }
      }
      if (out.empty()) {
        break;
      }
      LabelId l = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
      w.push_back(a.alphabet().letter(l));
      v = *a.next(v, l);
    }
    std::vector<std::pair<std::size_t, LabelId>> prev(a.vertex_count(), {no_vertex, 0});
    std::vector<std::size_t>                     queue{v};
    std::vector<bool>                            seen(a.vertex_count(), false);
    seen[v] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (LabelId l = 0; l < a.alphabet().label_count(); ++l) {
        auto t = a.next(queue[i], l);
        if (t && !seen[*t]) {
          seen[*t] = true;
          prev[*t] = {queue[i], l};
          queue.push_back(*t);
        }
      }
    }
    std::vector<Letter> tail;
    for (std::size_t x = a.end(); x != v; x = prev[x].first) {
      tail.push_back(a.alphabet().letter(prev[x].second));
    }
    std::reverse(tail.begin(), tail.end());
    return w * Word(std::move(tail));
  }

}  // namespace

TEST(Relations, TriangleBase) {
  Presentation p(load_base("triangle_base"));
  ASSERT_EQ(p.relations().size(), 2u);
  EXPECT_EQ(text(p.relations()[0].lhs, p), "rho");
  EXPECT_EQ(text(p.relations()[0].rhs, p), "rho rho");
  EXPECT_EQ(text(p.relations()[1].rhs, p), "rho x y z'");
}

TEST(Relations, BouquetHasNone) {
  EXPECT_TRUE(relations(load_base("bouquet_ab")).relations().empty());
}

TEST(Relations, ThreeCell) {
  BaseComplex  b(DeltaComplex("rho_tau", {{{"o", {}, ""}},
                                          {{"x", {0, 0}, ""}},
                                          {{"rho", {0, 0, 0}, ""}},
                                          {{"tau", {0, 0, 0, 0}, ""}}}));
  Presentation p(b);
  bool         found = false;
  for (auto const& r : p.relations()) {
    found = found
            || (text(r.lhs, p) == "tau" && text(r.rhs, p) == "tau rho rho rho x rho x'");
  }
  EXPECT_TRUE(found);
}

TEST(MunnTree, Examples) {
  Alphabet x({"x"}, {});
  auto     t = munn_tree(parse_word("x x'", x), x);
  EXPECT_EQ(t.vertex_count(), 2u);
  EXPECT_EQ(t.start(), t.end());

  Alphabet a({"a"}, {});
  auto     p = munn_tree(parse_word("a a a' a'", a), a);
  EXPECT_EQ(p.vertex_count(), 3u);
  EXPECT_EQ(p.edges().size(), 2u);
  EXPECT_EQ(p.start(), p.end());
  EXPECT_EQ(run_from(p, p.start(), parse_word("a a", a)).has_value(), true);

  EXPECT_EQ(munn_tree(Word{}, x).vertex_count(), 1u);

  Alphabet r({"x"}, {{"rho", 2}});
  EXPECT_THROW(munn_tree(parse_word("rho", r), r), Error);
}

TEST(Schutzenberger, TriangleRho) {
  Presentation p(load_base("triangle_base"));
  auto const&  A = p.alphabet();
  auto         a = schutzenberger(p, parse_word("rho", A));
  // s = 0; x: 0 -> 1, y: 1 -> 2, z: 0 -> 2, rho loop at 0
  InverseAutomaton expect(A, 3,
                          {{0, *A.find("x"), 1}, {1, *A.find("y"), 2}, {0, *A.find("z"), 2},
                           {0, *A.find("rho"), 0}},
                          0, 0);
  EXPECT_TRUE(birooted_isomorphic(a, expect));
}

TEST(Schutzenberger, NoExpansionWithoutCellLetter) {
  Presentation p(load_base("triangle_base"));
  Word         w = parse_word("x y z'", p.alphabet());
  auto         a = schutzenberger(p, w);
  EXPECT_EQ(a.vertex_count(), 4u);
  EXPECT_TRUE(birooted_isomorphic(a, fold(linear_automaton(w, p.alphabet()))));
  for (auto const& e : a.edges()) {
    EXPECT_FALSE(e.letter.is_p());
  }
}

TEST(Schutzenberger, FreeCaseIsMunnTree) {
  Presentation p(load_base("bouquet_ab"));
  std::mt19937 rng(31);
  auto         letters = test::all_letters(p.alphabet());
  for (int n = 0; n < 300; ++n) {
    Word w = test::random_word(rng, letters, 8);
    EXPECT_TRUE(birooted_isomorphic(schutzenberger(p, w), munn_tree(w, p.alphabet())));
  }
}

TEST(Schutzenberger, Budget) {
  Presentation p(load_base("triangle_base"));
  Word         rho = parse_word("rho", p.alphabet());
  try {
    schutzenberger(p, rho, ClosureConfig{1});
    ADD_FAILURE();
  } catch (Error const& e) {
    EXPECT_EQ(e.code(), Errc::closure_budget_exceeded);
  }
  EXPECT_THROW(schutzenberger(p, rho, ClosureConfig{0}), Error);
  EXPECT_EQ(schutzenberger_closure(p, rho).rounds, 2u);
}

TEST(WordProblemExamples, Equality) {
  Presentation x(BaseComplex(DeltaComplex("x", {{{"o", {}, ""}}, {{"x", {0, 0}, ""}}})));
  auto const&  X = x.alphabet();
  EXPECT_TRUE(m_equal(x, parse_word("x x' x", X), parse_word("x", X)));
  EXPECT_FALSE(m_equal(x, parse_word("x x'", X), parse_word("x' x", X)));
  EXPECT_FALSE(is_idempotent(x, parse_word("x", X)));
  EXPECT_TRUE(is_idempotent(x, parse_word("x x'", X)));

  Presentation t(load_base("triangle_base"));
  auto const&  T = t.alphabet();
  EXPECT_TRUE(m_equal(t, parse_word("rho", T), parse_word("rho x y z'", T)));
  EXPECT_TRUE(m_leq(t, parse_word("rho", T), parse_word("x y z'", T)));
  EXPECT_FALSE(m_leq(t, parse_word("x y z'", T), parse_word("rho", T)));
  EXPECT_TRUE(is_idempotent(t, parse_word("rho", T)));

  Presentation ab(load_base("bouquet_ab"));
  auto const&  AB = ab.alphabet();
  EXPECT_TRUE(m_leq(ab, parse_word("a a' b", AB), parse_word("b", AB)));
  EXPECT_FALSE(m_leq(ab, parse_word("b", AB), parse_word("a a' b", AB)));
}

TEST(WordProblemExamples, Reflexive) {
  std::mt19937 rng(32);
  for (auto name : bases) {
    WordProblem wp{Presentation(load_base(name))};
    auto        letters = test::all_letters(wp.presentation().alphabet());
    for (int n = 0; n < 100; ++n) {
      Word w = test::random_word(rng, letters, 6);
      EXPECT_TRUE(wp.leq(w, w));
      EXPECT_TRUE(wp.equal(w, w));
    }
  }
}

TEST(Pi1, Examples) {
  EXPECT_EQ(pi1_presentation(load_base("torus")).to_string(), "<a, b, c | a b c', b a c'>");
  EXPECT_EQ(pi1_presentation(load_base("bouquet_ab")).to_string(), "<a, b | >");
  EXPECT_EQ(pi1_presentation(load_base("triangle_base")).to_string(), "<x, y, z | x y z'>");
  auto tet = pi1_presentation(load_base("tetrahedron_base"));
  EXPECT_EQ(tet.relators.size(), 4u);
}

TEST(FreeInverseMonoid, AgreesWithMunnForms) {
  WordProblem       wp{Presentation(load_base("bouquet_ab"))};
  std::vector<Word> words;
  test::for_each_word(test::all_letters(wp.presentation().alphabet()), 4,
                      [&](Word const& w) { words.push_back(w); });
  for (auto const& u : words) {
    for (auto const& w : words) {
      ASSERT_EQ(wp.leq(u, w), test::munn_leq(u, w))
          << text(u, wp.presentation()) << " <= " << text(w, wp.presentation());
    }
  }
}

TEST(FreeInverseMonoid, RewritingOracleBoundIsSufficient) {
  // The bounded rewriting closure used by the acceptance gate must
  // reproduce Munn's solution on every pair of words of length <= 5.
  Alphabet                            a({"a", "b"}, {});
  test::RewritingOracle               oracle(9);
  std::vector<Word>                   words;
  std::vector<test::RewritingOracle::Code> codes;
  test::for_each_word(test::all_letters(a), 5, [&](Word const& w) {
    words.push_back(w);
    test::RewritingOracle::Code c;
    for (Letter l : w) {
      c.push_back(static_cast<int>(a.label(l)));
    }
    codes.push_back(std::move(c));
  });
  std::vector<std::pair<std::set<std::vector<std::uint32_t>>, std::vector<std::uint32_t>>> forms;
  for (auto const& w : words) {
    forms.push_back(test::munn_form(w));
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      ASSERT_EQ(oracle.equal(codes[i], codes[j]), forms[i] == forms[j])
          << format_word(words[i], a) << " vs " << format_word(words[j], a);
    }
  }
}

TEST(MonoidProperties, IdempotentsCommute) {
  std::mt19937 rng(33);
  for (auto name : bases) {
    WordProblem wp{Presentation(load_base(name))};
    auto        letters = test::all_letters(wp.presentation().alphabet());
    for (int n = 0; n < 200; ++n) {
      Word e = idempotent(rng, letters);
      Word f = idempotent(rng, letters);
      EXPECT_TRUE(wp.idempotent(e));
      EXPECT_TRUE(wp.equal(e * f, f * e)) << name;
    }
  }
}

TEST(MonoidProperties, SemilatticeOrder) {
  std::mt19937 rng(34);
  for (auto name : bases) {
    WordProblem wp{Presentation(load_base(name))};
    auto        letters = test::all_letters(wp.presentation().alphabet());
    for (int n = 0; n < 200; ++n) {
      Word e = idempotent(rng, letters);
      Word f = idempotent(rng, letters);
      // g is often below e or f
      Word g = std::uniform_int_distribution<int>(0, 1)(rng) ? e * f * idempotent(rng, letters)
                                                              : idempotent(rng, letters);
      EXPECT_EQ(wp.leq(g, e * f), wp.leq(g, e) && wp.leq(g, f)) << name;
    }
  }
}

TEST(MonoidProperties, OrderIsCompatible) {
  std::mt19937 rng(35);
  for (auto name : bases) {
    WordProblem wp{Presentation(load_base(name))};
    auto        letters = test::all_letters(wp.presentation().alphabet());
    for (int n = 0; n < 200; ++n) {
      Word w = test::random_word(rng, letters, 4);
      Word u = w * idempotent(rng, letters);
      Word a = test::random_word(rng, letters, 3);
      Word b = test::random_word(rng, letters, 3);
      ASSERT_TRUE(wp.leq(u, w));
      EXPECT_TRUE(wp.leq(a * u * b, a * w * b)) << name;
    }
  }
}

TEST(MonoidProperties, CellEdgesCollapseToLoops) {
  std::mt19937 rng(36);
  for (auto name : {"triangle_base", "torus", "tetrahedron_base"}) {
    WordProblem wp{Presentation(load_base(name))};
    auto        letters = test::all_letters(wp.presentation().alphabet());
    for (int n = 0; n < 200; ++n) {
      Word w = test::random_word(rng, letters, 6);
      for (auto const& e : wp.schutzenberger(w).edges()) {
        if (e.letter.is_p()) {
          EXPECT_EQ(e.source, e.target) << name;
        }
      }
    }
  }
}

TEST(MonoidProperties, StabilisersAreClosedInverseSubmonoids) {
  std::mt19937 rng(37);
  for (auto name : {"triangle", "torus", "sphere", "tetrahedron", "cycle3"}) {
    LabeledComplex lc(read_complex(test::corpus_path(DCIM_CORPUS_DIR, name)));
    WordProblem    wp{Presentation(lc.base())};
    for (std::size_t v = 0; v < lc.complex().count(0); ++v) {
      auto loops = test::loops_at(lc.graph(), v, 5);
      for (int n = 0; n < 40; ++n) {
        auto pick = [&] {
          return loops[std::uniform_int_distribution<std::size_t>(0, loops.size() - 1)(rng)];
        };
        Word u = pick(), w = pick();
        EXPECT_TRUE(loop_contains(lc, v, u * w));
        EXPECT_TRUE(loop_contains(lc, v, invert_word(u)));
        Word above = accepted_word(rng, wp.schutzenberger(u));
        ASSERT_TRUE(wp.leq(u, above));
        EXPECT_TRUE(loop_contains(lc, v, above)) << name;
      }
    }
  }
}

TEST(WordProblemCache, ConcurrentCallsAgree) {
  WordProblem       wp{Presentation(load_base("tetrahedron_base"))};
  std::mt19937      rng(38);
  auto              letters = test::all_letters(wp.presentation().alphabet());
  std::vector<Word> words;
  for (int n = 0; n < 40; ++n) {
    words.push_back(test::random_word(rng, letters, 6));
  }
  std::vector<std::vector<std::shared_ptr<ClosureResult const>>> seen(4);
  std::vector<std::thread>                                       threads;
  for (std::size_t t = 0; t < seen.size(); ++t) {
    threads.emplace_back([&, t] {
      for (auto const& w : words) {
        seen[t].push_back(wp.closure(w));
      }
    });
  }
  for (auto& th : threads) {
    th.join();
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto fresh = schutzenberger(wp.presentation(), words[i]);
    for (auto const& s : seen) {
      EXPECT_TRUE(birooted_isomorphic(s[i]->automaton, fresh));
      EXPECT_EQ(s[i], wp.closure(words[i]));
    }
  }
  EXPECT_LE(wp.max_rounds_seen(), 20u);
}
