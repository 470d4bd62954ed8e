#include <memory>
#include <string>

#include <gtest/gtest.h>

#include <dcim/dcim.hpp>

#include "oracles.hpp"

using namespace dcim;

namespace {

  DeltaComplex load(std::string const& name) {
    return read_complex(test::corpus_path(DCIM_CORPUS_DIR, name));
  }

  char const* const all_corpus[] = {"bouquet_a", "bouquet_ab",  "triangle", "triangle_base",
                                    "torus",     "tetrahedron", "tetrahedron_base",
                                    "cycle2",    "cycle3",      "path",     "sphere", "bad_face"};

  Errc code_of(auto&& fn) {
    try {
      fn();
    } catch (Error const& e) {
      return e.code();
    }
    ADD_FAILURE() << "no dcim::Error thrown";
    return Errc::usage;
  }

}  // namespace

TEST(ComplexJson, RoundTrip) {
  for (auto name : all_corpus) {
    auto c    = load(name);
    auto text = complex_to_json(c).dump();
    auto back = complex_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(complex_to_json(back).dump(), text) << name;
    EXPECT_EQ(back.name(), c.name());
  }
}

TEST(ComplexJson, Shape) {
  auto j = complex_to_json(load("triangle"));
  EXPECT_EQ(j["dimension"], 2);
  EXPECT_EQ(j["cells"]["1"][0]["id"], "x");
  EXPECT_EQ(j["cells"]["1"][0]["faces"], (nlohmann::json{"B", "A"}));
  EXPECT_EQ(j["cells"]["2"][0]["faces"], (nlohmann::json{"y", "z", "x"}));
}

TEST(ComplexJson, Errors) {
  EXPECT_EQ(code_of([] { complex_from_json(nlohmann::json::parse(R"({"name": "c"})")); }),
            Errc::syntax);
  EXPECT_EQ(code_of([] {
              complex_from_json(nlohmann::json::parse(
                  R"({"cells": {"0": [{"id": "A"}], "1": [{"id": "x", "faces": ["A", "Q"]}]}})"));
            }),
            Errc::invalid_complex);
  EXPECT_EQ(code_of([] { read_complex("/nonexistent/complex.json"); }), Errc::io);
}

TEST(CellMapJson, RoundTrip) {
  auto target = std::make_shared<LabeledComplex const>(load("bouquet_a"));
  auto source = std::make_shared<DeltaComplex const>(
      LabeledComplex(load("cycle2"), target->base()).complex());
  auto c = std::make_shared<DeltaComplex const>(target->complex());
  auto f = infer_map(source, c, 0, 0);
  auto j = cellmap_to_json(f);
  EXPECT_EQ(j["0"]["A"], "o");
  EXPECT_EQ(j["1"]["a2"], "a");
  auto g = cellmap_from_json(nlohmann::json::parse(j.dump()), source, c);
  EXPECT_EQ(g.assignment, f.assignment);
  EXPECT_EQ(code_of([&] {
              cellmap_from_json(nlohmann::json::parse(R"({"0": {"Z": "o"}})"), source, c);
            }),
            Errc::invalid_complex);
}

TEST(AutomatonJson, Schutzenberger) {
  BaseComplex b(load("triangle_base"));
  auto        a = schutzenberger(Presentation(b), parse_word("x y z'", b.alphabet()));
  auto        j = automaton_to_json(a);
  EXPECT_EQ(j["vertices"], a.vertex_count());
  EXPECT_EQ(j["alphabet"]["x"], (nlohmann::json{"x", "y", "z"}));
  EXPECT_EQ(j["alphabet"]["p"]["rho"], 2);
  EXPECT_EQ(j["edges"].size(), a.edges().size());
  EXPECT_EQ(j["start"], a.start());
}

TEST(AutomatonJson, CosetRepresentatives) {
  auto a = std::make_shared<LabeledComplex const>(load("bouquet_a"));
  auto h = coset_automaton({a, 0, {parse_word("a a'", a->alphabet())}});
  auto j = coset_to_json(h);
  EXPECT_EQ(j["representatives"], (nlohmann::json{"1", "a"}));
  EXPECT_EQ(j["edges"][0]["label"], "a");
}

TEST(Dot, Format) {
  Alphabet         a({"x"}, {{"rho", 2}});
  InverseAutomaton g(a, 2, {{0, Letter::x(0), 1}, {0, Letter::p(0), 0}}, 0, 1);
  auto             dot = automaton_to_dot(g, {"1", "x"});
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("0 [shape=doublecircle, label=\"1\"]"), std::string::npos);
  EXPECT_NE(dot.find("1 [style=bold, label=\"x\"]"), std::string::npos);
  EXPECT_NE(dot.find("0 -> 1 [label=\"x\"]"), std::string::npos);
  EXPECT_NE(dot.find("0 -> 0 [label=\"rho\", dir=none]"), std::string::npos);
}

TEST(DiagnosticsJson, BadFace) {
  auto j = diagnostics_to_json(validate(load("bad_face")));
  ASSERT_FALSE(j.empty());
  bool found = false;
  for (auto const& d : j) {
    found = found || d["code"] == "E_FACE_IDENTITY";
  }
  EXPECT_TRUE(found);
}
