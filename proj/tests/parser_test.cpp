#include <random>
#include <string>

#include "doctest.h"

#include "delcheck/errors.hpp"
#include "delcheck/formula.hpp"
#include "delcheck/generator.hpp"
#include "delcheck/parser.hpp"
#include "test_support.hpp"

using namespace delcheck;

namespace {

Formula p(int id) { return Formula::prop(Proposition(id)); }

}  // namespace

TEST_CASE("a minimal scene parses into its four sections") {
  Scene s = parse_scene(
      "VARS 1,2\n"
      "LAW Top\n"
      "OBS a:1 b:2\n"
      "VALID? a knows whether 2\n");
  CHECK(s.vocabulary == std::vector<Proposition>{Proposition(1),
                                                 Proposition(2)});
  CHECK(s.law == Formula::top());
  CHECK(s.observations.size() == 2);
  CHECK(s.observations.at(AgentName("a")) ==
        std::set<Proposition>{Proposition(1)});
  CHECK(s.observations.at(AgentName("b")) ==
        std::set<Proposition>{Proposition(2)});
  CHECK(s.query == Formula::knows_whether(AgentName("a"), p(2)));
  CHECK(s.query != Formula::knows_whether(AgentName("b"), p(2)));
}

TEST_CASE("comments and irregular whitespace are ignored") {
  Scene s = parse_scene(
      "-- header comment\n"
      "VARS   1 , 2   -- trailing words\n"
      "LAW ( 1 | 2 )\n\n"
      "OBS a : 1 , 2  b :\n"
      "-- interlude\n"
      "VALID?\n  a knows that 1\n");
  CHECK(s.vocabulary.size() == 2);
  CHECK(s.law == Formula::disj({p(1), p(2)}));
  CHECK(s.observations.at(AgentName("b")).empty());
}

TEST_CASE("connective precedence and associativity") {
  CHECK(parse_formula("1 & 2 | 3") ==
        Formula::disj({Formula::conj({p(1), p(2)}), p(3)}));
  CHECK(parse_formula("~1 & 2") == Formula::conj({Formula::neg(p(1)), p(2)}));
  CHECK(parse_formula("1 -> 2 -> 3") ==
        Formula::impl(p(1), Formula::impl(p(2), p(3))));
  CHECK(parse_formula("1 <-> 2 <-> 3") ==
        Formula::equiv(Formula::equiv(p(1), p(2)), p(3)));
  CHECK(parse_formula("1 | 2 -> 3") ==
        Formula::impl(Formula::disj({p(1), p(2)}), p(3)));
  CHECK(parse_formula("1 & 2 & 3") == Formula::conj({p(1), p(2), p(3)}));
  CHECK(parse_formula("1 & 2 & 3") != Formula::conj({Formula::conj({p(1),
        p(2)}), p(3)}));
}

TEST_CASE("announcements and knowledge bind like unary operators") {
  Formula f = parse_formula("[!1] 1 & 2");
  CHECK(f == Formula::conj({Formula::announce(p(1), p(1)), p(2)}));

  Formula g = parse_formula("a knows that 1 | 2");
  CHECK(g == Formula::disj({Formula::knows_that(AgentName("a"), p(1)), p(2)}));

  Formula h = parse_formula("[!(1|2)] a knows whether 2");
  CHECK(h == Formula::announce(
                 Formula::disj({p(1), p(2)}),
                 Formula::knows_whether(AgentName("a"), p(2))));

  Formula nested = parse_formula("~ a knows that ~1");
  CHECK(nested == Formula::neg(Formula::knows_that(AgentName("a"),
                                                   Formula::neg(p(1)))));
}

TEST_CASE("function-style AND and OR take any arity") {
  CHECK(parse_formula("AND(1,2,3,4)") ==
        Formula::conj({p(1), p(2), p(3), p(4)}));
  CHECK(parse_formula("OR(1,2)") == Formula::disj({p(1), p(2)}));
  CHECK(parse_formula("AND(1)") == p(1));
  CHECK(parse_formula("OR( ~1 )") == Formula::neg(p(1)));
  CHECK(parse_formula("Top") == Formula::top());
  CHECK(parse_formula("Bot") == Formula::bot());
}

TEST_CASE("parse errors carry position and expectation") {
  SUBCASE("missing sections") {
    CHECK_THROWS_AS(parse_scene("LAW Top\n"), MissingSectionError);
    CHECK_THROWS_AS(parse_scene("VARS 1\nOBS a:1\nVALID? 1\n"),
                    MissingSectionError);
  }
  SUBCASE("duplicate proposition reports its own position") {
    try {
      parse_scene("VARS 1,2,\n     1\nLAW Top\nOBS a:\nVALID? Top\n");
      FAIL("expected DuplicatePropositionError");
    } catch (const DuplicatePropositionError& e) {
      CHECK(e.pos.line == 2);
      CHECK(e.pos.column == 6);
      CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
  }
  SUBCASE("duplicate agent") {
    CHECK_THROWS_AS(
        parse_scene("VARS 1\nLAW Top\nOBS a:1 a:\nVALID? Top\n"),
        DuplicateAgentError);
  }
  SUBCASE("malformed formulas") {
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("1 &"), ParseError);
    CHECK_THROWS_AS(parse_formula("( 1"), ParseError);
    CHECK_THROWS_AS(parse_formula("a knows 1"), ParseError);
    CHECK_THROWS_AS(parse_formula("[!1 2"), ParseError);
    CHECK_THROWS_AS(parse_formula("1 2"), ParseError);
    CHECK_THROWS_AS(parse_formula("0"), ParseError);
    CHECK_THROWS_AS(parse_formula("99999999999999999999"), ParseError);
    CHECK_THROWS_AS(parse_formula("AND()"), ParseError);
    CHECK_THROWS_AS(parse_formula("$"), ParseError);
  }
  SUBCASE("error message carries line and column") {
    try {
      parse_formula("1 &\n& 2");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.pos.line == 2);
      CHECK(e.pos.column == 1);
      CHECK(std::string(e.what()).find("line 2, column 1") !=
            std::string::npos);
    }
  }
}

TEST_CASE("scene validation rejects inconsistent declarations") {
  CHECK_THROWS_AS(
      parse_scene("VARS 1\nLAW 2\nOBS a:1\nVALID? Top\n"),
      UndeclaredPropositionError);
  CHECK_THROWS_AS(
      parse_scene("VARS 1\nLAW Top\nOBS a:2\nVALID? Top\n"),
      UndeclaredPropositionError);
  CHECK_THROWS_AS(
      parse_scene("VARS 1\nLAW Top\nOBS a:1\nVALID? 2\n"),
      UndeclaredPropositionError);
  CHECK_THROWS_AS(
      parse_scene("VARS 1\nLAW Top\nOBS a:1\nVALID? b knows that 1\n"),
      UndeclaredAgentError);
  CHECK_THROWS_AS(
      parse_scene("VARS 1\nLAW a knows that 1\nOBS a:1\nVALID? 1\n"),
      EpistemicLawError);
}

TEST_CASE("printing uses one canonical spelling per connective") {
  CHECK(print_formula(parse_formula("AND(1, 2, 3)")) == "(1 & 2 & 3)");
  CHECK(print_formula(parse_formula("OR(1,2)")) == "(1 | 2)");
  CHECK(print_formula(Formula::impl(p(1), p(2))) == "(1 -> 2)");
  CHECK(print_formula(Formula::equiv(p(1), p(2))) == "(1 <-> 2)");
  CHECK(print_formula(Formula::neg(p(1))) == "~1");
  CHECK(print_formula(Formula::knows_that(AgentName("a"), p(1))) ==
        "a knows that 1");
  CHECK(print_formula(parse_formula("[! 1 ] b knows whether ~ 2")) ==
        "[!1] b knows whether ~2");
  CHECK(print_formula(Formula::top()) == "Top");
  CHECK(print_formula(Formula::bot()) == "Bot");
}

TEST_CASE("scene printing is stable and parseable") {
  std::string text =
      "VARS 1,2\nLAW Top\nOBS a:1,2 b:\nVALID? [!(1 | 2)] a knows whether 2\n";
  Scene s = parse_scene(text);
  CHECK(print_scene(s) == text);
  CHECK(parse_scene(print_scene(s)) == s);
}

TEST_CASE("parse inverts print on random formulas") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 2000; ++i) {
    Formula f = testsupport::random_formula(rng, 1 + int(rng() % 8));
    Formula reparsed = parse_formula(print_formula(f));
    REQUIRE(reparsed == f);
  }
}

TEST_CASE("parse inverts print on random scenes") {
  SceneGenerator gen(GenOptions{}, 99);
  for (int i = 0; i < 200; ++i) {
    Scene s = gen.next();
    REQUIRE(parse_scene(print_scene(s)) == s);
  }
}

TEST_CASE("deeply nested input is rejected instead of overflowing") {
  std::string deep;
  for (int i = 0; i < 6000; ++i) deep += "~";
  deep += "1";
  CHECK_THROWS_AS(parse_formula(deep), ParseError);
  std::string ok(100, '~');
  CHECK_NOTHROW(parse_formula(ok + "1"));
}
