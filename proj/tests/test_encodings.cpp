#include <doctest.h>

#include <algorithm>

#include "rootsat/encodings/apds.hpp"
#include "rootsat/encodings/frontend.hpp"
#include "rootsat/encodings/ompds.hpp"
#include "rootsat/encodings/pds.hpp"
#include "encoding_support.hpp"

using namespace rootsat;
using namespace rootsat::enc;
using namespace rootsat::testing;

namespace {

std::string rule_text(const RootRewriteSystem& system, const std::string& label) {
  const RewriteRule* r = system.find(label);
  REQUIRE(r);
  return r->lhs.to_string() + " -> " + r->rhs.to_string();
}

/// Encoding commutes with one step, and each command yields at most one rule application.
template <class Spec, class Encoding, class Config>
void check_faithful(const Spec& spec, const Encoding& enc, const Config& c) {
  for (std::size_t i = 0; i < spec.commands.size(); ++i) {
    auto problem = faithfulness_problem(spec, enc, c, i);
    CHECK_MESSAGE(problem.empty(), problem);
  }
}

}  // namespace

TEST_CASE("PDS rule schemas") {
  PdsSpec s;
  s.controls = {"p", "q"};
  s.gamma = {"a", "b"};
  s.commands = {{"p", "a", "q", {}}, {"p", "a", "p", {"a", "a"}}, {"p", kBottom, "q", {"b"}}};
  auto enc = encode_system_pds(s);
  CHECK(rule_text(enc.system, enc.command_rules[0].at(0)) == "p(a(?x)) -> q(?x)");
  CHECK(rule_text(enc.system, enc.command_rules[1].at(0)) == "p(a(?x)) -> p(a(a(?x)))");
  CHECK(rule_text(enc.system, enc.command_rules[2].at(0)) == "p(bot()) -> q(b(bot()))");
  CHECK(enc.codec.encode({"p", {"a", "b"}}).to_string() == "p(a(b(bot())))");
  CHECK(enc.manifest.entries.size() == 3);
}

TEST_CASE("OMPDS rule schemas") {
  using K = OmpdsCommand::Kind;
  OmpdsSpec s;
  s.stacks = 2;
  s.controls = {"p", "q"};
  s.gamma = {"a", "b"};
  s.commands = {{K::Pop, "p", "q", 2, "b"}, {K::Push, "p", "q", 1, "a"}, {K::Internal, "p", "q", 0, ""}};
  auto enc = encode_system_ompds(s);
  CHECK(rule_text(enc.system, enc.command_rules[0].at(0)) == "p(?x1,b(?x2)) -> q(bot(),?x2)");
  CHECK(rule_text(enc.system, enc.command_rules[1].at(0)) == "p(?x1,?x2) -> q(a(?x1),?x2)");
  CHECK(rule_text(enc.system, enc.command_rules[2].at(0)) == "p(?x1,?x2) -> q(?x1,?x2)");
  for (const auto& rules : enc.command_rules) CHECK(rules.size() == 1);

  OmpdsConfig c{"p", {{"a", "b"}, {"b"}}};
  auto next = step_direct(s, c, s.commands[0]);
  REQUIRE(next);
  CHECK(*next == OmpdsConfig{"q", {{}, {}}});
  auto succ = rewrite_once(enc.system, enc.codec.encode(c));
  REQUIRE(succ.size() >= 1);
  CHECK(std::any_of(succ.begin(), succ.end(), [&](const Successor& x) {
    return x.rule == enc.command_rules[0][0] && x.term == enc.codec.encode(*next);
  }));
}

TEST_CASE("APDS rule schemas at order 2") {
  using K = ApdsCommand::Kind;
  ApdsSpec s;
  s.order = 2;
  s.controls = {"p", "q"};
  s.gamma = {"a", "b"};
  s.commands = {{K::Push, "p", "q", "", 2}, {K::Pop, "p", "q", "", 2}, {K::Push1, "p", "q", "b", 2},
                {K::Rew, "p", "q", "b", 1}, {K::Collapse, "p", "q", "", 2}};
  auto enc = encode_system_apds(s);
  CHECK(rule_text(enc.system, enc.command_rules[0].at(0)) == "p(c_2(?y,?x2)) -> q(c_2(?y,c_2(?y,?x2)))");
  CHECK(rule_text(enc.system, enc.command_rules[1].at(0)) == "p(c_2(?y,?x2)) -> q(?x2)");
  CHECK(rule_text(enc.system, enc.command_rules[2].at(0)) == "p(c_2(?y,?x2)) -> q(c_2(b(ann_2(?x2),?y),?x2))");
  CHECK(enc.command_rules[3].size() == 2);
  CHECK(rule_text(enc.system, enc.command_rules[3][0]) == "p(c_2(a(?z,?x1),?x2)) -> q(c_2(b(?z,?x1),?x2))");
  CHECK(enc.command_rules[4].size() == 2);
  CHECK(rule_text(enc.system, enc.command_rules[4][0]) == "p(c_2(a(ann_2(?z),?x1),?x2)) -> q(?z)");
}

TEST_CASE("APDS left sides have depth at most n + 2") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto enc = encode_system_apds(apds_corpus(n));
    for (const auto& r : enc.system.rules()) CHECK(r.lhs.depth() <= n + 2);
  }
}

TEST_CASE("generated rules lie in the restricted class") {
  auto check = [](const RootRewriteSystem& sys) {
    std::vector<RewriteRule> rules = sys.rules();
    auto v = validate_system(sys.alphabet(), rules);
    CHECK(v.ok());
  };
  check(encode_system_pds(pds_corpus()).system);
  for (std::size_t n = 1; n <= 3; ++n) check(encode_system_ompds(ompds_corpus(n)).system);
  for (std::size_t n = 1; n <= 3; ++n) check(encode_system_apds(apds_corpus(n)).system);
}

TEST_CASE("spec validation") {
  PdsSpec bad = pds_corpus();
  bad.commands.push_back({"p", "zz", "q", {}});
  CHECK_THROWS_AS(bad.validate(), EncodingError);
  PdsSpec dup = pds_corpus();
  dup.controls.push_back("p");
  CHECK_THROWS_AS(dup.validate(), EncodingError);
  OmpdsSpec range = ompds_corpus(2);
  range.commands.push_back({OmpdsCommand::Kind::Pop, "p", "q", 3, "a"});
  CHECK_THROWS_AS(range.validate(), EncodingError);
  ApdsSpec order = apds_corpus(2);
  order.commands.push_back({ApdsCommand::Kind::Push, "p", "q", "", 1});
  CHECK_THROWS_AS(order.validate(), EncodingError);
  ApdsSpec collapse = apds_corpus(2);
  collapse.commands.push_back({ApdsCommand::Kind::Collapse, "p", "q", "", 3});
  CHECK_THROWS_AS(collapse.validate(), EncodingError);
  ApdsSpec zero = apds_corpus(1);
  zero.order = 0;
  CHECK_THROWS_AS(zero.validate(), EncodingError);
}

TEST_CASE("codecs round-trip on random configurations") {
  Rng rng(41);
  PdsSpec ps = pds_corpus();
  PdsCodec pc(pds_alphabet(ps));
  for (int i = 0; i < 1000; ++i) {
    auto c = random_pds(rng, ps);
    CHECK(pc.decode(pc.encode(c)) == c);
    CHECK(parse_pds_config(format_config(c)) == c);
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    OmpdsSpec os = ompds_corpus(n);
    OmpdsCodec oc(ompds_alphabet(os), n);
    for (int i = 0; i < 1000; ++i) {
      auto c = random_ompds(rng, os);
      CHECK(oc.decode(oc.encode(c)) == c);
      CHECK(parse_ompds_config(format_config(c)) == c);
    }
    ApdsSpec as = apds_corpus(n);
    ApdsCodec ac(apds_alphabet(as), n);
    for (int i = 0; i < 1000; ++i) {
      auto c = random_apds(rng, as);
      CHECK(ac.decode(ac.encode(c)) == c);
      CHECK(parse_apds_config(format_config(c), n) == c);
    }
  }
}

TEST_CASE("encode inverts decode on the image") {
  PdsSpec ps = pds_corpus();
  PdsCodec pc(pds_alphabet(ps));
  for (const auto& t : enumerate_terms(*pc.alphabet(), RankedAlphabet::kConf, 4)) CHECK(pc.encode(pc.decode(t)) == t);
  ApdsSpec as = apds_corpus(2);
  ApdsCodec ac(apds_alphabet(as), 2);
  for (const auto& t : enumerate_terms(*ac.alphabet(), RankedAlphabet::kConf, 4)) CHECK(ac.encode(ac.decode(t)) == t);
}

TEST_CASE("codecs reject terms outside their image") {
  ApdsSpec as = apds_corpus(2);
  ApdsCodec ac(apds_alphabet(as), 2);
  CHECK_THROWS_AS(ac.decode(parse_term("e_2()", *ac.alphabet())), EncodingError);
  PdsCodec pc(pds_alphabet(pds_corpus()));
  CHECK_THROWS_AS(pc.decode(parse_term("a(bot())", *pc.alphabet())), EncodingError);
  CHECK_THROWS_AS(pc.encode({"zz", {}}), EncodingError);
  CHECK_THROWS_AS(pc.encode({"p", {"zz"}}), EncodingError);
}

TEST_CASE("PDS encoding is faithful") {
  Rng rng(42);
  PdsSpec s = pds_corpus();
  auto enc = encode_system_pds(s);
  for (int i = 0; i < 1000; ++i) check_faithful(s, enc, random_pds(rng, s));
  auto popped = step_direct(s, PdsConfig{"p", {"a"}}, s.commands[0]);
  REQUIRE(popped);
  CHECK(*popped == PdsConfig{"q", {}});
  CHECK_FALSE(step_direct(s, PdsConfig{"p", {}}, s.commands[0]));
}

TEST_CASE("OMPDS encoding is faithful") {
  Rng rng(43);
  for (std::size_t n = 1; n <= 3; ++n) {
    OmpdsSpec s = ompds_corpus(n);
    auto enc = encode_system_ompds(s);
    for (int i = 0; i < 1000; ++i) check_faithful(s, enc, random_ompds(rng, s));
  }
}

TEST_CASE("APDS encoding is faithful") {
  Rng rng(44);
  for (std::size_t n = 1; n <= 3; ++n) {
    ApdsSpec s = apds_corpus(n);
    auto enc = encode_system_apds(s);
    for (int i = 0; i < 1000; ++i) check_faithful(s, enc, random_apds(rng, s));
  }
}

TEST_CASE("OMPDS pop destroys the lower stacks") {
  Rng rng(45);
  OmpdsSpec s = ompds_corpus(3);
  for (int i = 0; i < 1000; ++i) {
    OmpdsConfig c = random_ompds(rng, s);
    for (const auto& cmd : s.commands) {
      if (cmd.kind != OmpdsCommand::Kind::Pop) continue;
      auto next = step_direct(s, c, cmd);
      if (!next) continue;
      for (std::size_t j = 0; j + 1 < cmd.stack; ++j) CHECK(next->stacks[j].empty());
      for (std::size_t j = cmd.stack; j < s.stacks; ++j) CHECK(next->stacks[j] == c.stacks[j]);
      std::vector<std::string> rest(c.stacks[cmd.stack - 1].begin() + 1, c.stacks[cmd.stack - 1].end());
      CHECK(next->stacks[cmd.stack - 1] == rest);
    }
  }
}

TEST_CASE("APDS collapse after push1 equals pop") {
  using K = ApdsCommand::Kind;
  Rng rng(46);
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    ApdsSpec s = apds_corpus(n);
    for (int i = 0; i < 1000; ++i) {
      ApdsConfig c = random_apds(rng, s);
      const ApdsStack* top = top_one_stack(c.stack);
      if (!top || top->empty()) continue;
      for (std::size_t k = 1; k <= n; ++k) {
        ApdsCommand push{K::Push1, c.control, c.control, "b", k};
        ApdsCommand collapse{K::Collapse, c.control, c.control, "", k};
        ApdsCommand pop{K::Pop, c.control, c.control, "", k};
        auto pushed = step_direct(s, c, push);
        REQUIRE(pushed);
        auto back = step_direct(s, *pushed, collapse);
        auto popped = step_direct(s, c, pop);
        REQUIRE(back);
        REQUIRE(popped);
        CHECK(*back == *popped);
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("APDS direct semantics examples") {
  using K = ApdsCommand::Kind;
  ApdsSpec s = apds_corpus(2);
  ApdsConfig init{"p", initial_stack(s)};
  CHECK(format_config(init) == "p [[a]]");
  auto pushed = step_direct(s, init, {K::Push, "p", "p", "", 2});
  REQUIRE(pushed);
  CHECK(format_config(*pushed) == "p [[a] [a]]");
  auto popped = step_direct(s, *pushed, {K::Pop, "p", "p", "", 2});
  REQUIRE(popped);
  CHECK(*popped == init);
  auto emptied = step_direct(s, init, {K::Pop, "p", "p", "", 2});
  REQUIRE(emptied);
  CHECK(format_config(*emptied) == "p []");
  CHECK_FALSE(step_direct(s, *emptied, {K::Rew, "p", "p", "b", 1}));
  CHECK_FALSE(step_direct(s, init, {K::Rew, "q", "p", "b", 1}));
  auto annotated = step_direct(s, init, {K::Push1, "p", "q", "b", 2});
  REQUIRE(annotated);
  CHECK(format_config(*annotated) == "q [[b^<2:[]> a]]");
  // The initial cell carries an order-1 annotation, so an order-2 collapse does not apply.
  CHECK_FALSE(step_direct(s, init, {K::Collapse, "p", "q", "", 2}));
}

TEST_CASE("target_control examples") {
  PdsSpec ps;
  ps.controls = {"p", "q"};
  ps.gamma = {"a"};
  Nfta pq = target_control(ps, "q");
  AlphabetPtr PA = pds_alphabet(ps);
  auto words = enumerate_terms(*PA, *PA->find_sort("stack"), 2);
  CHECK(words.size() == 3);
  for (const auto& w : words) {
    CHECK(accepts(pq.automaton(), Term::app(*PA, "q", {w})));
    CHECK_FALSE(accepts(pq.automaton(), Term::app(*PA, "p", {w})));
  }
  CHECK_THROWS_AS(target_control(ps, "zz"), EncodingError);

  OmpdsSpec os = ompds_corpus(2);
  Nfta oq = target_control(os, "q");
  CHECK(accepts(oq.automaton(), parse_term("q(bot(),bot())", *ompds_alphabet(os))));

  ApdsSpec as = apds_corpus(2);
  as.controls.push_back("r");
  AlphabetPtr AA = apds_alphabet(as);
  Nfta ar = target_control(as, "r");
  CHECK(accepts(ar.automaton(), parse_term("r(c_2(e_1(),e_2()))", *AA)));
  CHECK_FALSE(accepts(ar.automaton(), parse_term("p(c_2(e_1(),e_2()))", *AA)));
  // Every encoded r-configuration is accepted.
  Rng rng(47);
  ApdsCodec codec(AA, 2);
  for (int i = 0; i < 200; ++i) {
    ApdsConfig c = random_apds(rng, as);
    CHECK(accepts(ar.automaton(), codec.encode(c)) == (c.control == "r"));
  }
}

TEST_CASE("target_terms examples") {
  PdsSpec ps = pds_corpus();
  AlphabetPtr A = pds_alphabet(ps);
  auto lang = [&](const std::vector<PdsConfig>& cs) {
    return enumerate_language(target_terms(ps, cs).automaton(), 5).size();
  };
  CHECK(lang({}) == 0);
  CHECK(lang({{"p", {"a"}}}) == 1);
  CHECK(lang({{"p", {"a"}}, {"q", {"a", "b"}}}) == 2);
  CHECK(accepts(target_terms(ps, {{"q", {"a", "b"}}}).automaton(), parse_term("q(a(b(bot())))", *A)));
}

TEST_CASE("config literals") {
  CHECK(format_config(parse_pds_config("p \"ab.\"")) == "p \"ab.\"");
  CHECK(parse_pds_config("p \".\"").stack.empty());
  CHECK(parse_pds_config("p \"foo bar .\"").stack == std::vector<std::string>{"foo", "bar"});
  CHECK_THROWS(parse_pds_config("p \"ab\""));
  CHECK_THROWS(parse_pds_config("p ab."));
  OmpdsConfig oc = parse_ompds_config("p [\"ab.\", \"b.\"]");
  CHECK(oc.stacks.size() == 2);
  CHECK(format_config(oc) == "p [\"ab.\", \"b.\"]");
  ApdsConfig ac = parse_apds_config("p [[a^<2:[[b]]> b] [c]]", 2);
  CHECK(ac.stack.stacks.size() == 2);
  CHECK(ac.stack.stacks[0].cells[0].annotation.order == 2);
  CHECK(ac.stack.stacks[0].cells[1].annotation == empty_stack(1));
  CHECK(format_config(ac) == "p [[a^<2:[[b]]> b] [c]]");
  CHECK_THROWS(parse_apds_config("p [a]", 2));
  CHECK_THROWS(parse_apds_config("p [[a^<3:[]>]]", 2));
}

TEST_CASE("front-end files") {
  Frontend f = parse_frontend(
      "# comment\n[ompds n=2]\ncontrols: p q\ngamma: a b bot\np : push(1, a) -> q\nq : pop(2, b) -> p\n"
      "p : internal -> p\ntarget control q\ntarget config p [\".\", \"b.\"]\n");
  CHECK(f.family == Family::Ompds);
  const auto& s = std::get<OmpdsSpec>(f.spec);
  CHECK(s.gamma == std::vector<std::string>{"a", "b"});
  CHECK(s.commands.size() == 3);
  auto compiled = compile_frontend(f);
  CHECK(compiled.system.rules().size() == 3);
  REQUIRE(compiled.target);
  CHECK(compiled.target_terms.size() == 1);
  CHECK(accepts(compiled.target->automaton(), compiled.target_terms[0]));
  CHECK(accepts(compiled.target->automaton(), encode_literal(f, "q [\"a.\", \".\"]")));
  CHECK_FALSE(accepts(compiled.target->automaton(), encode_literal(f, "p [\"a.\", \".\"]")));

  Frontend none = parse_frontend("[pds]\ncontrols: p\ngamma: a\np : pop(a) -> p\n");
  CHECK_FALSE(compile_frontend(none).target);

  Frontend apds = parse_frontend("[apds order=2]\ncontrols: p\ngamma: a b\ninitial: b\np : pushj(2) -> p\n");
  CHECK(std::get<ApdsSpec>(apds.spec).initial_symbol() == "b");
}

TEST_CASE("front-end errors") {
  auto fails = [](const std::string& text, const std::string& needle) {
    try {
      parse_frontend(text);
    } catch (const Error& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
      return;
    }
    FAIL("expected an error for: " << text);
  };
  fails("controls: p\n", "line 1: expected '[' at offset 0");
  fails("[stack]\n", "unknown family");
  fails("", "missing family header");
  fails("[apds order=0]\n", "order must be at least 1");
  fails("[ompds n=0]\n", "stack count must be at least 1");
  fails("[pds]\ncontrols: p\ngamma: a\np : jump(a) -> p\n", "line 4");
  fails("[pds]\ncontrols: p\ngamma: a\np : pop(a) -> zz\n", "zz");
  fails("[pds]\ncontrols: p\ninitial: a\n", "only valid");
  fails("[pds]\ncontrols: p\ngamma: a\ntarget nothing\n", "expected 'control' or 'config'");
}
