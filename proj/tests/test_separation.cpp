#include <catch2/catch_amalgamated.hpp>

#include "cscreen/brute_force.hpp"
#include "cscreen/experiments/corpus.hpp"
#include "cscreen/oracle.hpp"
#include "cscreen/separation.hpp"
#include "support/fixtures.hpp"

#include <sstream>

using namespace cscreen;
using fixtures::set_of;

namespace {

SeparationQuery q_of(const DirectedMixedGraph &g, std::initializer_list<const char *> a,
                     std::initializer_list<const char *> b, std::initializer_list<const char *> c) {
  return {set_of(g, a), set_of(g, b), set_of(g, c)};
}

} // namespace

TEST_CASE("mu-separation examples", "[separation]") {
  const auto chain = fixtures::chain3();
  // c is separated from a given {b}.
  CHECK(mu_separated(chain, q_of(chain, {"a"}, {"c"}, {"b"})));
  CHECK(brute::mu_separated(chain, q_of(chain, {"a"}, {"c"}, {"b"})));
  CHECK_FALSE(mu_separated(chain, q_of(chain, {"a"}, {"c"}, {})));

  GraphBuilder b(2);
  const auto pair = b.build();
  CHECK(mu_separated(pair, {NodeSet(2, {0}), NodeSet(2, {1}), NodeSet(2)}));

  const auto fig = fixtures::running_example();
  const auto q = q_of(fig, {"alpha"}, {"epsilon"}, {"delta", "epsilon"});
  CHECK_FALSE(mu_separated(fig, q));
  CHECK_FALSE(brute::mu_separated(fig, q));
  // The connecting walk alpha -> beta <- phi -> epsilon is one witness.
  const auto w = find_mu_connecting_walk(fig, q);
  REQUIRE(w);
  CHECK(is_walk_in(fig, *w));
  CHECK(is_mu_connecting(*w, q.c, ancestors(fig, q.c)));
  CHECK(w->start == fig.node("alpha"));
  CHECK(w->end() == fig.node("epsilon"));

  CHECK_THROWS_AS(mu_separated(fig, {NodeSet(6), set_of(fig, {"alpha"}), NodeSet(6)}), InputError);
  CHECK_THROWS_AS(mu_separated(fig, {set_of(fig, {"alpha"}), NodeSet(6), NodeSet(6)}), InputError);
}

TEST_CASE("loops and conditioning on the source", "[separation]") {
  GraphBuilder b(1);
  const auto single = b.build();
  const SeparationQuery self{NodeSet(1, {0}), NodeSet(1, {0}), NodeSet(1)};
  CHECK_FALSE(mu_separated(single, self));
  CHECK_FALSE(brute::mu_separated(single, self));
  const auto w = find_mu_connecting_walk(single, self);
  REQUIRE(w);
  CHECK(w->steps.size() == 1);

  const auto fig = fixtures::running_example();
  for (const char *target : {"alpha", "beta", "gamma", "delta", "epsilon", "phi"}) {
    CHECK(mu_separated(fig, q_of(fig, {"alpha"}, {target}, {"alpha"})));
    CHECK(brute::mu_separated(fig, q_of(fig, {"alpha"}, {target}, {"alpha"})));
  }
}

TEST_CASE("brute force refuses large graphs", "[separation]") {
  GraphBuilder b(7);
  const auto g = b.build();
  CHECK_THROWS_AS(brute::mu_separated(g, {NodeSet(7, {0}), NodeSet(7, {1}), NodeSet(7)}),
                  CapacityError);
  CHECK_NOTHROW(brute::mu_separated(g, {NodeSet(7, {0}), NodeSet(7, {1}), NodeSet(7)}, 7));
}

TEST_CASE("running example: search agrees with enumeration on every singleton query",
          "[separation][property]") {
  const auto fig = fixtures::running_example();
  const std::size_t n = fig.size();
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> pool;
    for (std::size_t v = 0; v < n; ++v)
      if (v != a) pool.push_back(v);
    for (const auto &c : fixtures::all_subsets(n, pool))
      for (std::size_t t = 0; t < n; ++t) {
        const auto q = SeparationQuery::singleton(n, a, t, c);
        REQUIRE(mu_separated(fig, q) == brute::mu_separated(fig, q));
      }
  }
}

TEST_CASE("search agrees with enumeration on random DMGs", "[separation][property]") {
  for (double p_dir : {0.2, 0.5}) {
    for (double p_bi : {0.2, 0.6}) {
      experiments::CorpusConfig cfg{4, p_dir, p_bi, 15, 4242};
      for (std::size_t i = 0; i < cfg.count; ++i) {
        const auto g = experiments::random_dmg(cfg, i);
        const std::size_t n = g.size();
        std::vector<std::size_t> all(n);
        for (std::size_t v = 0; v < n; ++v) all[v] = v;
        const auto subsets = fixtures::all_subsets(n, all);
        // Set-valued queries too, not only singletons.
        for (const auto &a : subsets) {
          if (a.empty()) continue;
          for (const auto &bb : subsets) {
            if (bb.empty()) continue;
            for (const auto &c : subsets) {
              const SeparationQuery q{a, bb, c};
              const auto fast = find_mu_connecting_walk(g, q);
              REQUIRE(fast.has_value() == !brute::mu_separated(g, q));
              if (fast) {
                REQUIRE(is_walk_in(g, *fast));
                REQUIRE(is_mu_connecting(*fast, c, brute::ancestors(g, c)));
                REQUIRE(a.contains(fast->start));
                REQUIRE(bb.contains(fast->end()));
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("trek criterion: dt membership iff not separated given the target",
          "[separation][property]") {
  for (double p : {0.2, 0.5, 0.8}) {
    experiments::CorpusConfig cfg{6, p, p / 2, 60, 77};
    for (std::size_t i = 0; i < cfg.count; ++i) {
      const auto g = experiments::random_dmg(cfg, i);
      const std::size_t n = g.size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t t = 0; t < n; ++t) {
          NodeSet c(n);
          c.insert(t);
          REQUIRE(directed_trek_exists(g, NodeId(a), NodeId(t)) ==
                  !mu_separated(g, SeparationQuery::singleton(n, a, t, c)));
        }
    }
  }
}

TEST_CASE("asymmetry and adding an isolated node", "[separation][property]") {
  // a -> b: b depends on a's past, a does not depend on b's.
  const auto g = fixtures::make_graph({"a", "b"}, {{"a", "b"}});
  CHECK_FALSE(mu_separated(g, q_of(g, {"a"}, {"b"}, {"b"})));
  CHECK(mu_separated(g, q_of(g, {"b"}, {"a"}, {"a"})));

  experiments::CorpusConfig cfg{5, 0.3, 0.2, 40, 8};
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const auto base = experiments::random_dmg(cfg, i);
    GraphBuilder b(base);
    b.add_node("isolated");
    const auto bigger = b.build();
    for (std::size_t a = 0; a < base.size(); ++a)
      for (std::size_t t = 0; t < base.size(); ++t) {
        NodeSet c(base.size()), c2(bigger.size());
        if (t != a) {
          c.insert(t);
          c2.insert(t);
        }
        REQUIRE(mu_separated(base, SeparationQuery::singleton(base.size(), a, t, c)) ==
                mu_separated(bigger, SeparationQuery::singleton(bigger.size(), a, t, c2)));
      }
  }
}

TEST_CASE("graphical oracle", "[separation][oracle]") {
  const auto fig = fixtures::running_example();
  const auto o = fixtures::running_example_observed(fig);
  GraphicalOracle oracle(fig, o);
  CHECK(oracle.observed_size() == 3);
  CHECK(oracle.label(2) == "epsilon");

  // <alpha, epsilon | {epsilon}>: alpha -> beta -> delta -> epsilon is a trek.
  CHECK_FALSE(oracle.independent_global(q_of(fig, {"alpha"}, {"epsilon"}, {"epsilon"})));
  CHECK(oracle.independent_global(q_of(fig, {"alpha"}, {"alpha"}, {"alpha"})));
  CHECK(oracle.calls() == 2);

  CHECK_THROWS_AS(oracle.independent_global(q_of(fig, {"alpha"}, {"beta"}, {})), InputError);
  CHECK_THROWS_AS(oracle.independent(SeparationQuery{NodeSet(6), NodeSet(6), NodeSet(6)}),
                  InputError);
  CHECK(oracle.calls() == 2);

  // Repeated identical queries are counted, memoised or not.
  GraphicalOracle memo(fig, o, true);
  memo.enable_log();
  for (int k = 0; k < 4; ++k) CHECK_FALSE(memo.independent(0, 1, NodeSet(3, {1})));
  CHECK(memo.calls() == 4);
  CHECK(memo.log().size() == 4);

  std::ostringstream csv;
  memo.write_log_csv(csv);
  CHECK(csv.str() == "A;B;C;answer\n"
                     "alpha;delta;delta;dependent\n"
                     "alpha;delta;delta;dependent\n"
                     "alpha;delta;delta;dependent\n"
                     "alpha;delta;delta;dependent\n");
  std::ostringstream csv2;
  GraphicalOracle sets(fig, o);
  sets.enable_log();
  sets.independent(SeparationQuery{NodeSet(3, {0, 1}), NodeSet(3, {2}), NodeSet(3, {1, 2})});
  sets.write_log_csv(csv2);
  CHECK(csv2.str() == "A;B;C;answer\nalpha|delta;epsilon;delta|epsilon;dependent\n");
}
