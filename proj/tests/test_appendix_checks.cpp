#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "coopreg/appendix_checks.hpp"
#include "doctest.h"

using namespace coopreg;

TEST_CASE("oversized internal-model pair breaks stabilizability") {
  const CounterexampleReport rep = appendix_a_first();
  CHECK(rep.pass);
  REQUIRE(rep.claims.size() == 6);
  for (const auto& c : rep.claims) {
    INFO(c.description);
    CHECK(c.computed == c.expected);
  }
}

TEST_CASE("agent-wise stability is not necessary for network stability") {
  const CounterexampleReport rep = appendix_a_second();
  CHECK(rep.pass);
  bool saw_global = false, saw_local3 = false;
  for (const auto& c : rep.claims) {
    INFO(c.description);
    CHECK(c.computed == c.expected);
    if (c.description.find("global closed-loop") != std::string::npos) {
      saw_global = true;
      CHECK(c.expected);
    }
    if (c.description.find("agent 3") != std::string::npos) {
      saw_local3 = true;
      CHECK_FALSE(c.expected);
    }
  }
  CHECK(saw_global);
  CHECK(saw_local3);
}

TEST_CASE("stable transfer matrix can hide an unstable hidden mode") {
  const CounterexampleReport rep = appendix_b();
  CHECK(rep.pass);
  for (const auto& c : rep.claims) {
    INFO(c.description);
    CHECK(c.computed == c.expected);
  }
}

TEST_CASE("the full suite is deterministic") {
  const auto a = run_all_counterexamples();
  const auto b = run_all_counterexamples();
  REQUIRE(a.size() == 3);
  REQUIRE(b.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].pass);
    CHECK(a[i].name == b[i].name);
    REQUIRE(a[i].claims.size() == b[i].claims.size());
    for (std::size_t j = 0; j < a[i].claims.size(); ++j)
      CHECK(a[i].claims[j].computed == b[i].claims[j].computed);
  }
}
