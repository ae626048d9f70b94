#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "isi/corrmat.hpp"
#include "isi/eigen.hpp"
#include "isi/error.hpp"
#include "isi/worstcase.hpp"

using namespace isi;

namespace {
// Frozen from an exhaustive numpy search over all raw {-1,0,1} sequences up to
// length 12: the minimum is 2 - 2 cos(pi/(L+1)) for L >= 2.
constexpr double kLambda[] = {0.0, 1.0, 1.0, 0.585786437626905, 0.381966011250105,
                              0.267949192431122, 0.198062264195162};

std::vector<std::vector<int>> symbols_of(const std::vector<ErrorEvent>& events) {
  std::vector<std::vector<int>> out;
  for (const auto& e : events) out.push_back(e.symbols());
  return out;
}
}  // namespace

TEST_CASE("worst-case values for small L") {
  for (int L = 1; L <= 5; ++L) {
    CAPTURE(L);
    const auto r = worst_channel(L, AlphabetSpec::for_channel_length(L));
    CHECK(std::abs(r.lambda_min - kLambda[L]) <= 1e-12);
    CHECK(energy(r.channel) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.warning.empty());
  }
}

TEST_CASE("L=1 is achieved only by the single error") {
  const auto r = worst_channel(1, AlphabetSpec::for_channel_length(1));
  CHECK(symbols_of(r.achieving_events) == std::vector<std::vector<int>>{{1}});
  CHECK(r.channel == std::vector<double>{1.0});
}

TEST_CASE("L=2 has many tied events") {
  const auto r = worst_channel(2, AlphabetSpec::for_channel_length(2));
  CHECK(r.achieving_events.size() == 23);
  CHECK(r.ties == 12);
  CHECK_FALSE(uniqueness_probe(r).unique);
}

TEST_CASE("L=3 worst channel") {
  const auto r = worst_channel(3, AlphabetSpec::for_channel_length(3));
  CHECK(symbols_of(r.achieving_events) == std::vector<std::vector<int>>{{1, 1}, {1, -1}});
  CHECK(r.ties == 1);
  // sin(pi (i+1)/4) up to alternating signs
  const double h = std::sqrt(0.5);
  CHECK(std::abs(std::abs(r.channel[0]) - 0.5) < 1e-9);
  CHECK(std::abs(std::abs(r.channel[1]) - h) < 1e-9);
  CHECK(std::abs(std::abs(r.channel[2]) - 0.5) < 1e-9);
  const auto u = uniqueness_probe(r);
  CHECK(u.simple);
  CHECK(u.unique);
  CHECK(r.roots.pass);
}

TEST_CASE("channel attains lambda_min on every achieving event once the minimum is unique") {
  for (int L = 3; L <= 5; ++L) {
    const auto r = worst_channel(L, AlphabetSpec::for_channel_length(L));
    // alternation partners are attained by the alternated channel
    std::vector<double> alt(r.channel);
    for (std::size_t i = 1; i < alt.size(); i += 2) alt[i] = -alt[i];
    const ErrorEvent& first = r.achieving_events.front();
    for (const auto& ev : r.achieving_events) {
      const auto A = build_matrix(autocorrelation(ev, L), L);
      const auto& f = class_representative(ev) == class_representative(first) &&
                              !(ev == first) ? alt : r.channel;
      CHECK(quadratic_form(A, f) == doctest::Approx(r.lambda_min).epsilon(1e-10));
    }
  }
}

TEST_CASE("sweep golden values") {
  SweepConfig cfg;
  cfg.max_event_len = 14;
  const auto s = sweep(5, cfg);
  REQUIRE(s.rows.size() == 5);
  for (int L = 1; L <= 5; ++L)
    CHECK(std::abs(s.rows[static_cast<std::size_t>(L - 1)].lambda_min - kLambda[L]) <= 1e-12);
  CHECK(s.non_increasing);
  CHECK_FALSE(s.rows[0].delta_from_previous.has_value());
  CHECK(*s.rows[1].strict == false);
  for (std::size_t i = 2; i < s.rows.size(); ++i) CHECK(*s.rows[i].strict);
}

TEST_CASE("pruning and threading do not change the result") {
  for (int L = 1; L <= 5; ++L) {
    const auto spec = AlphabetSpec::for_channel_length(L);
    const auto a = worst_channel(L, spec, {false, 1});
    const auto b = worst_channel(L, spec, {true, 1});
    const auto c = worst_channel(L, spec, {true, 4});
    CHECK(a.lambda_min == b.lambda_min);
    CHECK(b.lambda_min == c.lambda_min);
    CHECK(a.achieving_events == b.achieving_events);
    CHECK(b.achieving_events == c.achieving_events);
    CHECK(b.channel == c.channel);
    CHECK(a.prune_count == 0);
  }
}

TEST_CASE("M=4, L=3 worst case") {
  // numpy brute force over {-3..3}^n, n <= 6: event (1,2,2,1)
  const auto r = worst_channel(3, AlphabetSpec{4, 6, 1});
  CHECK(std::abs(r.lambda_min - 0.5108747069239384) <= 1e-12);
  REQUIRE(!r.achieving_events.empty());
  CHECK(r.achieving_events.front().symbols() == std::vector<int>{1, 2, 2, 1});
  CHECK(r.lambda_min < kLambda[3]);
}

TEST_CASE("augmentation probe L=1 has zero cross term") {
  const auto p = augmentation_probe(1, AlphabetSpec::for_channel_length(1), 0.01);
  CHECK(p.cross_term == 0.0);
  CHECK_FALSE(p.improves);
}

TEST_CASE("augmentation probe L=2 on the (1,-1,1) event") {
  const auto p = augmentation_probe(2, AlphabetSpec::for_channel_length(2), 0.01);
  const ProbeEntry* e = nullptr;
  for (const auto& x : p.entries)
    if (x.event.symbols() == std::vector<int>{1, -1, 1}) e = &x;
  REQUIRE(e != nullptr);
  CHECK(e->lambda_L == doctest::Approx(1.0));
  CHECK(std::abs(e->cross_term + std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(e->exact_min - (2 - std::sqrt(1.5))) < 1e-12);
  CHECK(std::abs(e->quadratic_min - (1 - 1.0 / 6) / (1 + 1.0 / 18)) < 1e-12);
  CHECK(e->improves);
  CHECK(p.improves);
}

TEST_CASE("augmentation probe is an upper bound on the next worst case") {
  for (int L = 2; L <= 4; ++L) {
    const auto p = augmentation_probe(L, AlphabetSpec::for_channel_length(L), 0.01);
    CHECK(p.improves);
    CHECK(p.min_d2 < kLambda[L]);
    CHECK(p.min_d2 >= kLambda[L + 1] - 1e-12);
  }
}

TEST_CASE("short event cap warns") {
  AlphabetSpec spec{2, 2, 1};
  const auto r = worst_channel(3, spec);
  CHECK_FALSE(r.warning.empty());
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(worst_channel(0, AlphabetSpec{}), InputError);
  CHECK_THROWS_AS(augmentation_probe(2, AlphabetSpec::for_channel_length(2), 0.0), InputError);
  CHECK_THROWS_AS(augmentation_probe(2, AlphabetSpec::for_channel_length(2), 0.6), InputError);
  CHECK_THROWS_AS(sweep(0, SweepConfig{}), InputError);
}
