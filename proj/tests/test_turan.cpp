#include <catch2/catch.hpp>

#include <random>

#include "oracles.hpp"
#include "zsum/io.hpp"
#include "zsum/solver.hpp"
#include "zsum/table.hpp"
#include "zsum/turan.hpp"

using zsum::BasketWitness;
using zsum::BaseFact;
using zsum::BoundFact;
using zsum::BoundLedger;
using zsum::FactSource;
using zsum::GroupSpec;
using zsum::ProvenanceStep;
using zsum::Rational;

TEST_CASE("basket sizes are almost equal", "[turan]") {
  BasketWitness w(GroupSpec::parse("Z2^2"), 4, 12);
  for (std::uint64_t t = 0; t < 4; ++t) CHECK(w.basket_size(t) == 3);

  BasketWitness w2(GroupSpec::parse("Z3"), 3, 10);
  CHECK(w2.basket_size(0) == 4);
  CHECK(w2.basket_size(1) == 3);
  CHECK(w2.basket_size(2) == 3);

  BasketWitness w3(GroupSpec::parse("Z2"), 2, 5);
  CHECK(w3.basket_size(0) == 3);
  CHECK(w3.basket_size(1) == 2);
  // Edge iff the two labels are equal in Z2.
  CHECK(w3.is_edge(std::vector<int>{0, 2}));
  CHECK_FALSE(w3.is_edge(std::vector<int>{0, 1}));

  CHECK_THROWS_AS(BasketWitness(GroupSpec::parse("Z3"), 2, 9), std::invalid_argument);
  CHECK_THROWS_AS(BasketWitness(GroupSpec::parse("Z3"), 3, 2), std::invalid_argument);
}

TEST_CASE("closed-form codegree", "[turan]") {
  BasketWitness w(GroupSpec::parse("Z2^2"), 4, 12);
  // Three distinct non-target baskets: labels 0,1,2 sum to 3, basket 3 is
  // untouched, so the degree is the full basket.
  CHECK(w.codegree(std::vector<int>{0, 1, 2}) == 3);
  // A whole basket: target falls back onto it, nothing remains.
  CHECK(w.codegree(std::vector<int>{0, 4, 8}) == 0);
  CHECK_THROWS_AS(w.codegree(std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("closed form equals exhaustive extension counting", "[turan]") {
  for (auto [name, r, n] : {std::tuple{"Z2^2", 4, 12}, {"Z3", 3, 9}, {"Z2", 2, 7},
                            {"Z2^2", 4, 10}, {"Z3", 3, 11}}) {
    BasketWitness w(GroupSpec::parse(name), r, n);
    zsum::RGraph::for_each_subset(n, r - 1, [&](std::span<const int> s) {
      std::uint64_t brute = 0;
      for (int v = 0; v < static_cast<int>(n); ++v) {
        if (std::find(s.begin(), s.end(), v) != s.end()) continue;
        std::vector<int> probe(s.begin(), s.end());
        probe.push_back(v);
        std::sort(probe.begin(), probe.end());
        if (w.is_edge(probe)) ++brute;
      }
      REQUIRE(w.codegree(s) == brute);
    });
  }
}

TEST_CASE("max codegree equals Delta_{r-1} of the implicit graph", "[turan]") {
  BasketWitness w(GroupSpec::parse("Z2^2"), 4, 12);
  std::uint64_t max_seen = 0;
  zsum::RGraph::for_each_subset(12, 3, [&](std::span<const int> s) {
    max_seen = std::max(max_seen, w.codegree(s));
  });
  CHECK(max_seen == 3);
  CHECK(delta_l(w.to_rgraph(), 3) == 3);  // uses the codegree closure
}

TEST_CASE("codegree extremes across n", "[turan]") {
  for (auto [name, r] : {std::pair{"Z2^2", 4}, {"Z3", 3}, {"Z3^2", 3}}) {
    GroupSpec spec = GroupSpec::parse(name);
    for (std::uint32_t n = static_cast<std::uint32_t>(std::max<std::uint64_t>(r, spec.order()));
         n <= 16; ++n) {
      BasketWitness w(spec, r, n);
      auto cert = certify_witness(w, 1);
      std::uint64_t g = spec.order();
      INFO(name << " n=" << n);
      CHECK(cert.max_codegree == (n + g - 1) / g);
      std::uint64_t lo = n / g;
      CHECK(cert.min_codegree + (r - 1) >= lo);  // min >= floor(n/|G|) - (r-1)
    }
  }
  // Degenerate family: with r = 2 over Z2 the missing vertex always lands in
  // a basket the subset already occupies, so the maximum is one lower.
  for (std::uint32_t n = 2; n <= 16; ++n) {
    BasketWitness w(GroupSpec::parse("Z2"), 2, n);
    auto cert = certify_witness(w, 1);
    CHECK(cert.max_codegree == (n + 1) / 2 - 1);
    CHECK(cert.min_codegree == n / 2 - 1);
  }
}

TEST_CASE("witness certification", "[turan]") {
  // alpha = 5 < s_4(Z2^2) = 6; extremes frozen by the exhaustive oracle.
  BasketWitness w(GroupSpec::parse("Z2^2"), 4, 12);
  auto cert = certify_witness(w, 6);
  REQUIRE(cert.alpha_exact);
  CHECK(*cert.alpha == 5);
  CHECK(*cert.verdict);
  CHECK(cert.max_codegree == 3);
  CHECK(cert.min_codegree == 0);

  BasketWitness w3(GroupSpec::parse("Z3"), 3, 9);
  auto cert3 = certify_witness(w3, 5);
  REQUIRE(cert3.alpha_exact);
  CHECK(*cert3.alpha == 4);
  CHECK(*cert3.verdict);

  BasketWitness w2(GroupSpec::parse("Z2"), 2, 5);
  auto cert2 = certify_witness(w2, 3);
  REQUIRE(cert2.alpha_exact);
  CHECK(*cert2.alpha == 2);  // one vertex per basket
  CHECK(*cert2.verdict);

  // Cap exceeded: partial certificate with alpha omitted.
  zsum::HypergraphCaps caps;
  caps.alpha_max_n = 4;
  auto partial = certify_witness(w, 6, caps);
  CHECK_FALSE(partial.alpha_exact);
  CHECK_FALSE(partial.alpha.has_value());
  CHECK(partial.max_codegree == 3);
}

TEST_CASE("verdict holds at n = 2|G| and 3|G| for solved pairs", "[turan]") {
  for (auto [name, r] : {std::pair{"Z2^2", 4}, {"Z3", 3}, {"Z2", 2}, {"Z4", 4}}) {
    GroupSpec spec = GroupSpec::parse(name);
    zsum::SearchResult s = solve_s_r(spec, r);
    REQUIRE(s.exhaustive);
    for (std::uint64_t mult : {2, 3}) {
      std::uint32_t n = static_cast<std::uint32_t>(mult * spec.order());
      if (n < r) continue;
      BasketWitness w(spec, r, n);
      auto cert = certify_witness(w, s.value);
      INFO(name << " n=" << n);
      REQUIRE(cert.alpha_exact);
      CHECK(*cert.verdict);  // alpha < s_r(G)
    }
  }
}

TEST_CASE("derive_bounds produces the shifted family", "[turan]") {
  BaseFact base{"Z2^3", 4, 7, true, FactSource::kSolved, ""};
  auto facts = derive_bounds(std::vector<BaseFact>{base}, 3);
  REQUIRE(facts.size() == 4);
  CHECK(facts[0].k == 7);
  CHECK(facts[0].r == 4);
  CHECK(facts[0].bound == Rational(1, 8));
  CHECK(facts[1].k == 8);
  CHECK(facts[1].r == 5);
  CHECK(facts[3].k == 10);
  CHECK(facts[3].r == 7);
  for (const auto& f : facts) CHECK(f.bound == Rational(1, 8));
}

TEST_CASE("replay rejects malformed chains", "[turan]") {
  ProvenanceStep shift;
  shift.kind = ProvenanceStep::Kind::kShift;
  shift.j = 1;
  CHECK_THROWS_AS(zsum::replay_chain({shift}), zsum::validation_error);
  CHECK_THROWS_AS(zsum::replay_chain({}), zsum::validation_error);

  ProvenanceStep bad_base;
  bad_base.kind = ProvenanceStep::Kind::kBase;
  bad_base.group = "Z3";
  bad_base.base_r = 2;  // not a multiple of exp(Z3)
  bad_base.s_value = 5;
  CHECK_THROWS_AS(zsum::replay_chain({bad_base}), zsum::validation_error);

  ProvenanceStep ext;
  ext.kind = ProvenanceStep::Kind::kExternal;
  ext.external_d = 4;
  ext.external_r = 3;  // needs r >= 2*ceil(d/2) = 4
  CHECK_THROWS_AS(zsum::replay_chain({ext}), zsum::validation_error);
}

TEST_CASE("ledger dedup keeps the strongest bound and all provenances", "[turan]") {
  BoundLedger ledger;
  ProvenanceStep weak;
  weak.kind = ProvenanceStep::Kind::kExternal;
  weak.external_d = 1;
  weak.external_r = 4;  // tau(5,4) <= 1/2
  ledger.insert(zsum::replay_chain({weak}));

  BaseFact strong{"Z2", 4, 5, true, FactSource::kSolved, ""};  // tau(5,4) <= 1/2... same k,r
  for (BoundFact& f : derive_bounds(std::vector<BaseFact>{strong}, 0))
    ledger.insert(std::move(f));
  CHECK(ledger.size() == 1);
  auto rows = ledger.rows();
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].bound == Rational(1, 2));
  CHECK(rows[0].alternates.size() == 1);  // both derivations recorded
}

TEST_CASE("k-monotone rule improves weaker rows at larger k", "[turan]") {
  BoundLedger ledger;
  ProvenanceStep c4;
  c4.kind = ProvenanceStep::Kind::kClassical;
  c4.classical_k = 4;  // tau(4,2) <= 1/3
  ledger.insert(zsum::replay_chain({c4}));

  ProvenanceStep c3;
  c3.kind = ProvenanceStep::Kind::kClassical;
  c3.classical_k = 3;  // tau(3,2) <= 1/2
  ProvenanceStep mono;
  mono.kind = ProvenanceStep::Kind::kMonotone;
  mono.to_k = 6;
  ledger.insert(zsum::replay_chain({c3, mono}));  // a deliberately weak (6,2) <= 1/2

  auto rows = ledger.rows();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].k == 4);
  CHECK(rows[0].bound == Rational(1, 3));
  CHECK(rows[1].k == 6);
  CHECK(rows[1].bound == Rational(1, 3));  // improved by the k=4 fact
  CHECK(rows[1].alternates.size() == 1);   // the 1/2 chain is preserved
  CHECK(rows[1].chain.back().kind == ProvenanceStep::Kind::kMonotone);

  auto strongest = ledger.strongest_at(10, 2);
  REQUIRE(strongest.has_value());
  CHECK(strongest->bound == Rational(1, 3));
}

TEST_CASE("reference facts", "[turan]") {
  auto facts = zsum::reference_facts();
  bool t32 = false, ext_d2 = false;
  for (const BoundFact& f : facts) {
    if (f.k == 3 && f.r == 2) {
      CHECK(f.bound == Rational(1, 2));  // Mantel
      t32 = true;
    }
    if (f.chain[0].kind == ProvenanceStep::Kind::kExternal &&
        f.chain[0].external_d == 2) {
      CHECK(f.r >= 4);  // even d: the base needs r > d
      CHECK(f.bound == Rational(1, 4));
      if (f.r == 4) ext_d2 = true;
    }
    // Never contradict the exact classical values: tau(k,2) = 1/(k-1).
    if (f.r == 2) CHECK(f.bound >= Rational(1, static_cast<std::int64_t>(f.k - 1)));
  }
  CHECK(t32);
  CHECK(ext_d2);
  // The misprintable boundary case: tau(4,2) <= 1/4 would contradict
  // t(4,2) = 1/3 and must be rejected.
  ProvenanceStep bad;
  bad.kind = ProvenanceStep::Kind::kExternal;
  bad.external_d = 2;
  bad.external_r = 2;
  CHECK_THROWS_AS(zsum::replay_chain({bad}), zsum::validation_error);
  CHECK_FALSE(zsum::ledger_annotations().empty());
}

TEST_CASE("default base facts reproduce the displayed inequalities", "[turan]") {
  BoundLedger ledger;
  for (BoundFact& f : derive_bounds(zsum::default_base_facts(), 8)) ledger.insert(std::move(f));
  for (BoundFact& f : zsum::reference_facts()) ledger.insert(std::move(f));

  auto expect = [&](std::uint64_t k, std::uint64_t r, Rational bound) {
    auto f = ledger.strongest_at(k, r);
    REQUIRE(f.has_value());
    INFO("tau(" << k << "," << r << ")");
    CHECK(f->bound <= bound);
  };
  expect(9, 3, Rational(1, 9));    // from s_3(Z3^2) = 9
  expect(19, 3, Rational(1, 27));  // from the a_3 table row
  for (std::uint64_t r = 4; r <= 10; ++r) {
    expect(r + 2, r, Rational(1, 4));
    expect(r + 3, r, Rational(1, 8));
    expect(r + 5, r, Rational(1, 16));
  }
  for (std::uint64_t r = 2; r <= 10; ++r) expect(r + 1, r, Rational(1, 2));
  // Closed-form series: tau(4 + b_d, 4) <= 2^-d, cross-checked against b_d.
  for (unsigned d = 5; d <= 8; ++d)
    expect(4 + zsum::b_d(d), 4, Rational(1, std::int64_t{1} << d));
}

TEST_CASE("serialization replays to the identical fact", "[turan]") {
  BoundLedger ledger;
  for (BoundFact& f : derive_bounds(zsum::default_base_facts(), 6)) ledger.insert(std::move(f));
  for (BoundFact& f : zsum::reference_facts()) ledger.insert(std::move(f));
  for (const BoundFact& f : ledger.rows()) {
    nlohmann::json j = zsum::bound_fact_json(f);
    BoundFact back = zsum::bound_fact_from_json(j);  // parses AND replays
    CHECK(back.k == f.k);
    CHECK(back.r == f.r);
    CHECK(back.bound == f.bound);
    CHECK(back.chain.size() == f.chain.size());
    CHECK(back.alternates.size() == f.alternates.size());
  }
  // Byte-identical CSV across runs.
  BoundLedger again;
  for (BoundFact& f : derive_bounds(zsum::default_base_facts(), 6)) again.insert(std::move(f));
  for (BoundFact& f : zsum::reference_facts()) again.insert(std::move(f));
  CHECK(ledger.to_csv() == again.to_csv());
}
