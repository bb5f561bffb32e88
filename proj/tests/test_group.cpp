#include <catch2/catch.hpp>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "zsum/group.hpp"

using zsum::GroupElement;
using zsum::GroupSpec;

TEST_CASE("group spec parsing", "[algebra]") {
  CHECK(GroupSpec::parse("Z2^5").moduli() == std::vector<std::uint32_t>(5, 2));
  CHECK(GroupSpec::parse("Z3^2").moduli() == std::vector<std::uint32_t>{3, 3});
  CHECK(GroupSpec::parse("Z2xZ4").moduli() == std::vector<std::uint32_t>{2, 4});
  CHECK(GroupSpec::parse("Z5").moduli() == std::vector<std::uint32_t>{5});
  CHECK(GroupSpec::parse("Z2xZ4").to_string() == "Z2xZ4");
  CHECK(GroupSpec::parse("Z2^3").to_string() == "Z2^3");
  CHECK(GroupSpec::parse("Z2xZ2").to_string() == "Z2^2");
  CHECK_THROWS_AS(GroupSpec::parse("Q8"), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec::parse("Z1"), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec::parse("Z2^"), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec::parse(""), std::invalid_argument);
}

TEST_CASE("order, exponent, overflow", "[algebra]") {
  GroupSpec g = GroupSpec::parse("Z2xZ4");
  CHECK(g.order() == 8);
  CHECK(g.exponent() == 4);
  CHECK(GroupSpec::parse("Z3^2").exponent() == 3);
  CHECK(GroupSpec::parse("Z6xZ4").exponent() == 12);
  CHECK_THROWS_AS(GroupSpec::parse("Z2^65"), std::overflow_error);
}

TEST_CASE("enumeration order is mixed-radix lexicographic", "[algebra]") {
  GroupSpec z22 = GroupSpec::parse("Z2^2");
  auto elems = enumerate_elements(z22);
  REQUIRE(elems.size() == 4);
  CHECK(elems[0].coords == std::vector<std::uint32_t>{0, 0});
  CHECK(elems[1].coords == std::vector<std::uint32_t>{0, 1});
  CHECK(elems[2].coords == std::vector<std::uint32_t>{1, 0});
  CHECK(elems[3].coords == std::vector<std::uint32_t>{1, 1});

  auto z3 = enumerate_elements(GroupSpec::parse("Z3"));
  REQUIRE(z3.size() == 3);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(z3[i].coords[0] == i);

  for (const char* name : {"Z2^3", "Z3^2", "Z2xZ4", "Z5xZ3"}) {
    GroupSpec spec = GroupSpec::parse(name);
    auto all = enumerate_elements(spec);
    CHECK(all.size() == spec.order());
    for (std::uint64_t i = 0; i + 1 < all.size(); ++i)
      CHECK(all[i].coords < all[i + 1].coords);  // strictly increasing, no repeats
    for (std::uint64_t i = 0; i < all.size(); ++i)
      CHECK(spec.index_of(all[i]) == i);
  }
}

TEST_CASE("enumeration cap", "[algebra]") {
  CHECK_THROWS_AS(enumerate_elements(GroupSpec::parse("Z2^25")), zsum::capacity_error);
  CHECK_THROWS_AS(enumerate_elements(GroupSpec::parse("Z2^10"), 512), zsum::capacity_error);
  CHECK(enumerate_elements(GroupSpec::parse("Z2^10"), 1024).size() == 1024);
  setenv("ZEROSUM_ELEMENT_CAP", "4", 1);
  CHECK(zsum::default_element_cap() == 4);
  CHECK_THROWS_AS(enumerate_elements(GroupSpec::parse("Z2^3")), zsum::capacity_error);
  unsetenv("ZEROSUM_ELEMENT_CAP");
  CHECK(zsum::default_element_cap() == std::uint64_t{1} << 24);
}

TEST_CASE("addition and negation examples", "[algebra]") {
  GroupSpec z23 = GroupSpec::parse("Z2^3");
  CHECK(z23.packed_of(z23.add(z23.from_packed(0b101), z23.from_packed(0b011))) == 0b110);

  GroupSpec z32 = GroupSpec::parse("Z3^2");
  GroupElement sum = z32.add(GroupElement{{1, 2}}, GroupElement{{2, 2}});
  CHECK(sum.coords == std::vector<std::uint32_t>{0, 1});

  CHECK(GroupSpec::parse("Z3").neg(GroupElement{{1}}).coords == std::vector<std::uint32_t>{2});
  CHECK(GroupSpec::parse("Z5xZ2").neg(GroupElement{{3, 1}}).coords ==
        std::vector<std::uint32_t>{2, 1});

  std::mt19937 rng(7);
  for (const char* name : {"Z2^6", "Z3^3", "Z7", "Z2xZ4"}) {
    GroupSpec spec = GroupSpec::parse(name);
    std::uniform_int_distribution<std::uint64_t> pick(0, spec.order() - 1);
    for (int trial = 0; trial < 50; ++trial) {
      GroupElement a = spec.element_at(pick(rng));
      CHECK(spec.add(a, spec.neg(a)) == spec.identity());
      if (spec.is_binary()) CHECK(spec.neg(a) == a);
    }
  }
}

TEST_CASE("group laws, exhaustive", "[algebra]") {
  // Identity, inverse, commutativity, associativity on |G| up to 256.
  for (const char* name : {"Z2^3", "Z3^2", "Z2xZ4", "Z5", "Z2^8", "Z4xZ8"}) {
    GroupSpec spec = GroupSpec::parse(name);
    const std::uint64_t n = spec.order();
    std::uint64_t violations = 0;
    for (std::uint64_t a = 0; a < n; ++a) {
      violations += spec.add_index(a, 0) != a;
      violations += spec.add_index(a, spec.neg_index(a)) != 0;
      for (std::uint64_t b = 0; b < n; ++b) {
        violations += spec.add_index(a, b) != spec.add_index(b, a);
        for (std::uint64_t c = 0; c < n; ++c)
          violations += spec.add_index(spec.add_index(a, b), c) !=
                        spec.add_index(a, spec.add_index(b, c));
      }
    }
    INFO(name);
    REQUIRE(violations == 0);
  }
}

TEST_CASE("packed and coordinate encodings agree", "[algebra]") {
  std::mt19937 rng(11);
  for (unsigned d : {1u, 2u, 8u, 16u, 33u, 63u}) {
    GroupSpec spec(std::vector<std::uint32_t>(d, 2));
    std::uniform_int_distribution<std::uint64_t> pick(
        0, d == 63 ? (std::uint64_t{1} << 63) - 1 : spec.order() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      std::uint64_t p = pick(rng);
      std::uint64_t q = pick(rng);
      GroupElement a = spec.from_packed(p);
      GroupElement b = spec.from_packed(q);
      REQUIRE(spec.packed_of(a) == p);  // lossless round-trip
      GroupElement via_coords = spec.add(a, b);
      REQUIRE(spec.packed_of(via_coords) == (p ^ q));  // XOR semantics
    }
  }
}

TEST_CASE("elements are structural values", "[algebra]") {
  GroupSpec spec = GroupSpec::parse("Z3^2");
  GroupElement a{{1, 2}};
  GroupElement b{{1, 2}};
  CHECK(a == b);
  CHECK(std::hash<GroupElement>{}(a) == std::hash<GroupElement>{}(b));
  CHECK(spec.conforms(a));
  CHECK_FALSE(spec.conforms(GroupElement{{3, 0}}));
  CHECK_THROWS_AS(spec.require(GroupElement{{0, 0, 0}}), std::invalid_argument);
}
