#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsum/turan.hpp"

namespace zsum {

// One bundled constant. "solved" rows are backed by a certificate file under
// data/certificates/ and are re-solvable at desk scale; "paper" rows carry a
// literature citation and are displayed, never asserted by tests.
struct TableEntry {
  std::string constant;  // beta | s | g | cap
  std::string group;
  std::uint64_t r = 0;
  std::uint64_t value = 0;
  std::string provenance;  // solved | paper
  std::string anchor;      // certificate file or citation
  bool long_run = false;   // solved only behind an opt-in flag
};

inline std::string certificate_file_name(const std::string& constant,
                                         const std::string& group, std::uint64_t r) {
  std::string g = group;
  for (char& c : g)
    if (c == '^') c = '_';
  return constant + "_" + g + "_r" + std::to_string(r) + ".json";
}

inline const std::vector<TableEntry>& reference_table() {
  static const std::vector<TableEntry> table = [] {
    std::vector<TableEntry> t;
    auto solved = [&](const std::string& c, const std::string& g, std::uint64_t r,
                      std::uint64_t v) {
      t.push_back(TableEntry{c, g, r, v, "solved", certificate_file_name(c, g, r), false});
    };
    auto paper = [&](const std::string& c, const std::string& g, std::uint64_t r,
                     std::uint64_t v, const std::string& anchor, bool long_run = false) {
      t.push_back(TableEntry{c, g, r, v, "paper", anchor, long_run});
    };

    // Maximum Sidon sets (zero-free sets of rank 4) in Z2^d.
    solved("beta", "Z2", 4, 2);
    solved("beta", "Z2^2", 4, 3);
    solved("beta", "Z2^3", 4, 4);
    solved("beta", "Z2^4", 4, 6);

    // Generalized zero-sum constants over Z2^d at r = 4.
    solved("s", "Z2", 4, 5);
    solved("s", "Z2^2", 4, 6);
    solved("s", "Z2^3", 4, 7);
    solved("s", "Z2^4", 4, 9);

    // Classical zero-sum constants.
    solved("s", "Z2", 2, 3);
    solved("s", "Z3", 3, 5);
    solved("s", "Z4", 4, 7);
    solved("s", "Z2^2", 2, 5);
    solved("s", "Z3^2", 3, 9);
    solved("s", "Z2^2", 8, 10);
    paper("s", "Z5", 5, 9, "s(Z_k) = 2k-1 (Erdos-Ginzburg-Ziv 1961)");
    paper("s", "Z6", 6, 11, "s(Z_k) = 2k-1 (Erdos-Ginzburg-Ziv 1961)");
    paper("s", "Z7", 7, 13, "s(Z_k) = 2k-1 (Erdos-Ginzburg-Ziv 1961)");
    paper("s", "Z4^2", 4, 13, "s(Z_k^2) = 4k-3 (Kemnitz conjecture, Reiher 2007)");
    paper("s", "Z5^2", 5, 17, "s(Z_k^2) = 4k-3 (Kemnitz conjecture, Reiher 2007)");
    paper("s", "Z2^3", 8, 11, "s_{km}(Z_k^d) = km+(k-1)d for m >= k^{d-1} (Gao 2003)");

    // Harborth constants.
    solved("g", "Z3", 3, 3);
    solved("g", "Z3^2", 3, 5);
    solved("g", "Z3^3", 3, 10);

    // Cap sets in AG(d,3): a_d = beta_3(Z3^d) = g(Z3^d) - 1.
    solved("cap", "Z3^2", 3, 4);
    solved("cap", "Z3^3", 3, 9);
    paper("cap", "Z3^4", 3, 20, "a_4 = 20 (Edel et al.)", /*long_run=*/true);
    paper("cap", "Z3^5", 3, 45, "a_5 = 45 (Edel 2007)");
    paper("cap", "Z3^6", 3, 112, "a_6 = 112 (Potechin 2008)");
    return t;
  }();
  return table;
}

inline std::optional<TableEntry> table_lookup(const std::string& constant,
                                              const std::string& group, std::uint64_t r) {
  for (const TableEntry& e : reference_table())
    if (e.constant == constant && e.group == group && e.r == r) return e;
  return std::nullopt;
}

// Default seeds for the bound ledger: solved s_r values (certificates in
// data/certificates/), literature cap-set rows s_3(Z3^d) = 2*a_d + 1, and the
// closed-form s_4(Z2^d) <= b_d + 4 series for d beyond exact reach.
inline std::vector<BaseFact> default_base_facts();

}  // namespace zsum

#include "zsum/construct.hpp"

namespace zsum {

inline std::vector<BaseFact> default_base_facts() {
  std::vector<BaseFact> facts;
  auto solved = [&](const std::string& g, std::uint64_t r, std::uint64_t s) {
    facts.push_back(BaseFact{g, r, s, true, FactSource::kSolved,
                             "certificate " + certificate_file_name("s", g, r)});
  };
  solved("Z2", 2, 3);
  solved("Z3", 3, 5);
  solved("Z4", 4, 7);
  solved("Z2^2", 4, 6);
  solved("Z2^3", 4, 7);
  solved("Z2^4", 4, 9);
  solved("Z3^2", 3, 9);
  solved("Z2^2", 8, 10);

  const std::uint64_t caps[] = {0, 0, 4, 9, 20, 45, 112};  // a_d, d = 2..6
  for (unsigned d = 3; d <= 6; ++d)
    facts.push_back(BaseFact{"Z3^" + std::to_string(d), 3, 2 * caps[d] + 1, true,
                             FactSource::kPaperTable,
                             "s_3(Z3^d) = 2*a_d + 1, cap-set tables (Edel 2007)"});

  for (unsigned d = 5; d <= 8; ++d)
    facts.push_back(BaseFact{"Z2^" + std::to_string(d), 4, b_d(d) + 4, false,
                             FactSource::kPaperTable,
                             "s_4(Z2^d) <= b_d + 4 via the Sidon counting bound"});
  return facts;
}

}  // namespace zsum
