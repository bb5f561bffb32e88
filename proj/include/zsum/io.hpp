#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zsum/group.hpp"
#include "zsum/hypergraph.hpp"
#include "zsum/sequence.hpp"
#include "zsum/solver.hpp"
#include "zsum/turan.hpp"

namespace zsum {

// ---------------------------------------------------------------------
// Element set / sequence line format:
//   # comment lines and blanks are skipped
//   # group Z2^3        <- optional header, used when no group is supplied
//   0,1,1
//   1,0,1 x3            <- multiplicity suffix ("x3" or a multiplication sign)
// One element per line as comma-separated coordinates.

inline std::string element_string(const GroupSpec& spec, const GroupElement& e) {
  spec.require(e);
  std::string out;
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(e.coords[i]);
  }
  return out;
}

inline GroupElement parse_element(const GroupSpec& spec, std::string_view text) {
  GroupElement e;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - pos);
    if (tok.empty()) throw std::invalid_argument("bad element: " + std::string(text));
    std::uint64_t v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad element: " + std::string(text));
      v = v * 10 + (c - '0');
      if (v > UINT32_MAX) throw std::invalid_argument("bad element: " + std::string(text));
    }
    e.coords.push_back(static_cast<std::uint32_t>(v));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  spec.require(e);
  return e;
}

inline std::string emit_sequence_text(const GSequence& seq) {
  std::string out = "# group " + seq.spec().to_string() + "\n";
  for (const auto& [idx, mult] : seq.entries()) {
    out += element_string(seq.spec(), seq.spec().element_at(idx));
    if (mult > 1) out += " x" + std::to_string(mult);
    out += '\n';
  }
  return out;
}

inline GSequence parse_sequence_text(std::string_view text,
                                     std::optional<GroupSpec> group = {}) {
  std::vector<std::pair<std::string, std::uint64_t>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view rest = line.substr(1);
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      if (rest.substr(0, 6) == "group " && !group)
        group = GroupSpec::parse(rest.substr(6));
      continue;
    }
    std::uint64_t mult = 1;
    std::size_t marker = line.find(" x");
    if (marker == std::string_view::npos) marker = line.find("\xc3\x97");  // ×
    if (marker != std::string_view::npos) {
      std::string_view tail = line.substr(marker);
      tail.remove_prefix(2);  // " x" or the 2-byte multiplication sign
      while (!tail.empty() && tail.front() == ' ') tail.remove_prefix(1);
      if (tail.empty()) throw std::invalid_argument("bad multiplicity: " + std::string(line));
      mult = 0;
      for (char c : tail) {
        if (c < '0' || c > '9')
          throw std::invalid_argument("bad multiplicity: " + std::string(line));
        mult = mult * 10 + (c - '0');
      }
      if (mult == 0) throw std::invalid_argument("multiplicity must be >= 1");
      line = line.substr(0, marker);
      while (!line.empty() && line.back() == ' ') line.remove_suffix(1);
    }
    rows.emplace_back(std::string(line), mult);
  }
  if (!group) throw std::invalid_argument("no group given and no '# group' header found");
  GSequence seq(*group);
  for (const auto& [elem_text, mult] : rows) seq.add(parse_element(*group, elem_text), mult);
  return seq;
}

// ---------------------------------------------------------------------
// Hypergraph exchange format: header "n r", then one edge per line as
// space-separated vertex indices; '#' comments allowed.

inline std::string emit_hypergraph_text(const RGraph& h) {
  std::string out = std::to_string(h.n()) + " " + std::to_string(h.r()) + "\n";
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(e[i]);
    }
    out += '\n';
  }
  return out;
}

inline RGraph parse_hypergraph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  int r = -1;
  std::vector<std::vector<int>> edges;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<long> vals;
    long v;
    while (ls >> v) vals.push_back(v);
    if (vals.empty()) continue;
    if (n < 0) {
      if (vals.size() != 2 || vals[0] < 0 || vals[1] < 1)
        throw std::invalid_argument("hypergraph header must be 'n r'");
      n = static_cast<int>(vals[0]);
      r = static_cast<int>(vals[1]);
      continue;
    }
    std::vector<int> edge(vals.begin(), vals.end());
    edges.push_back(std::move(edge));
  }
  if (n < 0) throw std::invalid_argument("empty hypergraph file");
  return RGraph::explicit_graph(n, r, std::move(edges));
}

// ---------------------------------------------------------------------
// JSON schemas (all carry "schema": 1).

inline nlohmann::json witness_envelope_json(const GSequence& seq, std::uint64_t target_r,
                                            const std::string& sum_check) {
  nlohmann::json j;
  j["schema"] = 1;
  j["target_r"] = target_r;
  j["sum_check"] = sum_check;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [idx, mult] : seq.entries()) {
    std::string row = element_string(seq.spec(), seq.spec().element_at(idx));
    if (mult > 1) row += " x" + std::to_string(mult);
    rows.push_back(row);
  }
  j["elements"] = rows;
  return j;
}

inline nlohmann::json certificate_json(const SearchResult& res) {
  nlohmann::json j;
  j["schema"] = 1;
  j["constant"] = constant_name(res.constant);
  j["group"] = res.spec.to_string();
  j["r"] = res.r;
  j["value"] = res.value;
  j["exhaustive"] = res.exhaustive;
  j["nodes"] = res.nodes;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [idx, mult] : res.witness.entries()) {
    std::string row = element_string(res.spec, res.spec.element_at(idx));
    if (mult > 1) row += " x" + std::to_string(mult);
    rows.push_back(row);
  }
  j["witness"] = rows;
  return j;
}

inline SearchResult certificate_from_json(const nlohmann::json& j) {
  if (!j.contains("schema") || j["schema"].get<int>() != 1)
    throw validation_error("unknown certificate schema");
  GroupSpec spec = GroupSpec::parse(j.at("group").get<std::string>());
  std::string cname = j.at("constant").get<std::string>();
  Constant constant;
  if (cname == "beta_r") constant = Constant::kBetaR;
  else if (cname == "s_r") constant = Constant::kSR;
  else if (cname == "g") constant = Constant::kHarborth;
  else if (cname == "cap") constant = Constant::kCap;
  else throw validation_error("unknown constant: " + cname);
  std::string body;
  for (const auto& row : j.at("witness")) body += row.get<std::string>() + "\n";
  SearchResult res{constant,
                   spec,
                   j.at("r").get<std::uint64_t>(),
                   j.at("value").get<std::uint64_t>(),
                   parse_sequence_text(body, spec),
                   j.at("exhaustive").get<bool>(),
                   j.value("nodes", std::uint64_t{0}),
                   0.0};
  return res;
}

inline const char* provenance_step_kind_name(ProvenanceStep::Kind k) {
  switch (k) {
    case ProvenanceStep::Kind::kBase: return "base";
    case ProvenanceStep::Kind::kShift: return "shift";
    case ProvenanceStep::Kind::kClassical: return "classical";
    case ProvenanceStep::Kind::kExternal: return "external";
    case ProvenanceStep::Kind::kMonotone: return "monotone";
  }
  return "?";
}

inline nlohmann::json provenance_step_json(const ProvenanceStep& s) {
  nlohmann::json j;
  j["kind"] = provenance_step_kind_name(s.kind);
  switch (s.kind) {
    case ProvenanceStep::Kind::kBase:
      j["group"] = s.group;
      j["r"] = s.base_r;
      j["s"] = s.s_value;
      j["exact"] = s.exact;
      j["source"] = fact_source_name(s.source);
      break;
    case ProvenanceStep::Kind::kShift:
      j["j"] = s.j;
      break;
    case ProvenanceStep::Kind::kClassical:
      j["k"] = s.classical_k;
      break;
    case ProvenanceStep::Kind::kExternal:
      j["d"] = s.external_d;
      j["r"] = s.external_r;
      break;
    case ProvenanceStep::Kind::kMonotone:
      j["to_k"] = s.to_k;
      break;
  }
  return j;
}

inline ProvenanceStep provenance_step_from_json(const nlohmann::json& j) {
  ProvenanceStep s;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "base") {
    s.kind = ProvenanceStep::Kind::kBase;
    s.group = j.at("group").get<std::string>();
    s.base_r = j.at("r").get<std::uint64_t>();
    s.s_value = j.at("s").get<std::uint64_t>();
    s.exact = j.value("exact", true);
    std::string src = j.value("source", "solved");
    if (src == "solved") s.source = FactSource::kSolved;
    else if (src == "paper-table") s.source = FactSource::kPaperTable;
    else if (src == "external") s.source = FactSource::kExternal;
    else if (src == "classical") s.source = FactSource::kClassical;
    else throw validation_error("unknown fact source: " + src);
  } else if (kind == "shift") {
    s.kind = ProvenanceStep::Kind::kShift;
    s.j = j.at("j").get<std::uint64_t>();
  } else if (kind == "classical") {
    s.kind = ProvenanceStep::Kind::kClassical;
    s.classical_k = j.at("k").get<std::uint64_t>();
  } else if (kind == "external") {
    s.kind = ProvenanceStep::Kind::kExternal;
    s.external_d = j.at("d").get<std::uint64_t>();
    s.external_r = j.at("r").get<std::uint64_t>();
  } else if (kind == "monotone") {
    s.kind = ProvenanceStep::Kind::kMonotone;
    s.to_k = j.at("to_k").get<std::uint64_t>();
  } else {
    throw validation_error("unknown provenance step kind: " + kind);
  }
  return s;
}

inline nlohmann::json bound_fact_json(const BoundFact& f) {
  nlohmann::json j;
  j["k"] = f.k;
  j["r"] = f.r;
  j["num"] = f.bound.num();
  j["den"] = f.bound.den();
  nlohmann::json chain = nlohmann::json::array();
  for (const auto& s : f.chain) chain.push_back(provenance_step_json(s));
  j["chain"] = chain;
  if (!f.alternates.empty()) {
    nlohmann::json alts = nlohmann::json::array();
    for (const auto& alt : f.alternates) {
      nlohmann::json steps = nlohmann::json::array();
      for (const auto& s : alt) steps.push_back(provenance_step_json(s));
      alts.push_back(steps);
    }
    j["alternates"] = alts;
  }
  return j;
}

// Parses and REPLAYS the chain; throws if the replayed fact disagrees with
// the stored (k, r, bound).
inline BoundFact bound_fact_from_json(const nlohmann::json& j) {
  std::vector<ProvenanceStep> chain;
  for (const auto& sj : j.at("chain")) chain.push_back(provenance_step_from_json(sj));
  BoundFact f = replay_chain(chain);
  if (f.k != j.at("k").get<std::uint64_t>() || f.r != j.at("r").get<std::uint64_t>() ||
      f.bound != Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()))
    throw validation_error("provenance chain replays to a different fact");
  if (j.contains("alternates"))
    for (const auto& alt : j["alternates"]) {
      std::vector<ProvenanceStep> steps;
      for (const auto& sj : alt) steps.push_back(provenance_step_from_json(sj));
      f.alternates.push_back(std::move(steps));
    }
  return f;
}

inline nlohmann::json base_facts_json(std::span<const BaseFact> facts) {
  nlohmann::json j;
  j["schema"] = 1;
  nlohmann::json rows = nlohmann::json::array();
  for (const BaseFact& b : facts) {
    nlohmann::json row;
    row["group"] = b.group;
    row["r"] = b.r;
    row["s"] = b.s_value;
    row["exact"] = b.exact;
    row["source"] = fact_source_name(b.source);
    if (!b.note.empty()) row["note"] = b.note;
    rows.push_back(row);
  }
  j["facts"] = rows;
  return j;
}

inline std::vector<BaseFact> base_facts_from_json(const nlohmann::json& j) {
  std::vector<BaseFact> out;
  for (const auto& row : j.at("facts")) {
    BaseFact b;
    b.group = row.at("group").get<std::string>();
    b.r = row.at("r").get<std::uint64_t>();
    b.s_value = row.at("s").get<std::uint64_t>();
    b.exact = row.value("exact", true);
    std::string src = row.value("source", "solved");
    if (src == "solved") b.source = FactSource::kSolved;
    else if (src == "paper-table") b.source = FactSource::kPaperTable;
    else if (src == "external") b.source = FactSource::kExternal;
    else if (src == "classical") b.source = FactSource::kClassical;
    else throw validation_error("unknown fact source: " + src);
    b.note = row.value("note", "");
    out.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------
// Small file helpers.

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace zsum
