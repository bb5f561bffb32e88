#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zsum/construct.hpp"
#include "zsum/io.hpp"
#include "zsum/solver.hpp"
#include "zsum/table.hpp"
#include "zsum/turan.hpp"

namespace zsum::cli {

// Exit codes: 0 success / true verdict, 1 false verdict or non-exhaustive
// result, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline SymmetryMode parse_symmetry(const std::string& s) {
  if (s == "on") return SymmetryMode::kOn;
  if (s == "off") return SymmetryMode::kOff;
  if (s == "auto") return SymmetryMode::kAuto;
  throw CLI::ValidationError("--symmetry", "expected on|off|auto");
}

struct SolveFlags {
  std::string group;
  std::uint64_t r = 0;
  unsigned d = 0;
  std::uint64_t budget_nodes = std::numeric_limits<std::uint64_t>::max();
  double budget_secs = std::numeric_limits<double>::infinity();
  unsigned threads = 1;
  std::string symmetry = "auto";
  std::string emit_witness;
  bool json = false;

  SearchBudget budget() const {
    SearchBudget b;
    b.max_nodes = budget_nodes;
    b.max_seconds = budget_secs;
    b.threads = threads;
    b.symmetry = parse_symmetry(symmetry);
    return b;
  }
};

inline void add_budget_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--budget-nodes", f.budget_nodes, "node budget (default unlimited)");
  cmd->add_option("--budget-secs", f.budget_secs, "wall-time budget in seconds");
  cmd->add_option("--threads", f.threads, "worker threads (default 1)");
  cmd->add_option("--symmetry", f.symmetry, "symmetry reduction: on|off|auto (default auto)");
  cmd->add_option("--emit-witness", f.emit_witness, "write the extremal witness to FILE");
  cmd->add_flag("--json", f.json, "machine-readable output");
}

inline int report_solve(const SearchResult& res, const SolveFlags& flags,
                        std::ostream& out) {
  std::string witness_file;
  if (!flags.emit_witness.empty()) {
    write_text_file(flags.emit_witness, emit_sequence_text(res.witness));
    witness_file = flags.emit_witness;
  }
  if (flags.json) {
    nlohmann::json j;
    j["schema"] = 1;
    j["constant"] = constant_name(res.constant);
    j["group"] = res.spec.to_string();
    j["r"] = res.r;
    j["value"] = res.value;
    j["exhaustive"] = res.exhaustive;
    j["witness_file"] = witness_file.empty() ? nlohmann::json() : nlohmann::json(witness_file);
    j["nodes"] = res.nodes;
    j["seconds"] = res.seconds;
    out << j.dump(2) << "\n";
  } else {
    out << constant_name(res.constant) << "(" << res.spec.to_string();
    if (res.constant != Constant::kHarborth) out << ", r=" << res.r;
    out << ") = " << res.value << (res.exhaustive ? " [exhaustive]" : " [lower bound only]")
        << " nodes=" << res.nodes << " seconds=" << res.seconds << "\n";
    for (const auto& [idx, mult] : res.witness.entries()) {
      out << "  " << element_string(res.spec, res.spec.element_at(idx));
      if (mult > 1) out << " x" << mult;
      out << "\n";
    }
    if (!witness_file.empty()) out << "witness written to " << witness_file << "\n";
  }
  return res.exhaustive ? kExitOk : kExitFalse;
}

inline const char* construction_kind_name(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::kSidonBasis: return "sidon-basis";
    case ConstructionKind::kSidonD4: return "sidon-d4";
    case ConstructionKind::kMomentCurve: return "moment-curve";
    case ConstructionKind::kExtremalSequence: return "egz-lower";
    case ConstructionKind::kS4LowerSequence: return "s4-lower";
  }
  return "?";
}

inline const char* claim_name(const ClaimedProperty& c) {
  switch (c.kind) {
    case ClaimedProperty::Kind::kSidon: return "sidon";
    case ClaimedProperty::Kind::kZeroFreeOfRank: return "zero-free-of-rank";
    case ClaimedProperty::Kind::kZeroFreeEvenRanks: return "zero-free-even-ranks";
    case ClaimedProperty::Kind::kNoZeroSumOfLength: return "no-zero-sum-of-length";
  }
  return "?";
}

inline int report_construction(const ConstructionOutput& c, bool json,
                               const std::string& out_file, std::ostream& out) {
  bool ok = revalidate(c);
  if (!out_file.empty()) write_text_file(out_file, emit_sequence_text(c.payload));
  if (json) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = construction_kind_name(c.kind);
    j["group"] = c.spec.to_string();
    j["length"] = c.payload.length();
    j["distinct"] = c.payload.distinct_count();
    j["claim"] = {{"property", claim_name(c.claim)}, {"r", c.claim.r}};
    j["revalidated"] = ok;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [idx, mult] : c.payload.entries()) {
      std::string row = element_string(c.spec, c.spec.element_at(idx));
      if (mult > 1) row += " x" + std::to_string(mult);
      rows.push_back(row);
    }
    j["elements"] = rows;
    out << j.dump(2) << "\n";
  } else {
    out << "# " << construction_kind_name(c.kind) << " over " << c.spec.to_string()
        << ", length " << c.payload.length() << ", claim " << claim_name(c.claim);
    if (c.claim.r) out << "(" << c.claim.r << ")";
    out << (ok ? " [revalidated]" : " [REVALIDATION FAILED]") << "\n";
    out << emit_sequence_text(c.payload);
  }
  return ok ? kExitOk : kExitFalse;
}

inline GSequence load_sequence(const std::string& path, const std::string& group) {
  std::optional<GroupSpec> hint;
  if (!group.empty()) hint = GroupSpec::parse(group);
  return parse_sequence_text(read_text_file(path), hint);
}

struct SolverHook {
  // Re-solves one bundled table entry; shared by `table verify` and
  // `table emit-certs`.
  static SearchResult solve_entry(const TableEntry& e, const SearchBudget& budget) {
    GroupSpec spec = GroupSpec::parse(e.group);
    if (e.constant == "beta") return solve_beta_r(spec, e.r, budget);
    if (e.constant == "s") return solve_s_r(spec, e.r, budget);
    if (e.constant == "g") return solve_harborth(spec, budget);
    if (e.constant == "cap")
      return solve_cap(static_cast<unsigned>(spec.rank()), budget);
    throw std::invalid_argument("unknown table constant: " + e.constant);
  }
};

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact zero-sum combinatorics over finite abelian groups"};
  app.require_subcommand(1);
  std::uint64_t element_cap = 0;
  app.add_option("--element-cap", element_cap,
                 "group enumeration cap (also: ZEROSUM_ELEMENT_CAP)");

  // ---- solve ----------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "exact extremal constants with certificates");
  solve->require_subcommand(1);
  detail::SolveFlags sf;
  auto* solve_sr = solve->add_subcommand("sr", "generalized zero-sum constant s_r(G)");
  solve_sr->add_option("--group", sf.group, "group, e.g. Z3^2")->required();
  solve_sr->add_option("--r", sf.r, "subsequence length (multiple of exp(G))")->required();
  detail::add_budget_flags(solve_sr, sf);
  auto* solve_beta = solve->add_subcommand("beta", "largest zero-free set of rank r");
  solve_beta->add_option("--group", sf.group)->required();
  solve_beta->add_option("--r", sf.r)->required();
  detail::add_budget_flags(solve_beta, sf);
  auto* solve_cap_cmd = solve->add_subcommand("cap", "maximum cap in AG(d,3)");
  solve_cap_cmd->add_option("--d", sf.d, "dimension")->required();
  unsigned cap_limit = 4;
  solve_cap_cmd->add_option("--dimension-limit", cap_limit,
                            "opt-in gate for long runs beyond d = 4");
  detail::add_budget_flags(solve_cap_cmd, sf);
  auto* solve_g = solve->add_subcommand("g", "Harborth constant g(G)");
  solve_g->add_option("--group", sf.group)->required();
  detail::add_budget_flags(solve_g, sf);

  // ---- construct ------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "explicit extremal objects");
  construct->require_subcommand(1);
  unsigned c_d = 0, c_m = 0, c_k = 0;
  std::string c_modulus, c_out;
  bool c_json = false;
  auto* con_sidon = construct->add_subcommand("sidon", "Sidon set in Z2^d");
  con_sidon->add_option("--d", c_d)->required();
  con_sidon->add_option("--out", c_out, "write the set to FILE");
  con_sidon->add_flag("--json", c_json);
  auto* con_curve = construct->add_subcommand("moment-curve",
                                              "(x, x^3, ..., x^{2m-1}) over GF(2^k)");
  con_curve->add_option("--m", c_m)->required();
  con_curve->add_option("--k", c_k)->required();
  con_curve->add_option("--modulus", c_modulus, "field modulus, hex bitvector");
  con_curve->add_option("--out", c_out);
  con_curve->add_flag("--json", c_json);
  auto* con_egz = construct->add_subcommand(
      "egz-lower", "length 2^k+2m-2 sequence with no zero-sum of length 2m");
  con_egz->add_option("--m", c_m)->required();
  con_egz->add_option("--k", c_k)->required();
  con_egz->add_option("--modulus", c_modulus);
  con_egz->add_option("--out", c_out);
  con_egz->add_flag("--json", c_json);
  auto* con_s4 = construct->add_subcommand("s4-lower",
                                           "Sidon set plus a tripled element, no zero-sum of length 4");
  con_s4->add_option("--d", c_d)->required();
  con_s4->add_option("--out", c_out);
  con_s4->add_flag("--json", c_json);

  // ---- bound ----------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "closed-form bound calculators");
  bound->require_subcommand(1);
  unsigned b_m = 0, b_dim = 0;
  bool b_json = false;
  auto* bound_cm = bound->add_subcommand("cm", "C_m = (m! N_m)^{1/m} recurrence table");
  bound_cm->add_option("--m", b_m)->required();
  bound_cm->add_flag("--json", b_json);
  auto* bound_bd = bound->add_subcommand("bd", "b_d = floor(sqrt(2^{d+1} - 7/4) - 1/2)");
  bound_bd->add_option("--d", b_dim)->required();
  bound_bd->add_flag("--json", b_json);
  auto* bound_sidon = bound->add_subcommand("sidon-upper",
                                            "sqrt(2^{d+1} - 7/4) + 1/2 and its floor");
  bound_sidon->add_option("--d", b_dim)->required();
  bound_sidon->add_flag("--json", b_json);
  auto* bound_egz3 = bound->add_subcommand("egz-z3", "2*eta^d + 1 upper bound for s(Z3^d)");
  bound_egz3->add_option("--d", b_dim)->required();
  bound_egz3->add_flag("--json", b_json);

  // ---- witness --------------------------------------------------------
  auto* witness = app.add_subcommand("witness", "zero-sum basket witness hypergraphs");
  witness->require_subcommand(1);
  std::string w_group, w_s = "auto", w_emit_graph;
  std::uint64_t w_r = 0;
  std::uint32_t w_n = 0;
  bool w_certify = false, w_json = false;
  auto* witness_build = witness->add_subcommand("build", "build (and optionally certify)");
  witness_build->add_option("--group", w_group)->required();
  witness_build->add_option("--r", w_r)->required();
  witness_build->add_option("--n", w_n)->required();
  witness_build->add_flag("--certify", w_certify, "compute codegrees, alpha and the verdict");
  witness_build->add_option("--s", w_s, "threshold for the verdict alpha < s; auto = bundled table or solver");
  witness_build->add_option("--emit-graph", w_emit_graph, "write the explicit edge list to FILE");
  witness_build->add_flag("--json", w_json);

  // ---- bounds ---------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "codegree density bound ledger");
  bounds->require_subcommand(1);
  std::string bl_base_file, bl_emit, bl_replay_file;
  std::uint64_t bl_max_shift = 8;
  bool bl_json = false, bl_no_reference = false;
  auto* bounds_derive = bounds->add_subcommand("derive", "derive tau(k,r) bounds from base facts");
  bounds_derive->add_option("--base-file", bl_base_file, "JSON base facts (default: bundled)");
  bounds_derive->add_option("--max-shift", bl_max_shift, "largest shift applied (default 8)");
  bounds_derive->add_option("--emit", bl_emit, "write the CSV ledger to FILE");
  bounds_derive->add_flag("--no-reference", bl_no_reference, "omit classical/external seed facts");
  bounds_derive->add_flag("--json", bl_json);
  auto* bounds_replay = bounds->add_subcommand("replay", "re-derive facts from stored provenance");
  bounds_replay->add_option("--file", bl_replay_file)->required();
  bounds_replay->add_flag("--json", bl_json);

  // ---- verify ---------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "re-check sets, sequences and certificates");
  verify->require_subcommand(1);
  std::string v_file, v_group;
  std::uint64_t v_r = 0;
  bool v_json = false;
  auto* verify_zf = verify->add_subcommand("zerofree", "is the set zero-free of rank r?");
  verify_zf->add_option("--file", v_file)->required();
  verify_zf->add_option("--r", v_r)->required();
  verify_zf->add_option("--group", v_group, "group (default: file header)");
  verify_zf->add_flag("--json", v_json);
  auto* verify_sidon = verify->add_subcommand("sidon", "is the set Sidon?");
  verify_sidon->add_option("--file", v_file)->required();
  verify_sidon->add_option("--group", v_group);
  verify_sidon->add_flag("--json", v_json);
  auto* verify_zsf = verify->add_subcommand("zerosumfree",
                                            "has the sequence no zero-sum subsequence of length r?");
  verify_zsf->add_option("--file", v_file)->required();
  verify_zsf->add_option("--r", v_r)->required();
  verify_zsf->add_option("--group", v_group);
  verify_zsf->add_flag("--json", v_json);
  auto* verify_cert = verify->add_subcommand("certificate", "re-validate a stored search result");
  verify_cert->add_option("--file", v_file)->required();
  verify_cert->add_flag("--json", v_json);
  auto* verify_hg = verify->add_subcommand("hypergraph",
                                           "degree chain and packing checks on an edge list");
  verify_hg->add_option("--file", v_file)->required();
  verify_hg->add_flag("--json", v_json);

  // ---- table ----------------------------------------------------------
  auto* table = app.add_subcommand("table", "bundled reference constants");
  table->require_subcommand(1);
  std::string t_constant, t_family, t_data_dir = "data/certificates";
  bool t_all = false, t_json = false;
  unsigned t_threads = 1;
  auto* table_show = table->add_subcommand("show", "list bundled values");
  table_show->add_option("--constant", t_constant, "beta|s|g|cap");
  table_show->add_option("--group-family", t_family, "prefix filter, e.g. Z2");
  table_show->add_flag("--json", t_json);
  auto* table_verify = table->add_subcommand("verify", "re-run every solved certificate");
  table_verify->add_flag("--all", t_all)->required();
  table_verify->add_option("--data-dir", t_data_dir, "certificate directory");
  table_verify->add_option("--threads", t_threads);
  table_verify->add_flag("--json", t_json);
  auto* table_emit = table->add_subcommand("emit-certs",
                                           "solve every bundled entry and write certificates");
  table_emit->add_option("--data-dir", t_data_dir)->required();
  table_emit->add_option("--threads", t_threads);

  std::vector<const char*> argv;
  argv.push_back("zsum");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    nlohmann::json j{{"schema", 1}, {"error", "usage"}, {"detail", e.what()}};
    err << j.dump() << "\n";
    return kExitUsage;
  }

  if (element_cap > 0)
    setenv("ZEROSUM_ELEMENT_CAP", std::to_string(element_cap).c_str(), 1);

  try {
    // ---- solve ----
    if (solve->parsed()) {
      SearchResult res = [&] {
        if (solve_sr->parsed()) return solve_s_r(GroupSpec::parse(sf.group), sf.r, sf.budget());
        if (solve_beta->parsed())
          return solve_beta_r(GroupSpec::parse(sf.group), sf.r, sf.budget());
        if (solve_cap_cmd->parsed()) return solve_cap(sf.d, sf.budget(), cap_limit);
        return solve_harborth(GroupSpec::parse(sf.group), sf.budget());
      }();
      return detail::report_solve(res, sf, out);
    }

    // ---- construct ----
    if (construct->parsed()) {
      std::optional<std::uint32_t> modulus;
      if (!c_modulus.empty()) modulus = parse_hex_modulus(c_modulus);
      ConstructionOutput c = [&] {
        if (con_sidon->parsed()) return c_d == 4 ? sidon_d4() : sidon_basis(c_d);
        if (con_curve->parsed()) return moment_curve(c_m, c_k, modulus);
        if (con_egz->parsed()) return extremal_sequence_s2m(c_m, c_k, modulus);
        return s4_lower_sequence(c_d);
      }();
      return detail::report_construction(c, c_json, c_out, out);
    }

    // ---- bound ----
    if (bound->parsed()) {
      if (bound_cm->parsed()) {
        CmTable t = cm_constant(b_m);
        if (b_json) {
          nlohmann::json j;
          j["schema"] = 1;
          j["m"] = t.m;
          nlohmann::json q = nlohmann::json::array(), lam = nlohmann::json::array(),
                         bn = nlohmann::json::array();
          for (std::uint64_t r = 2; r <= t.m; ++r) {
            q.push_back(t.q[r]);
            lam.push_back(t.lambda[r]);
          }
          for (std::uint64_t r = 1; r <= t.m; ++r) bn.push_back(t.n_table[r].to_string());
          j["q"] = q;
          j["lambda"] = lam;
          j["N"] = bn;
          j["radicand"] = t.radicand.to_string();
          j["c_m"] = t.c_m;
          j["precision"] = "c_m is the double nearest to radicand^(1/m); radicand is exact";
          j["lambda_coarse_bound_ok"] = t.lambda_coarse_bound_ok;
          out << j.dump(2) << "\n";
        } else {
          out << "C_" << t.m << " = " << t.radicand.to_string() << "^(1/" << t.m
              << ") = " << t.c_m << "\n";
          for (std::uint64_t r = 2; r <= t.m; ++r)
            out << "  r=" << r << " q=" << t.q[r] << " lambda=" << t.lambda[r]
                << " N=" << t.n_table[r].to_string() << "\n";
        }
        return kExitOk;
      }
      if (bound_bd->parsed()) {
        std::uint64_t v = b_d(b_dim);
        if (b_json)
          out << nlohmann::json{{"schema", 1}, {"d", b_dim}, {"b_d", v}}.dump(2) << "\n";
        else
          out << "b_" << b_dim << " = " << v << "\n";
        return kExitOk;
      }
      if (bound_sidon->parsed()) {
        SidonBound b = sidon_upper_bound(b_dim);
        if (b_json)
          out << nlohmann::json{{"schema", 1},
                                {"d", b_dim},
                                {"value", b.value},
                                {"floor", b.floor_value},
                                {"precision", "floor is exact; value is double"}}
                     .dump(2)
              << "\n";
        else
          out << "sidon upper bound d=" << b_dim << ": " << b.value
              << " (floor " << b.floor_value << ")\n";
        return kExitOk;
      }
      EgzUpper u = z3_egz_upper(b_dim);
      if (b_json)
        out << nlohmann::json{{"schema", 1},
                              {"d", b_dim},
                              {"eta", u.eta},
                              {"bound", u.bound},
                              {"precision", "eta < 2.756, double precision"}}
                   .dump(2)
            << "\n";
      else
        out << "s(Z3^" << b_dim << ") <= 2*eta^d + 1 = " << u.bound << " (eta = " << u.eta
            << ")\n";
      return kExitOk;
    }

    // ---- witness ----
    if (witness->parsed()) {
      GroupSpec spec = GroupSpec::parse(w_group);
      BasketWitness w = build_witness(spec, w_r, w_n);
      nlohmann::json j;
      j["schema"] = 1;
      j["group"] = spec.to_string();
      j["r"] = w_r;
      j["n"] = w_n;
      nlohmann::json sizes = nlohmann::json::array();
      for (std::uint64_t t = 0; t < spec.order(); ++t) sizes.push_back(w.basket_size(t));
      j["basket_sizes"] = sizes;
      if (!w_emit_graph.empty()) {
        std::vector<std::vector<int>> edges;
        RGraph::for_each_subset(static_cast<int>(w_n), static_cast<int>(w_r),
                                [&](std::span<const int> s) {
                                  if (w.is_edge(s))
                                    edges.emplace_back(s.begin(), s.end());
                                });
        write_text_file(w_emit_graph,
                        emit_hypergraph_text(RGraph::explicit_graph(
                            static_cast<int>(w_n), static_cast<int>(w_r), std::move(edges))));
        j["graph_file"] = w_emit_graph;
      }
      int exit_code = kExitOk;
      if (w_certify) {
        std::uint64_t s_threshold;
        std::string s_source;
        if (w_s == "auto") {
          auto entry = table_lookup("s", spec.to_string(), w_r);
          if (entry) {
            s_threshold = entry->value;
            s_source = "table[" + entry->provenance + "]";
          } else {
            SearchResult sr = solve_s_r(spec, w_r);
            if (!sr.exhaustive) throw std::runtime_error("s_r solve was not exhaustive");
            s_threshold = sr.value;
            s_source = "solved";
          }
        } else {
          s_threshold = std::stoull(w_s);
          s_source = "flag";
        }
        WitnessCertificate cert = certify_witness(w, s_threshold);
        j["certificate"] = {{"min_codegree", cert.min_codegree},
                            {"max_codegree", cert.max_codegree},
                            {"s", cert.s},
                            {"s_source", s_source},
                            {"alpha_exact", cert.alpha_exact}};
        if (cert.alpha) {
          j["certificate"]["alpha"] = *cert.alpha;
          j["certificate"]["alpha_witness"] = cert.alpha_witness;
          j["certificate"]["verdict_alpha_lt_s"] = *cert.verdict;
          if (!*cert.verdict) exit_code = kExitFalse;
        } else {
          exit_code = kExitFalse;  // partial certificate
        }
      }
      if (w_json) {
        out << j.dump(2) << "\n";
      } else {
        out << "basket witness " << spec.to_string() << " r=" << w_r << " n=" << w_n
            << " baskets=" << j["basket_sizes"].dump() << "\n";
        if (j.contains("certificate")) {
          const auto& c = j["certificate"];
          out << "  min codegree " << c["min_codegree"] << ", max codegree "
              << c["max_codegree"];
          if (c.contains("alpha"))
            out << ", alpha " << c["alpha"] << (c["verdict_alpha_lt_s"].get<bool>() ? " < " : " !< ")
                << c["s"].get<std::uint64_t>() << " (s from " << c["s_source"].get<std::string>()
                << ")";
          else
            out << ", alpha omitted (cap exceeded)";
          out << "\n";
        }
        if (j.contains("graph_file"))
          out << "  edge list written to " << j["graph_file"].get<std::string>() << "\n";
      }
      return exit_code;
    }

    // ---- bounds ----
    if (bounds->parsed()) {
      if (bounds_derive->parsed()) {
        std::vector<BaseFact> bases =
            bl_base_file.empty()
                ? default_base_facts()
                : base_facts_from_json(nlohmann::json::parse(read_text_file(bl_base_file)));
        BoundLedger ledger;
        for (BoundFact& f : derive_bounds(bases, bl_max_shift)) ledger.insert(std::move(f));
        if (!bl_no_reference)
          for (BoundFact& f : reference_facts()) ledger.insert(std::move(f));
        std::string csv = ledger.to_csv();
        if (!bl_emit.empty()) write_text_file(bl_emit, csv);
        if (bl_json) {
          nlohmann::json j;
          j["schema"] = 1;
          nlohmann::json rows = nlohmann::json::array();
          for (const BoundFact& f : ledger.rows()) rows.push_back(bound_fact_json(f));
          j["rows"] = rows;
          j["annotations"] = ledger_annotations();
          out << j.dump(2) << "\n";
        } else {
          out << csv;
          for (const std::string& a : ledger_annotations()) out << "# " << a << "\n";
        }
        return kExitOk;
      }
      // bounds replay
      nlohmann::json j = nlohmann::json::parse(read_text_file(bl_replay_file));
      const nlohmann::json& rows = j.is_array() ? j : j.at("rows");
      std::size_t count = 0;
      for (const auto& row : rows) {
        bound_fact_from_json(row);  // throws on any replay mismatch
        ++count;
      }
      if (bl_json)
        out << nlohmann::json{{"schema", 1}, {"replayed", count}, {"consistent", true}}.dump(2)
            << "\n";
      else
        out << "replayed " << count << " facts, all consistent\n";
      return kExitOk;
    }

    // ---- verify ----
    if (verify->parsed()) {
      if (verify_cert->parsed()) {
        SearchResult res =
            certificate_from_json(nlohmann::json::parse(read_text_file(v_file)));
        VerifyReport rep = verify_certificate(res);
        if (v_json) {
          nlohmann::json j{{"schema", 1},
                           {"ok", rep.ok},
                           {"lower_bound_certified", rep.lower_bound_certified},
                           {"detail", rep.detail}};
          out << j.dump(2) << "\n";
        } else {
          out << (rep.ok ? "OK: " : "FAIL: ") << rep.detail << "\n";
        }
        return rep.ok ? kExitOk : kExitFalse;
      }
      if (verify_hg->parsed()) {
        RGraph h = parse_hypergraph_text(read_text_file(v_file));
        ChainReport chain = check_monotonicity_chain(h);
        bool lemma = check_lemma_bound(h);
        bool ekr = h.n() >= 2 * h.r() ? check_ekr_bound(h) : true;
        nlohmann::json vals = nlohmann::json::array();
        for (const Rational& v : chain.values) vals.push_back(v.to_string());
        bool ok = chain.non_decreasing && lemma && ekr;
        if (v_json) {
          out << nlohmann::json{{"schema", 1},
                                {"chain", vals},
                                {"chain_non_decreasing", chain.non_decreasing},
                                {"packing_bound_ok", lemma},
                                {"ekr_ok", ekr}}
                     .dump(2)
              << "\n";
        } else {
          out << "chain " << vals.dump() << (chain.non_decreasing ? " [ok]" : " [VIOLATED]")
              << ", packing bound " << (lemma ? "ok" : "VIOLATED") << ", EKR "
              << (ekr ? "ok" : "VIOLATED") << "\n";
        }
        return ok ? kExitOk : kExitFalse;
      }
      GSequence seq = detail::load_sequence(v_file, v_group);
      if (verify_zf->parsed() || verify_sidon->parsed()) {
        if (!seq.is_set())
          throw std::invalid_argument("input has repeated elements; expected a set");
        auto elems = seq.distinct_elements();
        if (verify_sidon->parsed()) {
          bool ok = is_sidon_set(seq.spec(), elems);
          if (v_json)
            out << nlohmann::json{{"schema", 1}, {"sidon", ok}}.dump(2) << "\n";
          else
            out << (ok ? "sidon" : "not sidon") << "\n";
          return ok ? kExitOk : kExitFalse;
        }
        ZeroFreeReport rep = is_zero_free_set(seq.spec(), elems, v_r);
        if (v_json) {
          nlohmann::json j{{"schema", 1}, {"zero_free", rep.zero_free}, {"r", v_r}};
          if (!rep.zero_free) {
            nlohmann::json viol = nlohmann::json::array();
            for (const GroupElement& e : rep.violation)
              viol.push_back(element_string(seq.spec(), e));
            j["violation"] = viol;
          }
          out << j.dump(2) << "\n";
        } else if (rep.zero_free) {
          out << "zero-free of rank " << v_r << "\n";
        } else {
          out << "NOT zero-free; violating subset:\n";
          for (const GroupElement& e : rep.violation)
            out << "  " << element_string(seq.spec(), e) << "\n";
        }
        return rep.zero_free ? kExitOk : kExitFalse;
      }
      // verify zerosumfree
      auto w = find_zero_sum_subsequence(seq, v_r);
      if (!w) {
        if (v_json)
          out << nlohmann::json{{"schema", 1}, {"zero_sum_free", true}, {"r", v_r}}.dump(2)
              << "\n";
        else
          out << "no zero-sum subsequence of length " << v_r << "\n";
        return kExitOk;
      }
      GSequence picks = w->to_sequence(seq.spec());
      if (v_json) {
        nlohmann::json j{{"schema", 1}, {"zero_sum_free", false}, {"r", v_r}};
        j["witness"] = witness_envelope_json(picks, v_r, "identity");
        out << j.dump(2) << "\n";
      } else {
        out << "zero-sum subsequence of length " << v_r << " found:\n"
            << emit_sequence_text(picks)
            << witness_envelope_json(picks, v_r, "identity").dump() << "\n";
      }
      return kExitFalse;
    }

    // ---- table ----
    if (table->parsed()) {
      if (table_show->parsed()) {
        nlohmann::json rows = nlohmann::json::array();
        for (const TableEntry& e : reference_table()) {
          if (!t_constant.empty() && e.constant != t_constant) continue;
          if (!t_family.empty()) {
            GroupSpec family = GroupSpec::parse(t_family);
            GroupSpec g = GroupSpec::parse(e.group);
            bool same_family = g.moduli()[0] == family.moduli()[0];
            for (std::uint32_t m : g.moduli()) same_family &= (m == g.moduli()[0]);
            if (!same_family) continue;
          }
          rows.push_back(nlohmann::json{{"constant", e.constant},
                                        {"group", e.group},
                                        {"r", e.r},
                                        {"value", e.value},
                                        {"provenance", e.provenance},
                                        {"anchor", e.anchor}});
        }
        if (t_json) {
          out << nlohmann::json{{"schema", 1}, {"rows", rows}}.dump(2) << "\n";
        } else {
          for (const auto& r : rows)
            out << r["constant"].get<std::string>() << "\t" << r["group"].get<std::string>()
                << "\tr=" << r["r"] << "\t" << r["value"] << "\t["
                << r["provenance"].get<std::string>() << "] "
                << r["anchor"].get<std::string>() << "\n";
        }
        return kExitOk;
      }
      SearchBudget budget;
      budget.threads = t_threads;
      if (table_emit->parsed()) {
        for (const TableEntry& e : reference_table()) {
          if (e.provenance != "solved") continue;
          SearchResult res = detail::SolverHook::solve_entry(e, budget);
          if (!res.exhaustive || res.value != e.value)
            throw std::runtime_error("solve mismatch for " + e.constant + "(" + e.group + ")");
          write_text_file(t_data_dir + "/" + e.anchor, certificate_json(res).dump(2) + "\n");
          out << "wrote " << e.anchor << " (value " << res.value << ", nodes " << res.nodes
              << ")\n";
        }
        return kExitOk;
      }
      // table verify --all
      bool all_ok = true;
      nlohmann::json results = nlohmann::json::array();
      for (const TableEntry& e : reference_table()) {
        if (e.provenance != "solved") continue;
        std::string status = "ok";
        try {
          SearchResult stored = certificate_from_json(
              nlohmann::json::parse(read_text_file(t_data_dir + "/" + e.anchor)));
          if (stored.value != e.value || !stored.exhaustive)
            throw validation_error("stored certificate disagrees with the table");
          VerifyReport rep = verify_certificate(stored);
          if (!rep.ok) throw validation_error("stored witness failed: " + rep.detail);
          SearchResult fresh = detail::SolverHook::solve_entry(e, budget);
          if (!fresh.exhaustive) throw validation_error("re-solve was not exhaustive");
          if (fresh.value != e.value) throw validation_error("re-solve value mismatch");
          if (!(fresh.witness == stored.witness))
            throw validation_error("re-solve produced a different witness");
        } catch (const std::exception& ex) {
          status = ex.what();
          all_ok = false;
        }
        results.push_back(nlohmann::json{{"constant", e.constant},
                                         {"group", e.group},
                                         {"r", e.r},
                                         {"value", e.value},
                                         {"status", status}});
        if (!t_json)
          out << (status == "ok" ? "OK   " : "FAIL ") << e.constant << "(" << e.group
              << ", r=" << e.r << ") = " << e.value
              << (status == "ok" ? "" : "  -- " + status) << "\n";
      }
      if (t_json)
        out << nlohmann::json{{"schema", 1}, {"all_ok", all_ok}, {"results", results}}.dump(2)
            << "\n";
      return all_ok ? kExitOk : kExitFalse;
    }
  } catch (const std::exception& e) {
    nlohmann::json j{{"schema", 1}, {"error", "runtime"}, {"detail", e.what()}};
    err << j.dump() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace zsum::cli
