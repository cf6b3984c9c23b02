#include <array>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "symspread/verify.hpp"

namespace {

using namespace symspread;

std::string coeff_tuple(const FFElem& x) {
  std::string out;
  for (size_t i = 0; i < x.coeffs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(static_cast<int>(x.coeffs[i]));
  }
  return out;
}

nlohmann::json coeff_json(const FFElem& x) {
  nlohmann::json arr = nlohmann::json::array();
  for (u8 c : x.coeffs) arr.push_back(static_cast<int>(c));
  return arr;
}

int cmd_tower(int p, int a, int m, bool json, const Caps& caps) {
  Tower t = Tower::make(p, a, m, caps.field_size_cap);
  if (json) {
    nlohmann::json j;
    j["p"] = t.p();
    j["a"] = t.a();
    j["m"] = t.m();
    j["q"] = t.q();
    j["field_size"] = t.size();
    j["modulus"] = nlohmann::json::array();
    for (u8 c : t.modulus()) j["modulus"].push_back(static_cast<int>(c));
    j["omega"] = coeff_json(t.omega());
    j["epsilon"] = coeff_json(t.epsilon());
    j["lambda"] = coeff_json(t.lambda());
    j["mu"] = coeff_json(t.mu());
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fmt::format("p={} a={} m={} q={} |F|={}\n", t.p(), t.a(), t.m(), t.q(),
                             t.size());
    std::string mod;
    for (size_t i = 0; i < t.modulus().size(); ++i) {
      if (i) mod += ' ';
      mod += std::to_string(static_cast<int>(t.modulus()[i]));
    }
    std::cout << "modulus: " << mod << "\n";
    std::cout << "omega:   " << coeff_tuple(t.omega()) << "\n";
    std::cout << "epsilon: " << coeff_tuple(t.epsilon()) << "\n";
    std::cout << "lambda:  " << coeff_tuple(t.lambda()) << "\n";
    std::cout << "mu:      " << coeff_tuple(t.mu()) << "\n";
  }
  return 0;
}

int cmd_spread_build(int p, int a, int m, const std::string& out_file, const Caps& caps) {
  Tower t = Tower::make(p, a, m, caps.field_size_cap);
  Spread s = build_spread(t);
  if (out_file.empty()) {
    write_spread(std::cout, t, s);
  } else {
    std::ofstream os(out_file, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file: " + out_file);
    write_spread(os, t, s);
  }
  return 0;
}

int cmd_spread_validate(const std::string& in_file, bool json, const Caps& caps) {
  std::ifstream is(in_file, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot open input file: " + in_file);
  SpreadFileHeader h = read_spread_header(is);
  is.seekg(0);
  Tower t = Tower::make(h.p, h.a, h.m, caps.field_size_cap);
  Spread s = read_spread(t, is);
  GramForm form = gram_from_trace_form(t);
  SpreadValidation v = validate_spread(t.fq(), s, form);
  if (json) {
    nlohmann::json j;
    j["file"] = in_file;
    j["params"] = nlohmann::json::array({h.p, h.a, h.m});
    j["ok"] = v.ok;
    j["confirmations"] = v.confirmations;
    if (!v.ok) {
      j["failed_invariant"] = v.failed_invariant;
      j["witness"] = v.witness;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    if (v.ok) {
      std::cout << fmt::format("{}: valid complete symplectic spread (p={} a={} m={})\n",
                               in_file, h.p, h.a, h.m);
      for (const auto& c : v.confirmations) std::cout << "  " << c << "\n";
    } else {
      std::cout << fmt::format("{}: INVALID ({}): {}\n", in_file, v.failed_invariant,
                               v.witness);
    }
  }
  return v.ok ? 0 : 1;
}

int cmd_group_info(int p, int a, int m, bool json, const Caps& caps) {
  Tower t = Tower::make(p, a, m, caps.field_size_cap);
  const auto& fq = t.fq();
  MatQ pi = build_pi(t);
  MatQ rho = build_rho(t);
  MatGroup g = closure(fq, {pi, rho}, caps.max_group_order);
  StructureReport rep = structure_probe(fq, g);

  if (json) {
    nlohmann::json j;
    j["p"] = p;
    j["a"] = a;
    j["m"] = m;
    j["order"] = g.order();
    j["cyclic"] = rep.cyclic;
    j["unique_involution_minus_identity"] = rep.unique_involution_is_minus_identity;
    j["involution_count"] = rep.involutions.size();
    j["sylow2_order"] = rep.sylow2_order;
    j["sylow2_cyclic"] = rep.sylow2_cyclic;
    j["order_histogram"] = nlohmann::json::object();
    for (const auto& [ord, count] : rep.order_histogram) {
      j["order_histogram"][std::to_string(ord)] = count;
    }
    j["order4_normalizer_orders"] = nlohmann::json::array();
    for (const auto& [key, n4] : rep.order4_normalizers) {
      j["order4_normalizer_orders"].push_back(n4);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fmt::format("G = <pi, rho> over F_{} with m = {}\n", t.q(), m);
    std::cout << fmt::format("order: {} (2m(q^m+1) = {})\n", g.order(),
                             2 * static_cast<u64>(m) * (t.qm() + 1));
    std::cout << "element order histogram:";
    for (const auto& [ord, count] : rep.order_histogram) {
      std::cout << fmt::format(" {}:{}", ord, count);
    }
    std::cout << "\n";
    std::cout << fmt::format("unique involution -I: {}\n",
                             rep.unique_involution_is_minus_identity ? "yes" : "no");
    std::cout << fmt::format("Sylow 2-subgroup: order {} ({})\n", rep.sylow2_order,
                             rep.sylow2_cyclic ? "cyclic" : "not cyclic");
    if (!rep.order4_normalizers.empty()) {
      std::cout << "order-4 subgroup normalizer orders:";
      for (const auto& [key, n4] : rep.order4_normalizers) std::cout << ' ' << n4;
      std::cout << "\n";
    }
  }
  return 0;
}

std::vector<std::array<int, 3>> parse_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open matrix file: " + path);
  std::vector<std::array<int, 3>> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int p, a, m;
    if (!(ls >> p)) continue;  // blank or comment-only line
    if (!(ls >> a >> m)) {
      throw std::invalid_argument(fmt::format("{}:{}: expected 'p a m'", path, lineno));
    }
    out.push_back({p, a, m});
  }
  return out;
}

void print_report_human(const VerifyReport& r) {
  std::cout << fmt::format("[{}] {} (p={} a={} m={}, {} ms)\n", status_to_string(r),
                           r.check_id, r.p, r.a, r.m, r.elapsed.count());
  for (const auto& w : r.witnesses) std::cout << "    " << w << "\n";
}

int cmd_verify(const std::string& check_id, bool all, const std::string& matrix_file, int p,
               int a, int m, bool json, const Caps& caps) {
  if (all) {
    std::vector<std::array<int, 3>> ctxs =
        matrix_file.empty() ? default_ctx_matrix() : parse_matrix_file(matrix_file);
    auto reports = run_all(ctxs, caps);
    if (json) {
      std::cout << reports_to_json(reports, ctxs);
    } else {
      for (const auto& r : reports) print_report_human(r);
      size_t passed = 0, failed = 0, skipped = 0;
      for (const auto& r : reports) {
        if (r.status == CheckStatus::pass) ++passed;
        if (r.status == CheckStatus::fail) ++failed;
        if (r.status == CheckStatus::skipped) ++skipped;
      }
      std::cout << fmt::format("{} checks: {} passed, {} failed, {} skipped\n",
                               reports.size(), passed, failed, skipped);
    }
    return any_fail(reports) ? 1 : 0;
  }

  Tower t = Tower::make(p, a, m, caps.field_size_cap);
  VerifyReport r = run_check(check_id, t, caps);
  if (json) {
    std::vector<std::array<int, 3>> params{{p, a, m}};
    std::vector<VerifyReport> reports{r};
    std::cout << reports_to_json(reports, params);
  } else {
    print_report_human(r);
  }
  return r.status == CheckStatus::fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symspread: complete symplectic spreads over odd-characteristic fields,\n"
               "their metacyclic isometry groups, and a structural verification harness"};
  app.require_subcommand(1);

  bool json = false;
  Caps caps;
  app.add_flag("--json", json, "emit machine-readable JSON");
  app.add_option("--max-group-order", caps.max_group_order,
                 "cap on explicit group enumeration (default 200000)");
  app.add_option("--max-subgroup-search", caps.max_subgroup_search,
                 "cap on exhaustive subgroup search (default 200)");

  int p = 0, a = 1, m = 1;

  auto* tower = app.add_subcommand("tower", "construct the field tower and print its constants");
  tower->fallthrough();
  tower->add_option("--p", p, "odd prime characteristic")->required();
  tower->add_option("--a", a, "exponent: q = p^a");
  tower->add_option("--m", m, "half the coordinate dimension over F_q");

  auto* spread = app.add_subcommand("spread", "build or validate complete symplectic spreads");
  spread->require_subcommand(1);
  spread->fallthrough();
  std::string out_file, in_file;
  auto* sbuild = spread->add_subcommand("build", "construct the field-reduction spread");
  sbuild->fallthrough();
  sbuild->add_option("--p", p, "odd prime characteristic")->required();
  sbuild->add_option("--a", a, "exponent: q = p^a");
  sbuild->add_option("--m", m, "half the coordinate dimension over F_q");
  sbuild->add_option("--out", out_file, "write the spread file here instead of stdout");
  auto* svalidate = spread->add_subcommand("validate", "validate a spread file");
  svalidate->fallthrough();
  svalidate->add_option("--in", in_file, "spread file to validate")->required();

  auto* group = app.add_subcommand("group", "inspect the metacyclic group G = <pi, rho>");
  group->require_subcommand(1);
  group->fallthrough();
  auto* ginfo = group->add_subcommand("info", "order, histogram and structure summary");
  ginfo->fallthrough();
  ginfo->add_option("--p", p, "odd prime characteristic")->required();
  ginfo->add_option("--a", a, "exponent: q = p^a");
  ginfo->add_option("--m", m, "half the coordinate dimension over F_q");

  auto* verify = app.add_subcommand("verify", "run named checks against parameter triples");
  verify->fallthrough();
  std::string check_id, matrix_file;
  bool all = false;
  verify->add_option("--check", check_id, "check id to run");
  verify->add_flag("--all", all, "run the full registry over the parameter matrix");
  verify->add_option("--matrix", matrix_file, "file of 'p a m' triples (# comments)");
  verify->add_option("--p", p, "odd prime characteristic");
  verify->add_option("--a", a, "exponent: q = p^a");
  verify->add_option("--m", m, "half the coordinate dimension over F_q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(tower)) return cmd_tower(p, a, m, json, caps);
    if (app.got_subcommand(spread)) {
      if (spread->got_subcommand(sbuild)) return cmd_spread_build(p, a, m, out_file, caps);
      return cmd_spread_validate(in_file, json, caps);
    }
    if (app.got_subcommand(group)) return cmd_group_info(p, a, m, json, caps);
    if (app.got_subcommand(verify)) {
      if (!all && check_id.empty()) {
        throw std::invalid_argument("verify: pass --check ID or --all");
      }
      if (!all && p == 0) {
        throw std::invalid_argument("verify --check: --p/--a/--m are required");
      }
      return cmd_verify(check_id, all, matrix_file, p, a, m, json, caps);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
