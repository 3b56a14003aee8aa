// Copyright 2026 The flatchain Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatchain/bv_coarea.hpp"
#include "flatchain/decomposition.hpp"
#include "flatchain/deform.hpp"
#include "flatchain/io.hpp"

namespace {

using nlohmann::json;
using namespace flatchain;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("FLATCHAIN_SEED")) {
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
  }
  return cli_seed;
}

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

struct DecomposeArgs {
  std::string chain_path, h_path, out_path, parts_prefix;
  std::string algo = "maximal";
  long long budget = kDefaultSearchBudget;
};

int run_decompose(const DecomposeArgs& args) {
  const Chain a = parse_chain_file(args.chain_path);
  Decomposition d;
  if (args.algo == "maximal") {
    d = maximal_decomposition(a, args.budget);
  } else if (args.algo == "lex") {
    d = decompose_lex(a);
  } else {
    std::cerr << "unknown algorithm '" << args.algo << "' (use maximal or lex)\n";
    return kExitUsage;
  }

  json report;
  report["algo"] = args.algo;
  report["parts"] = partition_to_json(d.partition);
  json n_values = json::array();
  json atom_flags = json::array();
  for (const Chain& part : d.parts) {
    n_values.push_back(normal_mass(part));
    const AtomReport ar = is_indecomposable(part, args.budget);
    atom_flags.push_back(ar.status == SearchStatus::decided && ar.is_atom);
  }
  report["N_values"] = n_values;
  report["atoms"] = atom_flags;
  report["valid"] = d.valid;
  report["status"] =
      d.status == SearchStatus::decided ? "decided" : "budget_exhausted";
  if (!args.h_path.empty()) {
    const CostFunction h = parse_cost_function_json(args.h_path);
    json nu_values = json::array();
    for (const Chain& part : d.parts) nu_values.push_back(nu_value(part, h));
    report["nu_values"] = nu_values;
  }
  emit(report, args.out_path);
  if (!args.parts_prefix.empty()) {
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
      write_chain_file(d.parts[i], args.parts_prefix + std::to_string(i) + ".jsonl");
    }
  }
  return d.status == SearchStatus::decided ? kExitPass : kExitResource;
}

int run_indecomposable(const std::string& chain_path, long long budget,
                       const std::string& out_path) {
  const Chain a = parse_chain_file(chain_path);
  const AtomReport r = is_indecomposable(a, budget);
  json report;
  report["status"] = r.status == SearchStatus::decided ? "decided" : "budget_exhausted";
  if (r.status == SearchStatus::decided) {
    report["is_atom"] = r.is_atom;
    if (!r.is_atom) report["witness"] = partition_to_json(r.witness);
  }
  emit(report, out_path);
  return r.status == SearchStatus::decided ? kExitPass : kExitResource;
}

int run_flatnorm(const std::string& chain_path, int margin, const std::string& out_path,
                 const std::string& filler_path) {
  const Chain a = parse_chain_file(chain_path);
  FlatNormOptions options;
  options.margin = margin;
  const FlatNormCertificate cert = flat_norm(a, options);
  json report;
  report["value"] = cert.value;
  report["mass"] = mass(a);
  report["filler_mass"] = mass(cert.filler);
  report["remainder_mass"] = mass(cert.remainder);
  report["exact"] = cert.exact;
  report["lp_iterations"] = cert.lp_iterations;
  report["region_lo"] = cert.region.lo;
  report["region_hi"] = cert.region.hi;
  emit(report, out_path);
  if (!filler_path.empty()) write_chain_file(cert.filler, filler_path);
  return kExitPass;
}

struct DeformArgs {
  std::string chain_path, h_path, out_path, prefix;
  int rho = 2;
  int trials = 1;
  std::vector<int> offset;
  std::uint64_t seed = 0;
};

int run_deform(const DeformArgs& args) {
  const Chain a = parse_chain_file(args.chain_path);
  CostFunction h;
  const bool have_h = !args.h_path.empty();
  if (have_h) h = parse_cost_function_json(args.h_path);

  DeformationResult d;
  if (!args.offset.empty()) {
    d = deform(a, args.rho, args.offset, have_h ? &h : nullptr);
  } else {
    d = deform_best(a, args.rho, args.trials, effective_seed(args.seed),
                    have_h ? &h : nullptr);
  }
  json report;
  report["rho"] = d.rho;
  report["offset"] = d.offset;
  report["mass_a"] = mass(a);
  report["mass_p"] = mass(d.p);
  report["mass_r"] = mass(d.r);
  report["mass_s"] = mass(d.s);
  report["normal_mass_a"] = normal_mass(a);
  report["ratio_mass_p"] = finite_or_null(d.ratios.mass_p_over_mass_a);
  report["ratio_hmass_p"] = have_h ? finite_or_null(d.ratios.hmass_p_over_hmass_a) : json(nullptr);
  report["ratio_remainder"] = finite_or_null(d.ratios.remainder_over_rho_eps_normal);
  // the exactness witness: A - P - R - dS
  Chain residual = subtract(subtract(a, d.p), d.r);
  if (!d.s.is_zero()) residual = subtract(residual, boundary(d.s));
  report["residual_mass"] = mass(residual);
  emit(report, args.out_path);
  if (!args.prefix.empty()) {
    write_chain_file(d.p, args.prefix + "p.jsonl");
    write_chain_file(d.r, args.prefix + "r.jsonl");
    write_chain_file(d.s, args.prefix + "s.jsonl");
  }
  return kExitPass;
}

int run_isoperim(const std::string& chain_path, const std::string& h_path, double c, int margin,
                 const std::string& out_path) {
  const Chain a = parse_chain_file(chain_path);
  const CostFunction h =
      h_path.empty() ? default_cost(a) : parse_cost_function_json(h_path);
  FlatNormOptions options;
  options.margin = margin;
  const IsoperimetricReport r = isoperimetric_report(a, h, c, options);
  json report;
  report["lhs"] = r.lhs;
  report["rhs"] = r.rhs;
  report["rhs_star"] = r.rhs_star;
  report["eta"] = r.eta_value;
  report["eta_star"] = r.eta_star_value;
  report["mass"] = r.mass_a;
  report["h_mass"] = r.hmass_a;
  report["normal_mass"] = r.normal_a;
  report["slack"] = finite_or_null(r.slack);
  report["slack_star"] = finite_or_null(r.slack_star);
  report["pass"] = r.pass;
  report["pass_star"] = r.pass_star;
  report["c"] = c;
  emit(report, out_path);
  return r.pass ? kExitPass : kExitCheckFailed;
}

int run_make_h(const std::string& samples_path, const std::string& out_path, int depth) {
  // samples: CSV lines "value,weight" (weight defaults to 1)
  const std::string text = read_file(samples_path);
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<double, double>> samples;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ls(line);
    std::string field;
    std::vector<double> fields;
    while (std::getline(ls, field, ',')) {
      try {
        fields.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw std::invalid_argument(samples_path + ": line " + std::to_string(line_no) +
                                    ": bad numeric field '" + field + "'");
      }
    }
    if (fields.empty() || fields.size() > 2)
      throw std::invalid_argument(samples_path + ": line " + std::to_string(line_no) +
                                  ": expected value[,weight]");
    samples.emplace_back(fields[0], fields.size() == 2 ? fields[1] : 1.0);
  }
  const CostFunction h = construct_h(band_masses(samples), depth);
  write_cost_function_json(h, out_path);
  return kExitPass;
}

int run_coarea_check(const std::string& raster_path, const std::string& out_path) {
  const Raster f = parse_raster_csv(raster_path);
  const CoareaReport r = coarea_check(f);
  json report;
  report["lhs"] = r.lhs;
  report["rhs"] = r.rhs;
  report["equal"] = r.equal;
  report["exact_arithmetic"] = r.exact;
  emit(report, out_path);
  return r.equal ? kExitPass : kExitCheckFailed;
}

int run_bv_decompose(const std::string& raster_path, const std::string& labels_path,
                     const std::string& out_path) {
  const Raster f = parse_raster_csv(raster_path);
  const SitePartition blocks = finest_partition(f);
  const CoareaReport coarea = coarea_check(f);

  json report;
  report["tv"] = tv(f);
  report["blocks"] = static_cast<int>(blocks.size());
  json per_block = json::array();
  for (const SiteSet& block : blocks) per_block.push_back(tv(masked(f, block)));
  report["per_block_tv"] = per_block;
  report["coarea_lhs"] = coarea.lhs;
  report["coarea_rhs"] = coarea.rhs;
  emit(report, out_path);

  if (!labels_path.empty()) {
    // label map: block index per site, -1 for zero sites
    std::map<Site, int> label;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (const Site& s : blocks[b]) label[s] = static_cast<int>(b);
    }
    std::ostringstream out;
    const int rows = f.shape()[0], cols = f.dim() == 2 ? f.shape()[1] : 1;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        const Site s = {i, j};
        out << (j ? "," : "") << (label.count(s) ? label[s] : -1);
      }
      out << "\n";
    }
    write_file(labels_path, out.str());
  }
  return kExitPass;
}

int run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(effective_seed(seed));
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };

  // boundary of boundary vanishes
  bool dd = true;
  for (int trial = 0; trial < 25; ++trial) {
    Chain a(2, 2, 1.0, Group::integer());
    for (int c = 0; c < 5; ++c) {
      a.set_coefficient(
          Cell{{static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)}, {0, 1}},
          GroupValue::integer(static_cast<int>(rng() % 5) - 2));
    }
    if (!boundary(boundary(a)).is_zero()) dd = false;
  }
  check(dd, "boundary twice is zero");

  // coarea identity on random integer rasters
  bool coarea_ok = true;
  for (int trial = 0; trial < 25; ++trial) {
    Raster f({6, 6});
    for (std::int64_t i = 0; i < f.size(); ++i)
      f[i] = static_cast<double>(static_cast<int>(rng() % 7) - 3);
    if (!coarea_check(f).equal) coarea_ok = false;
  }
  check(coarea_ok, "discrete coarea identity");

  // deformation splitting identity
  bool deform_ok = true;
  for (int trial = 0; trial < 10; ++trial) {
    Chain a(2, 1, 1.0, Group::integer());
    for (int c = 0; c < 6; ++c) {
      a.set_coefficient(Cell{{static_cast<int>(rng() % 6), static_cast<int>(rng() % 6)},
                             {static_cast<int>(rng() % 2)}},
                        GroupValue::integer(1 + static_cast<int>(rng() % 2)));
    }
    const DeformationResult d = deform(a, 2, {0, 0});
    Chain residual = subtract(subtract(a, d.p), d.r);
    if (!d.s.is_zero()) residual = subtract(residual, boundary(d.s));
    if (!residual.is_zero()) deform_ok = false;
  }
  check(deform_ok, "deformation splitting identity");

  // flat norm of a filled square boundary
  Chain square(2, 2, 1.0, Group::real());
  square.set_coefficient(Cell{{0, 0}, {0, 1}}, GroupValue::real(1.0));
  FlatNormOptions opts;
  opts.margin = 1;
  check(std::abs(flat_norm(boundary(square), opts).value - 1.0) < 1e-7,
        "flat norm fills the unit square");

  std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  return failures == 0 ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatchain: set-decomposition of cubical flat chains with group coefficients"};
  app.require_subcommand(1);
  // --h is a documented option name, so only the long help flag exists
  app.set_help_flag("--help", "print help");
  auto add_command = [&app](const std::string& name, const std::string& description) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->set_help_flag("--help", "print help");
    return sub;
  };

  DecomposeArgs dec;
  auto* cmd_dec = add_command("decompose", "Maximal or lexicographic set-decomposition");
  cmd_dec->add_option("--chain", dec.chain_path, "chain file (JSON lines)")->required();
  cmd_dec->add_option("--h", dec.h_path, "cost function JSON; adds per-part nu values to the report");
  cmd_dec->add_option("--budget", dec.budget, "search node budget");
  cmd_dec->add_option("--algo", dec.algo, "maximal | lex");
  cmd_dec->add_option("--out", dec.out_path, "report path (stdout when omitted)");
  cmd_dec->add_option("--parts-prefix", dec.parts_prefix, "write each part as <prefix><i>.jsonl");

  std::string ind_chain, ind_out;
  long long ind_budget = kDefaultSearchBudget;
  auto* cmd_ind = add_command("indecomposable", "Atom test with witness");
  cmd_ind->add_option("--chain", ind_chain, "chain file")->required();
  cmd_ind->add_option("--budget", ind_budget, "search node budget");
  cmd_ind->add_option("--out", ind_out, "report path");

  std::string fn_chain, fn_out, fn_filler;
  int fn_margin = -1;
  auto* cmd_fn = add_command("flatnorm", "Flat norm with filler certificate");
  cmd_fn->add_option("--chain", fn_chain, "chain file")->required();
  cmd_fn->add_option("--margin", fn_margin, "region margin (default: support diameter)");
  cmd_fn->add_option("--out", fn_out, "report path");
  cmd_fn->add_option("--filler", fn_filler, "write the optimal filler chain here");

  DeformArgs def;
  auto* cmd_def = add_command("deform", "Grid deformation A = P + R + dS");
  cmd_def->add_option("--chain", def.chain_path, "chain file")->required();
  cmd_def->add_option("--rho", def.rho, "coarsening factor")->required();
  cmd_def->add_option("--trials", def.trials, "random offsets to try");
  cmd_def->add_option("--offset", def.offset, "fixed offset (one value per axis)");
  cmd_def->add_option("--h", def.h_path, "cost function JSON for the h-mass ratio");
  cmd_def->add_option("--seed", def.seed, "random seed (FLATCHAIN_SEED overrides)");
  cmd_def->add_option("--out", def.out_path, "report path");
  cmd_def->add_option("--parts-prefix", def.prefix, "write P/R/S as <prefix>{p,r,s}.jsonl");

  std::string iso_chain, iso_h, iso_out;
  double iso_c = 1.0;
  int iso_margin = -1;
  auto* cmd_iso = add_command("isoperim", "Isoperimetric inequality check");
  cmd_iso->add_option("--chain", iso_chain, "chain file")->required();
  cmd_iso->add_option("--h", iso_h, "cost function JSON (default: built from the chain)");
  cmd_iso->add_option("--c", iso_c, "deformation constant")->required();
  cmd_iso->add_option("--margin", iso_margin, "flat norm margin");
  cmd_iso->add_option("--out", iso_out, "report path");

  std::string mh_samples, mh_out;
  int mh_depth = 64;
  auto* cmd_mh = add_command("make-h", "Construct the concave cost from samples");
  cmd_mh->add_option("--samples", mh_samples, "CSV of value[,weight]")->required();
  cmd_mh->add_option("--out", mh_out, "output JSON path")->required();
  cmd_mh->add_option("--depth", mh_depth, "dyadic depth of the stored slopes");

  std::string cc_raster, cc_out;
  auto* cmd_cc = add_command("coarea-check", "Exact coarea identity check");
  cmd_cc->add_option("--raster", cc_raster, "raster CSV")->required();
  cmd_cc->add_option("--out", cc_out, "report path");

  std::string bv_raster, bv_labels, bv_out;
  auto* cmd_bv = add_command("bv-decompose", "Finest tv-additive partition");
  cmd_bv->add_option("--raster", bv_raster, "raster CSV")->required();
  cmd_bv->add_option("--labels", bv_labels, "write the label map CSV here");
  cmd_bv->add_option("--out", bv_out, "report path");

  std::uint64_t st_seed = 0;
  auto* cmd_st = add_command("selftest", "Quick built-in property checks");
  cmd_st->add_option("--seed", st_seed, "random seed (FLATCHAIN_SEED overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_dec->parsed()) return run_decompose(dec);
    if (cmd_ind->parsed()) return run_indecomposable(ind_chain, ind_budget, ind_out);
    if (cmd_fn->parsed()) return run_flatnorm(fn_chain, fn_margin, fn_out, fn_filler);
    if (cmd_def->parsed()) return run_deform(def);
    if (cmd_iso->parsed()) return run_isoperim(iso_chain, iso_h, iso_c, iso_margin, iso_out);
    if (cmd_mh->parsed()) return run_make_h(mh_samples, mh_out, mh_depth);
    if (cmd_cc->parsed()) return run_coarea_check(cc_raster, cc_out);
    if (cmd_bv->parsed()) return run_bv_decompose(bv_raster, bv_labels, bv_out);
    if (cmd_st->parsed()) return run_selftest(st_seed);
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
