#include "ncfa/cli.hpp"

#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "ncfa/errors.hpp"
#include "ncfa/io.hpp"

namespace ncfa {

namespace {

using nlohmann::json;

// Fixed section indices feed the per-instance seed derivation; reordering
// sections would silently change every sampled instance, so they are pinned.
enum Section : std::uint64_t {
  kHsIdentity = 1,
  kOpNormBound = 2,
  kSupportRank = 3,
  kProjection = 4,
  kTraceOrthogonality = 5,
  kCauchySchwarz = 6,
  kCommutation = 7,
  kSweep = 8,
};

std::uint64_t instance_seed(const RunConfig& cfg, std::uint64_t section, int instance) {
  return derive_seed(derive_seed(cfg.seed, section), static_cast<std::uint64_t>(instance));
}

// Deterministic fan-out: instance i goes to worker i % workers and lands in
// a pre-sized slot, so assembly order never depends on scheduling.
void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) body(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct SectionCounts {
  int failed = 0;
  int flagged = 0;
  int total = 0;
};

SectionCounts count_instances(const json& instances) {
  SectionCounts c;
  for (const json& inst : instances) {
    ++c.total;
    const std::string v = inst.value("verdict", "fail");
    if (v == "fail") ++c.failed;
    if (v == "flagged") ++c.flagged;
  }
  return c;
}

json finish_section(json instances) {
  const SectionCounts c = count_instances(instances);
  json section;
  section["instances"] = std::move(instances);
  section["total"] = c.total;
  section["failed"] = c.failed;
  section["flagged"] = c.flagged;
  return section;
}

json run_instances(const RunConfig& cfg, std::uint64_t section, int n,
                   const std::function<json(int, std::uint64_t)>& one) {
  std::vector<json> results(n);
  parallel_for(n, cfg.workers, [&](int i) {
    const std::uint64_t seed = instance_seed(cfg, section, i);
    json inst = one(i, seed);
    inst["instance"] = i;
    inst["seed"] = seed;
    results[i] = std::move(inst);
  });
  json arr = json::array();
  for (json& r : results) arr.push_back(std::move(r));
  return finish_section(std::move(arr));
}

json merge_report(const UncertaintyReport& rep) { return report_to_json(rep); }

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0 && cfg.tol <= 1e-3))
    throw InvalidArgument("tolerance must lie in (0, 1e-3]");
  if (cfg.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (cfg.workers < 1) throw InvalidArgument("workers must be >= 1");
  if (cfg.max_order < 1) throw InvalidArgument("max-order must be >= 1");
  parse_group_spec(cfg.group_spec);  // throws ParseError if malformed
}

json verify_report(const RunConfig& cfg) {
  validate_config(cfg);
  const FiniteGroup g = make_group(cfg.group_spec);
  const IrrepCatalog cat = irreps(g);
  const double tol = cfg.tol;

  json report;
  report["config"] = {{"command", "verify"},
                      {"group", g.label()},
                      {"seed", cfg.seed},
                      {"trials", cfg.trials},
                      {"tol", cfg.tol},
                      {"max_order", cfg.max_order}};
  report["group"] = {{"label", g.label()}, {"order", g.order()}};

  json sections;

  {  // catalog verification (deterministic, no instances)
    const CatalogReport cr = verify_catalog(g, cat);
    json section = catalog_report_to_json(cr);
    section["failed"] = cr.pass ? 0 : 1;
    section["flagged"] = 0;
    section["total"] = 1;
    sections["catalog"] = std::move(section);
  }

  sections["hs_identity"] = run_instances(cfg, kHsIdentity, cfg.trials, [&](int i, std::uint64_t seed) {
    Rng rng(seed);
    const GroupFunction f = random_function(g, rng);
    const BandLimiter r = random_band_limiter(cat, rng);
    const Side side = (i % 2 == 0) ? Side::left : Side::right;
    json inst = merge_report(hs_identity_check(f, r, side, tol));
    inst["side"] = side == Side::left ? "left" : "right";
    return inst;
  });

  sections["op_norm_bound"] =
      run_instances(cfg, kOpNormBound, cfg.trials, [&](int i, std::uint64_t seed) {
        Rng rng(seed);
        const GroupFunction f = random_function(g, rng);
        const BandLimiter r = random_band_limiter(cat, rng);
        const Side side = (i % 2 == 0) ? Side::left : Side::right;
        json inst = merge_report(op_norm_bound_check(f, r, side, tol));
        inst["side"] = side == Side::left ? "left" : "right";
        return inst;
      });

  sections["support_rank"] =
      run_instances(cfg, kSupportRank, cfg.trials, [&](int, std::uint64_t seed) {
        Rng rng(seed);
        return merge_report(support_rank_check(random_sparse_function(g, rng), cat, tol, tol));
      });

  sections["projection_uncertainty"] =
      run_instances(cfg, kProjection, cfg.trials, [&](int i, std::uint64_t seed) {
        Rng rng(seed);
        const std::vector<int> s = random_subset(g.order(), rng);
        if (i % 2 == 0) {
          json inst = merge_report(
              projection_uncertainty_check(g, cat, s, random_projector_band_limiter(cat, rng), tol));
          inst["variant"] = "projector_blocks";
          return inst;
        }
        const std::vector<int> t = random_subset(cat.count(), rng);
        json inst = merge_report(projection_uncertainty_check(g, cat, s, t, tol));
        inst["variant"] = "irrep_subset";
        return inst;
      });

  sections["trace_orthogonality"] =
      run_instances(cfg, kTraceOrthogonality, cfg.trials, [&](int, std::uint64_t seed) {
        Rng rng(seed);
        const int rho1 = rng.uniform_int(0, cat.count() - 1);
        const int rho2 = rng.uniform_int(0, cat.count() - 1);
        const ComplexMatrix r1 =
            random_projector(cat.dim(rho1), rng.uniform_int(0, cat.dim(rho1)), rng);
        const ComplexMatrix r2 =
            (rho1 == rho2) ? r1
                           : random_projector(cat.dim(rho2), rng.uniform_int(0, cat.dim(rho2)), rng);
        json inst = merge_report(trace_orthogonality_check(cat, rho1, rho2, r1, r2, tol));
        inst["rho1"] = rho1;
        inst["rho2"] = rho2;
        return inst;
      });

  if (g.order() <= cfg.max_order) {
    const std::vector<Subgroup> subgroups = all_subgroups(g, cfg.max_order);
    std::vector<json> rows(subgroups.size());
    parallel_for(static_cast<int>(subgroups.size()), cfg.workers, [&](int i) {
      json inst = merge_report(subgroup_profile(g, cat, subgroups[i], tol, tol));
      inst["instance"] = i;
      inst["members"] = subgroups[i].members;
      rows[i] = std::move(inst);
    });
    json arr = json::array();
    for (json& r : rows) arr.push_back(std::move(r));
    sections["subgroup_profile"] = finish_section(std::move(arr));
  } else {
    json section;
    section["skipped"] = "group order exceeds --max-order cap for subgroup enumeration";
    section["failed"] = 0;
    section["flagged"] = 0;
    section["total"] = 0;
    sections["subgroup_profile"] = std::move(section);
  }

  sections["cauchy_schwarz"] =
      run_instances(cfg, kCauchySchwarz, cfg.trials, [&](int, std::uint64_t seed) {
        Rng rng(seed);
        return merge_report(cauchy_schwarz_chain_check(random_sparse_function(g, rng), cat, tol, tol));
      });

  sections["commutation"] =
      run_instances(cfg, kCommutation, cfg.trials, [&](int i, std::uint64_t seed) {
        Rng rng(seed);
        const Side side = (i % 2 == 0) ? Side::left : Side::right;
        const OperatorDesc band_desc =
            OperatorDesc::band_limiter(random_band_limiter(cat, rng), side);
        const CommutationReport band_rep =
            commutation_report(band_desc, g, cat, derive_seed(seed, 1));
        const OperatorDesc time_desc = OperatorDesc::time_limiter(random_function(g, rng));
        const CommutationReport time_rep =
            commutation_report(time_desc, g, cat, derive_seed(seed, 2));

        const double band_residual = (side == Side::left) ? band_rep.left_translation_residual
                                                          : band_rep.right_translation_residual;
        json inst;
        inst["side"] = side == Side::left ? "left" : "right";
        inst["band"] = commutation_report_to_json(band_rep);
        inst["time"] = commutation_report_to_json(time_rep);
        inst["verdict"] =
            (band_residual <= tol && time_rep.subset_projection_residual <= tol) ? "pass" : "fail";
        return inst;
      });

  report["sections"] = std::move(sections);

  int failed = 0, flagged = 0, total = 0;
  for (const auto& [name, section] : report["sections"].items()) {
    failed += section.value("failed", 0);
    flagged += section.value("flagged", 0);
    total += section.value("total", 0);
  }
  report["summary"] = {{"total", total}, {"failed", failed}, {"flagged", flagged}};
  return report;
}

json sweep_report(const RunConfig& cfg) {
  validate_config(cfg);
  const FiniteGroup g = make_group(cfg.group_spec);
  const IrrepCatalog cat = irreps(g);

  json report;
  report["config"] = {{"command", "sweep"},
                      {"group", g.label()},
                      {"seed", cfg.seed},
                      {"trials", cfg.trials},
                      {"tol", cfg.tol}};
  report["group"] = {{"label", g.label()}, {"order", g.order()}};

  json section = run_instances(cfg, kSweep, cfg.trials, [&](int i, std::uint64_t seed) {
    Rng rng(seed);
    const GroupFunction f = random_function(g, rng);
    const BandLimiter r = random_band_limiter(cat, rng);
    const Side side = (i % 2 == 0) ? Side::left : Side::right;
    const UncertaintyReport hs = hs_identity_check(f, r, side, cfg.tol);
    const UncertaintyReport ob = op_norm_bound_check(f, r, side, cfg.tol);
    json inst;
    inst["side"] = side == Side::left ? "left" : "right";
    inst["lhs_hs_sq"] = hs.quantities.at("lhs_hs_sq");
    inst["rhs_product"] = hs.quantities.at("rhs_product");
    inst["hs_residual"] = hs.residual;
    inst["hs_verdict"] = verdict_name(hs.verdict);
    inst["op_norm"] = ob.quantities.at("op_norm");
    inst["bound"] = ob.quantities.at("bound");
    inst["slack"] = ob.slack;
    inst["op_verdict"] = verdict_name(ob.verdict);
    inst["verdict"] =
        (hs.verdict != Verdict::fail && ob.verdict != Verdict::fail) ? "pass" : "fail";
    return inst;
  });

  report["sections"] = json{{"sweep", std::move(section)}};
  const json& s = report["sections"]["sweep"];
  report["summary"] = {
      {"total", s["total"]}, {"failed", s["failed"]}, {"flagged", s["flagged"]}};
  return report;
}

json subgroups_report(const RunConfig& cfg) {
  validate_config(cfg);
  const FiniteGroup g = make_group(cfg.group_spec);
  if (g.order() > cfg.max_order)
    throw InvalidArgument("subgroups: group order " + std::to_string(g.order()) +
                          " exceeds the enumeration cap of " + std::to_string(cfg.max_order) +
                          " (raise with --max-order, hard limit 64)");
  const IrrepCatalog cat = irreps(g);
  const std::vector<Subgroup> subgroups = all_subgroups(g, cfg.max_order);

  json report;
  report["config"] = {{"command", "subgroups"},
                      {"group", g.label()},
                      {"tol", cfg.tol},
                      {"max_order", cfg.max_order}};
  report["group"] = {{"label", g.label()}, {"order", g.order()}};

  std::vector<json> rows(subgroups.size());
  parallel_for(static_cast<int>(subgroups.size()), cfg.workers, [&](int i) {
    const Subgroup& h = subgroups[i];
    const UncertaintyReport rep = subgroup_profile(g, cat, h, cfg.tol, cfg.tol);
    json row;
    row["instance"] = i;
    row["size"] = h.size();
    row["members"] = h.members;
    row["normal"] = rep.quantities.at("is_normal") != 0.0;
    row["all_full_or_zero"] = rep.quantities.at("all_full_or_zero") != 0.0;
    row["rank_product"] = rep.quantities.at("rank_product");
    row["matolcsi_product"] = rep.quantities.at("matolcsi_product");
    json ranks = json::array();
    for (int k = 0; k < cat.count(); ++k)
      ranks.push_back(static_cast<int>(rep.quantities.at("rank_" + std::to_string(k))));
    row["ranks"] = std::move(ranks);
    row["verdict"] = verdict_name(rep.verdict);
    rows[i] = std::move(row);
  });
  json arr = json::array();
  for (json& r : rows) arr.push_back(std::move(r));
  report["sections"] = json{{"subgroups", finish_section(std::move(arr))}};
  const json& s = report["sections"]["subgroups"];
  report["summary"] = {
      {"total", s["total"]}, {"failed", s["failed"]}, {"flagged", s["flagged"]}};
  return report;
}

int exit_code_of(const json& report) {
  return report.at("summary").at("failed").get<int>() > 0 ? 1 : 0;
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_scalar(const json& v) {
  if (v.is_string()) return csv_escape(v.get<std::string>());
  return v.dump();  // numbers and booleans: shortest round-trip text
}

void csv_row(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += "\r\n";
}

}  // namespace

std::string report_to_csv(const json& report) {
  // Long-format flattening: one row per scalar quantity of each instance.
  std::string out;
  csv_row(out, {"section", "instance", "key", "value"});
  for (const auto& [name, section] : report.at("sections").items()) {
    if (!section.contains("instances")) continue;
    for (const json& inst : section.at("instances")) {
      const std::string idx = inst.contains("instance") ? inst.at("instance").dump() : "";
      for (const auto& [key, value] : inst.items()) {
        if (key == "instance") continue;
        if (value.is_object()) {
          for (const auto& [sub, subval] : value.items())
            if (subval.is_primitive())
              csv_row(out, {csv_escape(name), idx, csv_escape(key + "." + sub), csv_scalar(subval)});
        } else if (value.is_array()) {
          std::string joined;
          for (const json& e : value) {
            if (!joined.empty()) joined += ' ';
            joined += e.dump();
          }
          csv_row(out, {csv_escape(name), idx, csv_escape(key), csv_escape(joined)});
        } else {
          csv_row(out, {csv_escape(name), idx, csv_escape(key), csv_scalar(value)});
        }
      }
    }
  }
  return out;
}

namespace {

int run_transform(const RunConfig& cfg, std::ostream& out) {
  validate_config(cfg);
  if (cfg.in_path.empty()) throw InvalidArgument("transform requires --in <function.json>");
  const FiniteGroup g = make_group(cfg.group_spec);
  const IrrepCatalog cat = irreps(g);
  const GroupFunction f = function_from_json(read_json_file(cfg.in_path), g);

  const Spectrum s = fourier_transform(f, cat);
  const SupportMetrics m = support_metrics(f, s, cfg.tol);

  const std::string out_path =
      cfg.out_path.empty() ? cfg.in_path + ".spectrum.json" : cfg.out_path;
  write_json_file(out_path, spectrum_to_json(s));

  json metrics;
  metrics["group"] = g.label();
  metrics["spectrum_file"] = out_path;
  metrics["mu_supp"] = m.mu_supp;
  metrics["rank_sum"] = m.rank_sum;
  metrics["dsq_sum"] = m.dsq_sum;
  metrics["d1_sum"] = m.d1_sum;
  metrics["zero_function"] = m.zero_function;
  out << metrics.dump(2) << '\n';
  return 0;
}

int emit_report(const RunConfig& cfg, const json& report, std::ostream& out) {
  std::string text;
  if (cfg.format == Format::csv) {
    text = report_to_csv(report);
  } else {
    text = report.dump(2);
    text += '\n';
  }
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out_path, text);
  }
  return exit_code_of(report);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"noncommutative Fourier analysis on finite groups"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format_name = "json";

  auto add_common = [&](CLI::App* cmd, bool needs_group) {
    auto* group_opt = cmd->add_option("--group", cfg.group_spec,
                                      "group specification, e.g. C12, D4, S3, C2xS3");
    if (needs_group) group_opt->required();
    cmd->add_option("--out", cfg.out_path, "output file (default: stdout)");
    cmd->add_option("--tol", cfg.tol, "verdict tolerance, in (0, 1e-3]")->capture_default_str();
    cmd->add_option("--format", format_name, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--max-order", cfg.max_order, "cap for subgroup enumeration (<= 64)")
        ->capture_default_str();
    cmd->add_option("--workers", cfg.workers, "worker threads for sweeps (output-invariant)")
        ->capture_default_str();
  };

  CLI::App* transform = app.add_subcommand("transform", "Fourier-transform a function file");
  add_common(transform, true);
  transform->add_option("--in", cfg.in_path, "input function JSON")->required();

  CLI::App* verify = app.add_subcommand("verify", "run every verifier with seeded instances");
  add_common(verify, true);
  verify->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  verify->add_option("--trials", cfg.trials, "instances per randomized section")
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "per-instance table of the norm identity/bound");
  add_common(sweep, true);
  sweep->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  sweep->add_option("--trials", cfg.trials, "number of instances")->capture_default_str();

  CLI::App* subgroups = app.add_subcommand("subgroups", "profile every subgroup");
  add_common(subgroups, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  cfg.format = (format_name == "csv") ? Format::csv : Format::json;

  try {
    if (transform->parsed()) {
      cfg.command = Command::transform;
      return run_transform(cfg, out);
    }
    if (verify->parsed()) {
      cfg.command = Command::verify;
      return emit_report(cfg, verify_report(cfg), out);
    }
    if (sweep->parsed()) {
      cfg.command = Command::sweep;
      return emit_report(cfg, sweep_report(cfg), out);
    }
    cfg.command = Command::subgroups;
    return emit_report(cfg, subgroups_report(cfg), out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ncfa
