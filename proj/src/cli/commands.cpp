// Copyright 2026 The entx Authors
//
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

#include "entx/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "entx/errors.hpp"
#include "entx/numfmt.hpp"
#include "entx/qdm_io.hpp"

namespace entx::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Console summaries keep trailing zeros so 0.90 reads as 0.9000, not 0.9.
std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%#.4g", x);
  return buf;
}

std::filesystem::path prepare_output(const ScenarioConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  return cfg.output_dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
}

// Independent stream for a named stage, derived from the master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint32_t stage) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    stage};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

constexpr std::uint32_t kStageCounts = 1;
constexpr std::uint32_t kStageBootstrap = 2;
constexpr std::uint32_t kStageHomNoise = 3;

PipelineReport pipeline_for(const ScenarioConfig& cfg) {
  return run_pipeline(make_state(cfg.source_a), make_state(cfg.source_b), cfg.channel,
                      cfg.resolved_visibility(), cfg.accounting);
}

std::string csv_row(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    out += f;
    first = false;
  }
  return out + '\n';
}

std::string summary_csv(const ojson& doc) {
  std::string out = "key,value\n";
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object() || v.is_array()) continue;
    std::string text;
    if (v.is_number_float()) {
      text = format_double(v.get<double>());
    } else if (v.is_string()) {
      text = v.get<std::string>();
    } else {
      text = v.dump();
    }
    out += csv_row({it.key(), text});
  }
  return out;
}

struct FitOutcome {
  MleResult fit;
  BootstrapResult boot;
  double fidelity = 0.0;
};

FitOutcome fit_counts(const ScenarioConfig& cfg, const CountRecord& counts) {
  const SettingCatalog cat = SettingCatalog::standard();
  const PureState target = bell_pure(Bell::PhiPlus);
  FitOutcome out{mle_reconstruct(counts, cat, cfg.tomography.mle), {}, 0.0};
  out.fidelity = fidelity_to_pure(out.fit.state, target);
  out.boot = bootstrap(
      counts, cat, cfg.tomography.mle,
      [&](const DensityOp& rho) { return fidelity_to_pure(rho, target); },
      BootstrapOptions{cfg.tomography.bootstrap_replicas, derive_seed(cfg.seed, kStageBootstrap)});
  return out;
}

ojson fit_document(const FitOutcome& f) {
  ojson doc;
  doc["fidelity"] = f.fidelity;
  doc["bootstrap_std"] = f.boot.std_dev;
  doc["bootstrap_mean"] = f.boot.mean;
  doc["bootstrap_replicas"] = f.boot.values.size();
  doc["bootstrap_nonconverged"] = f.boot.nonconverged;
  doc["mle_converged"] = f.fit.diagnostics.converged;
  doc["mle_iterations"] = f.fit.diagnostics.iterations;
  doc["mle_rejected_steps"] = f.fit.diagnostics.rejected_steps;
  doc["mle_final_dilution"] = f.fit.diagnostics.final_dilution;
  doc["mle_log_likelihood"] = f.fit.diagnostics.log_likelihood;
  doc["mle_floored"] = f.fit.diagnostics.floored;
  return doc;
}

void write_summary(const ScenarioConfig& cfg, const std::filesystem::path& dir,
                   const std::string& stem, const ojson& doc) {
  if (cfg.format == OutputFormat::Json) {
    write_text(dir / (stem + ".json"), dump_json(doc));
  } else {
    write_text(dir / (stem + ".csv"), summary_csv(doc));
  }
}

void print_fit(std::ostream& console, const FitOutcome& f) {
  console << "fidelity to phi+: " << short_num(f.fidelity) << " +/- " << short_num(f.boot.std_dev)
          << " (bootstrap, " << f.boot.values.size() << " replicas)\n";
  console << "mle: " << f.fit.diagnostics.iterations << " iterations, "
          << (f.fit.diagnostics.converged ? "converged" : "NOT converged") << '\n';
  if (f.boot.nonconverged > 0) {
    console << "warning: " << f.boot.nonconverged << " bootstrap replicas did not converge\n";
  }
}

int fit_exit_code(const FitOutcome& f, std::ostream& console) {
  if (f.fit.diagnostics.converged) return kExitOk;
  console << "error: maximum-likelihood iteration cap reached (log-likelihood "
          << format_double(f.fit.diagnostics.log_likelihood) << ", dilution "
          << format_double(f.fit.diagnostics.final_dilution) << ")\n";
  return kExitNonConvergence;
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_pipeline(const ScenarioConfig& cfg, std::ostream& console) {
  const PipelineReport report = pipeline_for(cfg);
  const auto dir = prepare_output(cfg);
  if (cfg.format == OutputFormat::Json) {
    write_text(dir / "pipeline_report.json", dump_json(to_document(report)));
  } else {
    std::string branches = "alice,bob,probability,feedforward,fidelity_raw,fidelity_corrected\n";
    for (const auto& b : report.branches) {
      branches += csv_row({std::string(to_string(b.outcome.alice)),
                           std::string(to_string(b.outcome.bob)), format_double(b.probability),
                           b.feedforward ? "1" : "0", format_double(b.fidelity_raw),
                           format_double(b.fidelity_corrected)});
    }
    write_text(dir / "pipeline_branches.csv", branches);
    std::string conv = "convention,success_probability,fidelity\n";
    for (const auto& c : report.conventions) {
      conv += csv_row({std::string(to_string(c.accounting)), format_double(c.success_probability),
                       format_double(c.fidelity)});
    }
    write_text(dir / "pipeline_conventions.csv", conv);
  }

  console << "visibility v = " << short_num(report.v)
          << (report.channel_applied ? ", collective dephasing on" : ", no channel") << '\n';
  console << "parity-fail probability: " << short_num(report.parity_fail_probability) << '\n';
  for (const auto& c : report.conventions) {
    console << "  " << to_string(c.accounting) << ": success " << short_num(c.success_probability)
            << ", fidelity " << short_num(c.fidelity) << '\n';
  }
  console << "fidelity: " << short_num(report.headline().fidelity) << " ("
          << to_string(report.selected) << ")\n";
  return kExitOk;
}

int cmd_hom(const ScenarioConfig& cfg, std::ostream& console) {
  if (!cfg.spectral) throw InputError("config: the hom command needs a 'spectral' section");
  const SpectralParams& p = *cfg.spectral;
  std::vector<HomQuery> queries;
  for (double t : cfg.hom.taus_s) queries.push_back(HomQuery::delay(t));
  const std::vector<double> curve = hom_curve(p, queries);
  const double vis = hom_visibility(p);
  const double fwhm = hom_fwhm_path(p);

  std::vector<std::uint64_t> counts;
  if (cfg.hom.noise) {
    std::mt19937_64 gen(derive_seed(cfg.seed, kStageHomNoise));
    for (double c : curve) {
      const double mean = c * cfg.hom.noise->mean_counts;
      counts.push_back(mean > 0.0 ? std::poisson_distribution<std::uint64_t>(mean)(gen) : 0);
    }
  }

  const auto dir = prepare_output(cfg);
  if (cfg.format == OutputFormat::Csv) {
    std::string text = cfg.hom.noise ? "tau_s,path_m,coincidence,counts,coincidence_noisy\n"
                                     : "tau_s,path_m,coincidence\n";
    for (std::size_t i = 0; i < queries.size(); ++i) {
      std::string row = format_double(queries[i].tau()) + ',' +
                        format_double(queries[i].path_length()) + ',' + format_double(curve[i]);
      if (cfg.hom.noise) {
        row += ',' + std::to_string(counts[i]) + ',' +
               format_double(static_cast<double>(counts[i]) / cfg.hom.noise->mean_counts);
      }
      text += row + '\n';
    }
    write_text(dir / "hom_curve.csv", text);
  } else {
    ojson doc;
    doc["domega_p_per_s"] = p.domega_p;
    doc["domega_v_per_s"] = p.domega_v;
    doc["domega_t_per_s"] = p.domega_t;
    doc["visibility"] = vis;
    doc["fwhm_path_m"] = fwhm;
    auto rows = ojson::array();
    for (std::size_t i = 0; i < queries.size(); ++i) {
      ojson r;
      r["tau_s"] = queries[i].tau();
      r["path_m"] = queries[i].path_length();
      r["coincidence"] = curve[i];
      if (cfg.hom.noise) {
        r["counts"] = counts[i];
        r["coincidence_noisy"] = static_cast<double>(counts[i]) / cfg.hom.noise->mean_counts;
      }
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    write_text(dir / "hom_curve.json", dump_json(doc));
  }

  console << "domega_p = " << short_num(p.domega_p) << " /s, domega_v = " << short_num(p.domega_v)
          << " /s, domega_t = " << short_num(p.domega_t) << " /s\n";
  console << "visibility: " << short_num(vis) << '\n';
  console << "FWHM: " << short_num(fwhm * 1e6) << " um\n";
  return kExitOk;
}

int cmd_tomo(const ScenarioConfig& cfg, TomoMode mode, std::ostream& console) {
  const SettingCatalog cat = SettingCatalog::standard();
  const double mean = cfg.tomography.mean_counts_per_setting;

  switch (mode) {
    case TomoMode::Simulate: {
      DensityOp rho = cfg.tomography.state_path ? load_density(*cfg.tomography.state_path)
                      : cfg.tomography.state   ? make_state(*cfg.tomography.state)
                                               : *pipeline_for(cfg).headline().state;
      const CountRecord counts = simulate_counts(rho, cat, mean, derive_seed(cfg.seed, kStageCounts));
      const auto dir = prepare_output(cfg);
      save_counts(dir / "counts.csv", counts);
      console << "simulated " << counts.total() << " events over " << counts.entries.size()
              << " settings\n";
      return kExitOk;
    }
    case TomoMode::Fit: {
      if (!cfg.tomography.counts_path) {
        throw InputError("config: 'tomography.counts_path' is required for fit");
      }
      const CountRecord counts = load_counts(*cfg.tomography.counts_path);
      const FitOutcome f = fit_counts(cfg, counts);
      const auto dir = prepare_output(cfg);
      save_density(dir / "reconstructed_state.json", f.fit.state);
      ojson doc;
      doc["mode"] = "fit";
      doc.update(fit_document(f));
      write_summary(cfg, dir, "tomo_fit", doc);
      print_fit(console, f);
      return fit_exit_code(f, console);
    }
    case TomoMode::End2End: {
      const PipelineReport report = pipeline_for(cfg);
      const auto& headline = report.headline();
      if (!headline.state) throw ContractError("selected convention has no surviving branch");
      const CountRecord counts =
          simulate_counts(*headline.state, cat, mean, derive_seed(cfg.seed, kStageCounts));
      const FitOutcome f = fit_counts(cfg, counts);
      const auto dir = prepare_output(cfg);
      save_counts(dir / "counts.csv", counts);
      save_density(dir / "reconstructed_state.json", f.fit.state);
      ojson doc;
      doc["mode"] = "end2end";
      doc["visibility"] = report.v;
      doc["convention"] = std::string(to_string(report.selected));
      doc["model_fidelity"] = headline.fidelity;
      doc["success_probability"] = headline.success_probability;
      doc["mean_counts_per_setting"] = mean;
      doc.update(fit_document(f));
      write_summary(cfg, dir, "tomo_end2end", doc);
      console << "model fidelity: " << short_num(headline.fidelity) << '\n';
      print_fit(console, f);
      return fit_exit_code(f, console);
    }
  }
  return kExitOther;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"entx: entanglement extraction from collectively dephased photon pairs"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  app.add_option("--config", config_path, "scenario configuration file (JSON)")->required();
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--format", format, "artifact format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* pipeline = app.add_subcommand("pipeline", "run the extraction protocol");
  auto* hom = app.add_subcommand("hom", "Hong-Ou-Mandel dip from the spectral model");
  auto* tomo = app.add_subcommand("tomo", "two-qubit tomography");
  std::string tomo_mode;
  tomo->add_option("mode", tomo_mode, "simulate | fit | end2end")
      ->required()
      ->check(CLI::IsMember({"simulate", "fit", "end2end"}));
  for (auto* sub : {pipeline, hom, tomo}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    ScenarioConfig cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.output_dir = *out_dir;
    if (format) cfg.format = *format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

    if (pipeline->parsed()) return cmd_pipeline(cfg, out);
    if (hom->parsed()) return cmd_hom(cfg, out);
    const TomoMode mode = tomo_mode == "simulate" ? TomoMode::Simulate
                          : tomo_mode == "fit"    ? TomoMode::Fit
                                                  : TomoMode::End2End;
    return cmd_tomo(cfg, mode, out);
  } catch (const InputError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const QuadratureError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ContractError& e) {
    err << "numerical contract violation: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "numerical contract violation: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ModeError& e) {
    err << "numerical contract violation: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const SizeError& e) {
    err << "numerical contract violation: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
}

}  // namespace entx::cli
