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

#include "entx/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <string_view>

#include "entx/errors.hpp"

namespace entx::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& why) {
  throw InputError("config " + where + ": " + why);
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      fail(where, "unknown key '" + it.key() + "'");
    }
  }
}

double get_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(where, std::string("missing '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) fail(where, std::string("'") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, std::string("'") + key + "' must be finite");
  return x;
}

double get_positive(const json& j, const char* key, const std::string& where) {
  const double x = get_number(j, key, where);
  if (!(x > 0.0)) fail(where, std::string("'") + key + "' must be positive");
  return x;
}

std::filesystem::path get_path(const json& j, const char* key, const std::filesystem::path& base,
                               const std::string& where, bool must_exist) {
  if (!j.at(key).is_string()) fail(where, std::string("'") + key + "' must be a string");
  std::filesystem::path p = j.at(key).get<std::string>();
  if (p.is_relative()) p = base / p;
  if (must_exist && !std::filesystem::exists(p)) {
    fail(where, "referenced file " + p.string() + " does not exist");
  }
  return p;
}

std::vector<double> parse_grid(const json& j, double unit, const std::string& where) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) fail(where, "grid values must be numbers");
      out.push_back(v.get<double>() * unit);
    }
  } else {
    check_keys(j, {"from", "to", "points"}, where);
    const double from = get_number(j, "from", where);
    const double to = get_number(j, "to", where);
    if (!j.contains("points") || !j.at("points").is_number_integer()) {
      fail(where, "'points' must be an integer");
    }
    const int points = j.at("points").get<int>();
    if (points < 1) fail(where, "'points' must be at least 1");
    for (int i = 0; i < points; ++i) {
      const double x = points == 1 ? from : from + (to - from) * i / (points - 1);
      out.push_back(x * unit);
    }
  }
  if (out.empty()) fail(where, "grid is empty");
  return out;
}

PhaseChannelSpec parse_channel(const json& j) {
  const std::string where = "channel";
  check_keys(j, {"form", "steps", "phase_offset_rad", "targets"}, where);
  PhaseChannelSpec spec;
  spec.targets = {2, 4};
  if (j.contains("targets")) {
    if (!j.at("targets").is_array()) fail(where, "'targets' must be a list of mode numbers");
    spec.targets = j.at("targets").get<ModeList>();
  }
  const std::string form = j.value("form", "continuous");
  if (form == "continuous") {
    spec.form = ContinuousPhase{};
  } else if (form == "discrete") {
    if (j.contains("steps") && !j.at("steps").is_number_integer()) {
      fail(where, "'steps' must be an integer");
    }
    spec.form = DiscretePhase{j.value("steps", 8)};
  } else {
    fail(where, "'form' must be 'continuous' or 'discrete'");
  }
  if (j.contains("phase_offset_rad")) spec.phase_offset = get_number(j, "phase_offset_rad", where);
  try {
    validate(spec);
  } catch (const Error& e) {
    fail(where, e.what());
  }
  std::vector<int> sorted = spec.targets;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::vector<int>{2, 4}) fail(where, "the channel acts on modes 2 and 4");
  return spec;
}

SpectralParams parse_spectral(const json& j) {
  const std::string where = "spectral";
  check_keys(j, {"lab", "domega_per_s", "omega_per_s"}, where);
  SpectralParams p;
  if (j.contains("lab") == j.contains("domega_per_s")) {
    fail(where, "give exactly one of 'lab' or 'domega_per_s'");
  }
  try {
    if (j.contains("lab")) {
      const auto& lab = j.at("lab");
      check_keys(lab, {"pump_fwhm_fs", "pump_center_nm", "visible", "telecom"}, "spectral.lab");
      LabSettings s;
      s.pump_fwhm_s = get_positive(lab, "pump_fwhm_fs", "spectral.lab") * 1e-15;
      s.pump_center_m = std::nullopt;
      if (lab.contains("pump_center_nm")) {
        s.pump_center_m = get_positive(lab, "pump_center_nm", "spectral.lab") * 1e-9;
      }
      for (const char* arm : {"visible", "telecom"}) {
        const std::string w = std::string("spectral.lab.") + arm;
        if (!lab.contains(arm)) fail("spectral.lab", std::string("missing '") + arm + "'");
        const auto& f = lab.at(arm);
        check_keys(f, {"center_nm", "fwhm_nm"}, w);
        const double center = get_positive(f, "center_nm", w) * 1e-9;
        const double fwhm = get_positive(f, "fwhm_nm", w) * 1e-9;
        if (std::string_view(arm) == "visible") {
          s.visible_center_m = center;
          s.visible_fwhm_m = fwhm;
        } else {
          s.telecom_center_m = center;
          s.telecom_fwhm_m = fwhm;
        }
      }
      p = from_lab(s);
    } else {
      const auto& w = j.at("domega_per_s");
      check_keys(w, {"p", "v", "t"}, "spectral.domega_per_s");
      p.domega_p = get_positive(w, "p", "spectral.domega_per_s");
      p.domega_v = get_positive(w, "v", "spectral.domega_per_s");
      p.domega_t = get_positive(w, "t", "spectral.domega_per_s");
    }
    if (j.contains("omega_per_s")) {
      const auto& c = j.at("omega_per_s");
      check_keys(c, {"p", "v", "t"}, "spectral.omega_per_s");
      if (c.contains("p")) p.omega_p = get_positive(c, "p", "spectral.omega_per_s");
      if (c.contains("v")) p.omega_v = get_positive(c, "v", "spectral.omega_per_s");
      if (c.contains("t")) p.omega_t = get_positive(c, "t", "spectral.omega_per_s");
    }
    validate(p);
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  return p;
}

MleOptions parse_mle(const json& j) {
  const std::string where = "tomography.mle";
  check_keys(j,
             {"initial_dilution", "backtrack", "max_dilution", "loglik_rel_tol", "state_tol",
              "max_iterations", "probability_floor"},
             where);
  MleOptions o;
  if (j.contains("initial_dilution")) o.initial_dilution = get_number(j, "initial_dilution", where);
  if (j.contains("backtrack")) o.backtrack = get_number(j, "backtrack", where);
  if (j.contains("max_dilution")) o.max_dilution = get_number(j, "max_dilution", where);
  if (j.contains("loglik_rel_tol")) o.loglik_rel_tol = get_number(j, "loglik_rel_tol", where);
  if (j.contains("state_tol")) o.state_tol = get_number(j, "state_tol", where);
  if (j.contains("probability_floor")) {
    o.probability_floor = get_number(j, "probability_floor", where);
  }
  if (j.contains("max_iterations")) {
    if (!j.at("max_iterations").is_number_integer()) fail(where, "'max_iterations' must be an integer");
    o.max_iterations = j.at("max_iterations").get<long>();
  }
  try {
    o.validate();
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  return o;
}

TomographyConfig parse_tomography(const json& j, const std::filesystem::path& base) {
  const std::string where = "tomography";
  check_keys(j,
             {"mean_counts_per_setting", "bootstrap_replicas", "state", "state_path",
              "counts_path", "mle"},
             where);
  TomographyConfig t;
  if (j.contains("mean_counts_per_setting")) {
    t.mean_counts_per_setting = get_positive(j, "mean_counts_per_setting", where);
  }
  if (j.contains("bootstrap_replicas")) {
    if (!j.at("bootstrap_replicas").is_number_integer()) {
      fail(where, "'bootstrap_replicas' must be an integer");
    }
    t.bootstrap_replicas = j.at("bootstrap_replicas").get<int>();
    if (t.bootstrap_replicas < 2) fail(where, "'bootstrap_replicas' must be at least 2");
  }
  if (j.contains("state") && j.contains("state_path")) {
    fail(where, "give at most one of 'state' and 'state_path'");
  }
  if (j.contains("state")) t.state = parse_state_spec(j.at("state"));
  if (j.contains("state_path")) t.state_path = get_path(j, "state_path", base, where, true);
  if (j.contains("counts_path")) t.counts_path = get_path(j, "counts_path", base, where, true);
  if (j.contains("mle")) t.mle = parse_mle(j.at("mle"));
  return t;
}

}  // namespace

StateSpec parse_state_spec(const json& j) {
  const std::string where = "state";
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    fail(where, "expected an object with a string 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  StateSpec spec;
  if (type == "bell") {
    check_keys(j, {"type", "which"}, where);
    const std::string which = j.value("which", "phi+");
    if (which == "phi+") {
      spec = BellSpec{Bell::PhiPlus};
    } else if (which == "phi-") {
      spec = BellSpec{Bell::PhiMinus};
    } else if (which == "psi+") {
      spec = BellSpec{Bell::PsiPlus};
    } else if (which == "psi-") {
      spec = BellSpec{Bell::PsiMinus};
    } else {
      fail(where, "unknown Bell state '" + which + "'");
    }
  } else if (type == "basis") {
    check_keys(j, {"type", "labels"}, where);
    if (!j.contains("labels") || !j.at("labels").is_string()) fail(where, "'labels' must be a string");
    spec = BasisSpec{j.at("labels").get<std::string>()};
  } else if (type == "werner") {
    check_keys(j, {"type", "p"}, where);
    spec = WernerSpec{get_number(j, "p", where)};
  } else if (type == "phase_noise_pair") {
    check_keys(j, {"type", "c"}, where);
    spec = PhaseNoisePairSpec{get_number(j, "c", where)};
  } else {
    fail(where, "unknown state type '" + type + "'");
  }
  try {
    const DensityOp rho = make_state(spec);
    if (rho.num_modes() != 2) fail(where, "states must describe two modes");
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  return spec;
}

double ScenarioConfig::resolved_visibility() const {
  if (visibility) return *visibility;
  if (spectral) return hom_visibility(*spectral);
  throw InputError("config: neither 'visibility' nor 'spectral' is set");
}

namespace {

ScenarioConfig parse_config_fields(const nlohmann::json& doc,
                                   const std::filesystem::path& base_dir) {
  check_keys(doc,
             {"seed", "sources", "channel", "visibility", "spectral", "accounting", "hom",
              "tomography", "output"},
             "root");
  ScenarioConfig cfg;
  if (!doc.contains("seed")) fail("root", "missing mandatory 'seed'");
  if (!doc.at("seed").is_number_unsigned()) fail("root", "'seed' must be a nonnegative integer");
  cfg.seed = doc.at("seed").get<std::uint64_t>();

  if (doc.contains("sources")) {
    const auto& s = doc.at("sources");
    check_keys(s, {"a", "b"}, "sources");
    if (s.contains("a")) cfg.source_a = parse_state_spec(s.at("a"));
    if (s.contains("b")) cfg.source_b = parse_state_spec(s.at("b"));
  }
  if (doc.contains("channel") && !doc.at("channel").is_null()) {
    cfg.channel = parse_channel(doc.at("channel"));
  }
  if (doc.contains("visibility")) {
    const double v = get_number(doc, "visibility", "root");
    if (!(v >= 0.0 && v <= 1.0)) fail("root", "'visibility' must lie in [0, 1]");
    cfg.visibility = v;
  }
  if (doc.contains("spectral")) cfg.spectral = parse_spectral(doc.at("spectral"));
  if (doc.contains("accounting")) {
    if (!doc.at("accounting").is_string()) fail("root", "'accounting' must be a string");
    const auto a = parse_accounting(doc.at("accounting").get<std::string>());
    if (!a) fail("root", "'accounting' must be one of a, b, c");
    cfg.accounting = *a;
  }
  if (doc.contains("hom")) {
    const auto& h = doc.at("hom");
    check_keys(h, {"tau_ps", "path_um", "noise"}, "hom");
    if (h.contains("tau_ps") == h.contains("path_um")) {
      fail("hom", "give exactly one of 'tau_ps' or 'path_um'");
    }
    if (h.contains("tau_ps")) {
      cfg.hom.taus_s = parse_grid(h.at("tau_ps"), 1e-12, "hom.tau_ps");
    } else {
      for (double path : parse_grid(h.at("path_um"), 1e-6, "hom.path_um")) {
        cfg.hom.taus_s.push_back(HomQuery::path(path).tau());
      }
    }
    if (h.contains("noise")) {
      check_keys(h.at("noise"), {"mean_counts"}, "hom.noise");
      cfg.hom.noise = HomNoise{get_positive(h.at("noise"), "mean_counts", "hom.noise")};
    }
  } else {
    cfg.hom.taus_s = parse_grid(json{{"from", -1.5}, {"to", 1.5}, {"points", 61}}, 1e-12, "hom");
  }
  if (doc.contains("tomography")) cfg.tomography = parse_tomography(doc.at("tomography"), base_dir);
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    check_keys(o, {"dir", "format"}, "output");
    if (o.contains("dir")) {
      if (!o.at("dir").is_string()) fail("output", "'dir' must be a string");
      cfg.output_dir = o.at("dir").get<std::string>();
    }
    if (o.contains("format")) {
      const std::string f = o.value("format", "json");
      if (f == "csv") {
        cfg.format = OutputFormat::Csv;
      } else if (f == "json") {
        cfg.format = OutputFormat::Json;
      } else {
        fail("output", "'format' must be csv or json");
      }
    }
  }
  if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
  if (cfg.spectral && !cfg.visibility) {
    const double v = hom_visibility(*cfg.spectral);
    if (!(v >= 0.0 && v <= 1.0)) fail("spectral", "resolved visibility outside [0, 1]");
  }
  return cfg;
}

}  // namespace

ScenarioConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  try {
    return parse_config_fields(doc, base_dir);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(is, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc, path.has_parent_path() ? path.parent_path() : ".");
}

}  // namespace entx::cli
