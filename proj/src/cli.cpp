// Copyright 2026 The wvconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wvconc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wvconc/errors.hpp"
#include "wvconc/io.hpp"

namespace wvconc {

using nlohmann::json;

namespace {

WeakValueThresholds thresholds(const RunConfig& c) {
  WeakValueThresholds t;
  t.epsilon_origin = c.epsilon_origin;
  return t;
}

PointerGrid grid(const RunConfig& c) { return PointerGrid(c.grid_n, c.grid_n, c.extent); }

json parameters(const RunConfig& c) {
  return {{"command", c.command},         {"lambda", c.lambda},         {"grid_n", c.grid_n},
          {"extent", c.extent},           {"photons", c.photons},       {"efficiency", c.efficiency},
          {"seed", c.seed},               {"refine_iters", c.refine_iters}, {"epsilon_origin", c.epsilon_origin},
          {"epsilon_den", WeakValueThresholds{}.epsilon_den}, {"bootstrap_resamples", c.resamples}};
}

DensityMatrix required_reduced_state(const RunConfig& c) {
  if (!c.state) throw InvalidInput("--state is required for '" + c.command + "'");
  return load_state(*c.state).reduced_a();
}

void write_file(const std::string& path, const std::string& content, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode | std::ios::trunc);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << content;
  if (!f) throw InvalidInput("write failed for '" + path + "'");
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
  if (c.out)
    write_file(*c.out, content);
  else
    out << content;
}

std::string report_text(const EstimateReport& report, const RunConfig& c) {
  json doc = to_json(report);
  doc["parameters"] = parameters(c);
  return doc.dump(2) + "\n";
}

void validate(const RunConfig& c) {
  if (!(c.efficiency > 0.0 && c.efficiency <= 1.0)) throw InvalidInput("--efficiency must lie in (0, 1]");
  if (c.photons < 1) throw InvalidInput("--photons must be positive");
  if (c.refine_iters < 0) throw InvalidInput("--refine-iters must be >= 0");
  if (!(c.epsilon_origin >= 0.0)) throw InvalidInput("--epsilon-origin must be >= 0");
  if (c.resamples < 2) throw InvalidInput("--resamples must be >= 2");
}

}  // namespace

void execute(const RunConfig& c, std::ostream& out) {
  validate(c);
  if (c.command == "estimate") {
    emit(c, report_text(estimate(required_reduced_state(c), thresholds(c)), c), out);
  } else if (c.command == "simulate") {
    const auto rho_a = required_reduced_state(c);
    const auto run = simulate_optics(rho_a, CouplingStrength(c.lambda), grid(c), thresholds(c));
    if (c.dump_images) {
      for (int b = 0; b < 2; ++b) {
        const auto& image = b == 0 ? run.image0 : run.image1;
        const std::string stem = *c.dump_images + "_" + std::to_string(b);
        std::ostringstream text, raw, meta;
        write_image_csv(text, image);
        write_image_raw(raw, meta, image);
        write_file(stem + ".csv", text.str());
        write_file(stem + ".f64", raw.str(), std::ios::out | std::ios::binary);
        write_file(stem + ".json", meta.str());
      }
    }
    emit(c, report_text(run.report, c), out);
  } else if (c.command == "mc") {
    McConfig mc;
    mc.lambda = c.lambda;
    mc.grid = grid(c);
    mc.n_per_branch = c.photons;
    mc.efficiency = c.efficiency;
    mc.seed = c.seed;
    mc.bootstrap_resamples = c.resamples;
    mc.thresholds = thresholds(c);
    const auto run = mc_run(required_reduced_state(c), mc);
    if (c.dump_positions) {
      for (int b = 0; b < 2; ++b) {
        std::ostringstream s;
        write_positions(s, b == 0 ? run.branch0 : run.branch1);
        write_file(*c.dump_positions + "_" + std::to_string(b) + ".bin", s.str(), std::ios::out | std::ios::binary);
      }
    }
    emit(c, report_text(run.report, c), out);
  } else if (c.command == "sweep") {
    std::ostringstream s;
    write_sweep_csv(s, concurrence_sweep(c.sweep_n, c.sweep_max));
    emit(c, s.str(), out);
  } else if (c.command == "robustness") {
    if (c.state) {
      const StateInput in = load_state(*c.state);
      if (in.rho.dim() != 4) throw InvalidInput("robustness needs a two-qubit state");
      const auto cert = mixedness_upper(in.rho, c.refine_iters, c.seed);
      const auto bounds = concurrence_bounds(in.rho, c.refine_iters, c.seed);
      const double conc = concurrence_mixed(in.rho);
      json doc = {{"certificate", to_json(cert)},
                  {"concurrence", conc},
                  {"concurrence_squared", conc * conc},
                  {"det_zeta_a", bounds.det_zeta},
                  {"c_minus", bounds.c_minus},
                  {"c_plus", bounds.c_plus},
                  {"parameters", parameters(c)}};
      emit(c, doc.dump(2) + "\n", out);
    } else {
      CampaignConfig cc;
      cc.samples = c.samples;
      cc.seed = c.seed;
      cc.refine_iters = c.refine_iters;
      std::ostringstream s;
      write_campaign_csv(s, run_campaign(cc));
      emit(c, s.str(), out);
    }
  } else {
    throw InvalidInput("unknown command '" + c.command + "'");
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Concurrence from weak values: estimates, optics and Monte Carlo simulation, bound checks"};
  app.add_option("command", c.command, "estimate | simulate | mc | sweep | robustness")
      ->required()
      ->check(CLI::IsMember({"estimate", "simulate", "mc", "sweep", "robustness"}));
  app.add_option("--state", c.state, "state JSON (inline or file path)");
  app.add_option("--lambda", c.lambda, "coupling strength in waist units")->capture_default_str();
  app.add_option("--grid-n", c.grid_n, "grid points per axis")->capture_default_str();
  app.add_option("--extent", c.extent, "grid half-width in waist units")->capture_default_str();
  app.add_option("--photons", c.photons, "detections per branch (mc)")->capture_default_str();
  app.add_option("--efficiency", c.efficiency, "detector efficiency in (0, 1]")->capture_default_str();
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--dump-images", c.dump_images, "write PREFIX_{0,1}.csv and .f64 with .json sidecar (simulate)");
  app.add_option("--dump-positions", c.dump_positions, "write PREFIX_0.bin and PREFIX_1.bin (mc)");
  app.add_option("--refine-iters", c.refine_iters, "mixedness refinement iterations")->capture_default_str();
  app.add_option("--epsilon-origin", c.epsilon_origin, "origin-regime threshold")->capture_default_str();
  app.add_option("--sweep-n", c.sweep_n, "sweep points per axis")->capture_default_str();
  app.add_option("--sweep-max", c.sweep_max, "sweep range upper bound")->capture_default_str();
  app.add_option("--samples", c.samples, "robustness campaign size")->capture_default_str();
  app.add_option("--resamples", c.resamples, "bootstrap resamples (mc)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::InvalidInput);
  }

  try {
    execute(c, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InvalidInput);
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return static_cast<int>(ExitCode::NumericalFailure);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InvalidInput);
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return static_cast<int>(ExitCode::NumericalFailure);
  }
  return static_cast<int>(ExitCode::Ok);
}

}  // namespace wvconc
