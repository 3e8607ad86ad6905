// Copyright 2026 The tfgbs Authors
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
#include "cli/app.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "tfgbs/errors.hpp"
#include "tfgbs/version.hpp"

namespace tfgbs::cli {
namespace {

template <typename T>
CLI::Option* add_opt(CLI::App* app, const std::string& name, std::optional<T>& target,
                     const std::string& description) {
  return app->add_option_function<T>(
      name, [&target](const T& v) { target = v; }, description);
}

void add_common(CLI::App* app, CommonArgs& common) {
  app->add_option("--config", common.config_path, "JSON configuration file")
      ->check(CLI::ExistingFile);
  app->add_option("--out", common.out, "output file")->required();
}

void add_experiment(CLI::App* app, ExperimentFlags& f) {
  add_opt(app, "--x", f.x, "signal-idler modulation phase offset x");
  add_opt(app, "--delta", f.delta, "interferometer phase step");
  add_opt(app, "--modulation-index", f.modulation_index, "electro-optic modulation index");
  add_opt(app, "--xi", f.xi_abs, "squeezing magnitude |xi|");
  add_opt(app, "--xi-phase", f.xi_phase, "squeezing phase");
  add_opt(app, "--loss-db-signal", f.loss_db_signal, "signal loss in dB");
  add_opt(app, "--loss-db-idler", f.loss_db_idler, "idler loss in dB");
  add_opt(app, "--thermal-coeff", f.thermal_coeff, "thermal noise coefficient k");
  add_opt(app, "--equal-bessel", f.equal_bessel,
          "use equal sideband amplitudes (true/false)");
}

void add_pipeline(CLI::App* app, PipelineFlags& f) {
  add_opt(app, "--dilation-epsilon", f.dilation_epsilon, "unitary dilation margin");
  add_opt(app, "--conditioning", f.conditioning, "trace-out or dark")
      ->check(CLI::IsMember({"trace-out", "dark"}));
  add_opt(app, "--thermal-injection", f.thermal_injection, "source or lumped")
      ->check(CLI::IsMember({"source", "lumped"}));
}

void add_flag_opt(CLI::App* app, const std::string& name, std::optional<bool>& target,
                  const std::string& description) {
  app->add_flag_function(name, [&target](std::int64_t) { target = true; }, description);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-frequency Gaussian boson sampling toolkit", "tfgbs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  DistributionArgs dist;
  auto* c_dist = app.add_subcommand("distribution", "exact 144-pattern distribution");
  add_common(c_dist, dist.common);
  add_experiment(c_dist, dist.experiment);
  add_pipeline(c_dist, dist.pipeline);
  add_opt(c_dist, "--method", dist.method, "permanent or gaussian")
      ->check(CLI::IsMember({"permanent", "gaussian"}));
  add_flag_opt(c_dist, "--compare", dist.compare, "emit both methods and their fidelity");

  SampleArgs smp;
  auto* c_sample = app.add_subcommand("sample", "draw seeded samples as JSON lines");
  add_common(c_sample, smp.common);
  add_experiment(c_sample, smp.experiment);
  add_pipeline(c_sample, smp.pipeline);
  add_opt(c_sample, "--method", smp.method, "permanent or gaussian")
      ->check(CLI::IsMember({"permanent", "gaussian"}));
  add_opt(c_sample, "-n,--n", smp.n, "number of samples");
  add_opt(c_sample, "--seed", smp.seed, "random seed (required)");

  ValidateArgs val;
  auto* c_val = app.add_subcommand("validate", "Bayesian comparison of model hypotheses");
  add_common(c_val, val.common);
  add_experiment(c_val, val.experiment);
  add_pipeline(c_val, val.pipeline);
  add_opt(c_val, "--samples", val.samples, "JSON-lines sample file");
  add_opt(c_val, "--generator", val.generator, "model used to generate samples");
  add_opt(c_val, "--models", val.models, "models to compare");
  add_opt(c_val, "--keep", val.keep, "model expected to survive");
  add_opt(c_val, "--squeezed-method", val.squeezed_method, "gaussian or permanent");
  add_opt(c_val, "--threshold", val.threshold, "exclusion threshold");
  add_opt(c_val, "--every", val.every, "write every k-th posterior row");
  add_opt(c_val, "-n,--n", val.n, "number of generated samples");
  add_opt(c_val, "--seed", val.seed, "seed for generated samples");

  GraphsArgs gr;
  auto* c_graphs = app.add_subcommand("graphs", "graph-isomorphism feature vectors");
  add_common(c_graphs, gr.common);
  add_experiment(c_graphs, gr.experiment);
  add_opt(c_graphs, "--samples", gr.samples, "JSON-lines sample file");
  add_opt(c_graphs, "--vertices", gr.vertices, "graph sizes (4 and/or 6)");
  add_opt(c_graphs, "--threshold", gr.threshold, "clustering distance threshold");
  add_opt(c_graphs, "-n,--n", gr.n, "number of generated samples");
  add_opt(c_graphs, "--seed", gr.seed, "seed for generated samples");

  CompileArgs cmp;
  auto* c_compile = app.add_subcommand("compile", "decompose a unitary into hardware stages");
  add_common(c_compile, cmp.common);
  add_opt(c_compile, "--q", cmp.q, "number of time bins");
  add_opt(c_compile, "--m", cmp.m, "number of frequency bins");
  add_opt(c_compile, "--unitary", cmp.unitary, "JSON matrix file")->check(CLI::ExistingFile);
  add_opt(c_compile, "--seed", cmp.seed, "seed for a Haar-random unitary");

  HomArgs hom;
  auto* c_hom = app.add_subcommand("hom", "Hong-Ou-Mandel visibility sweep");
  add_common(c_hom, hom.common);
  add_opt(c_hom, "--xi-min", hom.xi_min, "smallest |xi|");
  add_opt(c_hom, "--xi-max", hom.xi_max, "largest |xi|");
  add_opt(c_hom, "--steps", hom.steps, "number of sweep points");
  add_opt(c_hom, "--xi-point", hom.xi_point, "operating point reported on stdout");
  add_opt(c_hom, "--loss-db-signal", hom.loss_db_signal, "signal loss in dB");
  add_opt(c_hom, "--loss-db-idler", hom.loss_db_idler, "idler loss in dB");
  add_opt(c_hom, "--thermal-coeff", hom.thermal_coeff, "thermal noise coefficient k");
  add_opt(c_hom, "--reference", hom.reference, "half-loss or direct")
      ->check(CLI::IsMember({"half-loss", "direct"}));
  add_opt(c_hom, "--thermal-injection", hom.thermal_injection, "source or lumped")
      ->check(CLI::IsMember({"source", "lumped"}));

  FransonArgs fr;
  auto* c_franson = app.add_subcommand("franson", "Franson fringe scan over x");
  add_common(c_franson, fr.common);
  add_experiment(c_franson, fr.experiment);
  add_opt(c_franson, "--x-min", fr.x_min, "scan start");
  add_opt(c_franson, "--x-max", fr.x_max, "scan end");
  add_opt(c_franson, "--points", fr.points, "number of scan points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (c_dist->parsed()) cmd_distribution(dist, out);
    else if (c_sample->parsed()) cmd_sample(smp, out);
    else if (c_val->parsed()) cmd_validate(val, out);
    else if (c_graphs->parsed()) cmd_graphs(gr, out);
    else if (c_compile->parsed()) cmd_compile(cmp, out);
    else if (c_hom->parsed()) cmd_hom(hom, out);
    else if (c_franson->parsed()) cmd_franson(fr, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SizeError& e) {
    err << "size error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ArgumentError& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace tfgbs::cli
