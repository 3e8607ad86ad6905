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
#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "tfgbs/compiler.hpp"
#include "tfgbs/errors.hpp"
#include "tfgbs/graphs.hpp"
#include "tfgbs/io.hpp"
#include "tfgbs/validation.hpp"

namespace tfgbs::cli {
namespace {

template <typename T>
void override_with(const std::optional<T>& flag, T& value) {
  if (flag) value = *flag;
}

ConfigFile load_config(const CommonArgs& common) {
  return common.config_path.empty() ? ConfigFile{} : ConfigFile::load(common.config_path);
}

ExperimentConfig resolve_experiment(const ConfigFile& file, const ExperimentFlags& flags) {
  ExperimentConfig c = file.experiment();
  flags.apply(c);
  try {
    c.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("experiment: ") + e.what());
  }
  return c;
}

ordered_json experiment_json(const ExperimentConfig& c) {
  return ordered_json::parse(experiment_config_to_json(c));
}

GaussianPipelineOptions resolve_pipeline(const ConfigFile& file, const PipelineFlags& flags,
                                         ordered_json& snapshot) {
  SectionReader r(file, "pipeline");
  double epsilon = 1e-3;
  std::string conditioning = "trace-out";
  std::string thermal = "source";
  r.read("dilation_epsilon", epsilon);
  r.read("conditioning", conditioning);
  r.read("thermal_injection", thermal);
  r.finish();
  override_with(flags.dilation_epsilon, epsilon);
  override_with(flags.conditioning, conditioning);
  override_with(flags.thermal_injection, thermal);
  if (!(epsilon > 0.0)) throw ConfigError("pipeline.dilation_epsilon: must be positive");
  GaussianPipelineOptions o;
  o.dilation_epsilon = epsilon;
  o.conditioning = parse_conditioning(conditioning);
  o.thermal = parse_thermal_injection(thermal);
  snapshot = {{"dilation_epsilon", epsilon},
              {"conditioning", conditioning},
              {"thermal_injection", thermal}};
  return o;
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const char* command) {
  if (!seed) {
    throw ConfigError(std::string(command) + ": a seed is required (--seed or config)");
  }
  return *seed;
}

std::string fmt(double v) { return format_double(v == 0.0 ? 0.0 : v); }

std::vector<std::string> pattern_cells(int index, const Pattern& p) {
  return {std::to_string(index),       std::to_string(p.signal[0]),
          std::to_string(p.signal[1]), std::to_string(p.idler[0]),
          std::to_string(p.idler[1]),  p.label()};
}

std::string join_ints(const IndexSet& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::function<void(std::string_view)> csv_validator(std::vector<std::string> header,
                                                    std::size_t rows) {
  return [header = std::move(header), rows](std::string_view text) {
    validate_csv(text, header, rows);
  };
}

CMatrix haar_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Distribution distribution_by_method(const std::string& method, const ExperimentConfig& c,
                                    const GaussianPipelineOptions& o) {
  if (method == "permanent") return full_distribution(c);
  if (method == "gaussian") return gbs_distribution_gaussian(c, o);
  throw ConfigError("method must be 'permanent' or 'gaussian', got '" + method + "'");
}

}  // namespace

void ExperimentFlags::apply(ExperimentConfig& c) const {
  override_with(x, c.x);
  override_with(delta, c.delta);
  override_with(modulation_index, c.modulation_index);
  override_with(xi_abs, c.xi_abs);
  override_with(xi_phase, c.xi_phase);
  override_with(loss_db_signal, c.loss_db_signal);
  override_with(loss_db_idler, c.loss_db_idler);
  override_with(thermal_coeff, c.thermal_coeff);
  override_with(equal_bessel, c.equal_bessel);
}

void cmd_distribution(const DistributionArgs& args, std::ostream& out) {
  const ConfigFile file = load_config(args.common);
  const ExperimentConfig config = resolve_experiment(file, args.experiment);
  ordered_json pipeline_json;
  const GaussianPipelineOptions pipeline = resolve_pipeline(file, args.pipeline, pipeline_json);
  SectionReader r(file, "distribution");
  std::string method = "permanent";
  bool compare = false;
  r.read("method", method);
  r.read("compare", compare);
  r.finish();
  override_with(args.method, method);
  override_with(args.compare, compare);
  if (method != "permanent" && method != "gaussian") {
    throw ConfigError("distribution.method: must be 'permanent' or 'gaussian'");
  }

  ordered_json snapshot;
  snapshot["experiment"] = experiment_json(config);
  snapshot["pipeline"] = pipeline_json;
  snapshot["distribution"] = {{"method", method}, {"compare", compare}};
  RunOutputs outputs("distribution", snapshot, std::nullopt);

  const Distribution primary = distribution_by_method(method, config, pipeline);
  std::vector<std::string> header = {"index", "signal_a", "signal_b", "idler_a",
                                     "idler_b", "label"};
  std::optional<Distribution> other;
  double fid = 0.0;
  if (compare) {
    other = distribution_by_method(method == "permanent" ? "gaussian" : "permanent", config,
                                   pipeline);
    fid = fidelity(primary, *other);
    header.push_back(method);
    header.push_back(method == "permanent" ? "gaussian" : "permanent");
  } else {
    header.push_back("probability");
  }
  CsvWriter csv(csv_manifest_comment(args.common.out, outputs.run_id()), header);
  for (std::size_t i = 0; i < primary.patterns.size(); ++i) {
    auto cells = pattern_cells(static_cast<int>(i), primary.patterns[i]);
    cells.push_back(fmt(primary.probs[i]));
    if (other) cells.push_back(fmt(other->probs[i]));
    csv.add_row(std::move(cells));
  }
  ordered_json summary = {{"patterns", primary.patterns.size()}, {"sum", primary.sum()}};
  if (compare) summary["fidelity"] = fid;
  outputs.set_summary(summary);
  outputs.add(args.common.out, csv.str(), csv_validator(header, primary.patterns.size()));
  outputs.commit();

  out << "wrote " << primary.patterns.size() << " patterns (" << method << ") to "
      << args.common.out << "\n";
  if (compare) out << "fidelity(permanent, gaussian) = " << fmt(fid) << "\n";
}

void cmd_sample(const SampleArgs& args, std::ostream& out) {
  const ConfigFile file = load_config(args.common);
  const ExperimentConfig config = resolve_experiment(file, args.experiment);
  ordered_json pipeline_json;
  const GaussianPipelineOptions pipeline = resolve_pipeline(file, args.pipeline, pipeline_json);
  SectionReader r(file, "sample");
  std::string method = "gaussian";
  std::uint64_t n = 10000;
  std::optional<std::uint64_t> seed;
  r.read("method", method);
  r.read("n", n);
  r.read("seed", seed);
  r.finish();
  override_with(args.method, method);
  override_with(args.n, n);
  if (args.seed) seed = args.seed;
  const std::uint64_t s = require_seed(seed, "sample");
  if (n < 1) throw ConfigError("sample.n: must be at least 1");

  ordered_json snapshot;
  snapshot["experiment"] = experiment_json(config);
  snapshot["pipeline"] = pipeline_json;
  snapshot["sample"] = {{"method", method}, {"n", n}};
  RunOutputs outputs("sample", snapshot, s);

  const Distribution dist = distribution_by_method(method, config, pipeline);
  const auto records = sample(dist, s, n, outputs.run_id());
  std::ostringstream text;
  write_samples(text, records);
  outputs.set_summary({{"samples", n},
                       {"fidelity_to_source", fidelity(empirical_distribution(records), dist)}});
  outputs.add(args.common.out, text.str(), [n](std::string_view t) {
    std::istringstream in{std::string(t)};
    if (read_samples(in).size() != n) throw IoError("sample output has the wrong length");
  });
  outputs.commit();
  out << "wrote " << n << " samples to " << args.common.out << " (run " << outputs.run_id()
      << ")\n";
}

void cmd_validate(const ValidateArgs& args, std::ostream& out) {
  const ConfigFile file = load_config(args.common);
  const ExperimentConfig config = resolve_experiment(file, args.experiment);
  ordered_json pipeline_json;
  const GaussianPipelineOptions pipeline = resolve_pipeline(file, args.pipeline, pipeline_json);
  SectionReader r(file, "validate");
  std::string samples_path;
  std::string generator = "squeezed";
  std::vector<std::string> models = {"squeezed", "thermal", "coherent", "distinguishable",
                                     "uniform"};
  std::string keep;
  std::string squeezed_method = "gaussian";
  double threshold = 1e-2;
  std::uint64_t every = 1;
  std::uint64_t n = 10000;
  std::optional<std::uint64_t> seed;
  r.read("samples", samples_path);
  r.read("generator", generator);
  r.read("models", models);
  r.read("keep", keep);
  r.read("squeezed_method", squeezed_method);
  r.read("threshold", threshold);
  r.read("every", every);
  r.read("n", n);
  r.read("seed", seed);
  r.finish();
  override_with(args.samples, samples_path);
  override_with(args.generator, generator);
  override_with(args.models, models);
  override_with(args.keep, keep);
  override_with(args.squeezed_method, squeezed_method);
  override_with(args.threshold, threshold);
  override_with(args.every, every);
  override_with(args.n, n);
  if (args.seed) seed = args.seed;

  std::vector<Model> model_list;
  for (const auto& m : models) {
    try {
      model_list.push_back(model_from_name(m));
    } catch (const ArgumentError& e) {
      throw ConfigError(std::string("validate.models: ") + e.what());
    }
  }
  if (model_list.empty()) throw ConfigError("validate.models: need at least one model");
  if (keep.empty()) keep = samples_path.empty() ? generator : models.front();
  const auto keep_it = std::find(models.begin(), models.end(), keep);
  if (keep_it == models.end()) throw ConfigError("validate.keep: '" + keep + "' is not listed");
  if (every < 1) throw ConfigError("validate.every: must be at least 1");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("validate.threshold: must lie in (0, 1)");
  }
  ModelOptions mopts;
  mopts.pipeline = pipeline;
  if (squeezed_method == "gaussian") {
    mopts.squeezed_method = SqueezedMethod::kGaussian;
  } else if (squeezed_method == "permanent") {
    mopts.squeezed_method = SqueezedMethod::kPermanent;
  } else {
    throw ConfigError("validate.squeezed_method: must be 'gaussian' or 'permanent'");
  }

  ordered_json snapshot;
  snapshot["experiment"] = experiment_json(config);
  snapshot["pipeline"] = pipeline_json;
  ordered_json section = {{"models", models},       {"keep", keep},
                          {"squeezed_method", squeezed_method},
                          {"threshold", threshold}, {"every", every}};
  std::optional<std::uint64_t> run_seed;
  std::vector<SampleRecord> data;
  if (!samples_path.empty()) {
    section["samples"] = samples_path;
    std::istringstream in(read_text_file(samples_path));
    data = read_samples(in);
    if (data.empty()) throw IoError(samples_path + ": no samples");
  } else {
    run_seed = require_seed(seed, "validate");
    section["generator"] = generator;
    section["n"] = n;
    if (n < 1) throw ConfigError("validate.n: must be at least 1");
  }
  snapshot["validate"] = section;
  RunOutputs outputs("validate", snapshot, run_seed);
  if (samples_path.empty()) {
    Model gen;
    try {
      gen = model_from_name(generator);
    } catch (const ArgumentError& e) {
      throw ConfigError(std::string("validate.generator: ") + e.what());
    }
    data = sample(model_distribution(gen, config, mopts), *run_seed, n, outputs.run_id());
  }

  const BayesReport report = bayesian_comparison(data, model_list, config, mopts);
  const int keep_index = static_cast<int>(keep_it - models.begin());
  const std::size_t exclusion = samples_to_exclusion(report, keep_index, threshold);

  std::vector<std::string> header = {"samples"};
  for (const auto& m : report.models) header.push_back(m);
  CsvWriter csv(csv_manifest_comment(args.common.out, outputs.run_id()), header);
  std::size_t rows = 0;
  for (std::size_t k = 0; k < report.posterior_trace.size(); ++k) {
    if ((k + 1) % every != 0 && k + 1 != report.posterior_trace.size()) continue;
    std::vector<std::string> cells = {std::to_string(k + 1)};
    for (double p : report.posterior_trace[k]) cells.push_back(fmt(p));
    csv.add_row(std::move(cells));
    ++rows;
  }
  ordered_json final_post = ordered_json::object();
  for (std::size_t i = 0; i < report.models.size(); ++i) {
    final_post[report.models[i]] = report.posterior_trace.back()[i];
  }
  outputs.set_summary({{"samples", data.size()},
                       {"keep", keep},
                       {"samples_to_exclusion", exclusion},
                       {"final_posteriors", final_post}});
  outputs.add(args.common.out, csv.str(), csv_validator(header, rows));
  outputs.commit();

  out << "posterior trace over " << data.size() << " samples written to " << args.common.out
      << "\n";
  if (exclusion > 0) {
    out << "all models except " << keep << " stay below " << fmt(threshold) << " after "
        << exclusion << " samples\n";
  } else {
    out << "models other than " << keep << " were not excluded below " << fmt(threshold)
        << "\n";
  }
}

void cmd_graphs(const GraphsArgs& args, std::ostream& out) {
  const ConfigFile file = load_config(args.common);
  const ExperimentConfig config = resolve_experiment(file, args.experiment);
  SectionReader r(file, "graphs");
  std::string samples_path;
  std::vector<int> vertices = {4, 6};
  double threshold = 0.0;
  std::uint64_t n = 10000;
  std::optional<std::uint64_t> seed;
  r.read("samples", samples_path);
  r.read("vertices", vertices);
  r.read("threshold", threshold);
  r.read("n", n);
  r.read("seed", seed);
  r.finish();
  override_with(args.samples, samples_path);
  override_with(args.vertices, vertices);
  override_with(args.threshold, threshold);
  override_with(args.n, n);
  if (args.seed) seed = args.seed;
  const std::map<int, int> family_counts = {{4, 7}, {6, 13}};
  for (int v : vertices) {
    if (family_counts.count(v) == 0) throw ConfigError("graphs.vertices: supported sizes are 4 and 6");
  }
  if (vertices.empty()) throw ConfigError("graphs.vertices: need at least one size");
  if (threshold < 0.0) throw ConfigError("graphs.threshold: must be non-negative");

  ordered_json snapshot;
  snapshot["experiment"] = experiment_json(config);
  ordered_json section = {{"vertices", vertices}, {"threshold", threshold}};
  std::optional<std::uint64_t> run_seed;
  std::vector<SampleRecord> data;
  if (!samples_path.empty()) {
    section["samples"] = samples_path;
    std::istringstream in(read_text_file(samples_path));
    data = read_samples(in);
    if (data.empty()) throw IoError(samples_path + ": no samples");
  } else {
    run_seed = require_seed(seed, "graphs");
    if (n < 1) throw ConfigError("graphs.n: must be at least 1");
    section["n"] = n;
  }
  snapshot["graphs"] = section;
  RunOutputs outputs("graphs", snapshot, run_seed);
  const Distribution dist = full_distribution(config);
  if (samples_path.empty()) data = sample(dist, *run_seed, n, outputs.run_id());
  const double tau = threshold > 0.0 ? threshold : default_cluster_threshold(data.size());

  const std::vector<std::string> header = {"vertices", "family", "member",  "signal",
                                           "idler",    "n_o2",   "n_o4",    "n_total",
                                           "p_o2",     "p_o4",   "cluster"};
  CsvWriter csv(csv_manifest_comment(args.common.out, outputs.run_id()), header);
  std::size_t rows = 0;
  ordered_json recovered = ordered_json::object();
  for (int v : vertices) {
    const int count = family_counts.at(v);
    const auto families = make_graph_families(config, v, count);
    std::vector<FeatureVector> features;
    std::vector<int> family_of;
    for (std::size_t f = 0; f < families.size(); ++f) {
      for (const auto& m : families[f].members) {
        features.push_back(orbit_counts(data, m));
        family_of.push_back(static_cast<int>(f));
      }
    }
    const auto labels = cluster_feature_vectors(features, {tau, 0});
    std::size_t k = 0;
    for (std::size_t f = 0; f < families.size(); ++f) {
      for (std::size_t j = 0; j < families[f].members.size(); ++j, ++k) {
        const auto& m = families[f].members[j];
        const auto p = theoretical_orbit_probabilities(m, dist);
        csv.add_row({std::to_string(v), std::to_string(f), std::to_string(j),
                     join_ints(m.signal_vertices), join_ints(m.idler_vertices),
                     std::to_string(features[k].n_o2), std::to_string(features[k].n_o4),
                     std::to_string(features[k].total()), fmt(p.p_o2), fmt(p.p_o4),
                     std::to_string(labels[k])});
        ++rows;
      }
    }
    const int rec = recovered_families(labels, family_of);
    recovered[std::to_string(v)] = {{"families", count}, {"recovered", rec}};
    out << v << "-vertex graphs: " << rec << " of " << count
        << " families recovered as separate clusters\n";
  }
  outputs.set_summary({{"samples", data.size()}, {"threshold", tau}, {"recovered", recovered}});
  outputs.add(args.common.out, csv.str(), csv_validator(header, rows));
  outputs.commit();
  out << "feature vectors written to " << args.common.out << "\n";
}

void cmd_compile(const CompileArgs& args, std::ostream& out) {
  const ConfigFile file = load_config(args.common);
  SectionReader r(file, "compile");
  int q = 2;
  int m = 3;
  std::string unitary_path;
  std::optional<std::uint64_t> seed;
  r.read("q", q);
  r.read("m", m);
  r.read("unitary", unitary_path);
  r.read("seed", seed);
  r.finish();
  override_with(args.q, q);
  override_with(args.m, m);
  override_with(args.unitary, unitary_path);
  if (args.seed) seed = args.seed;
  if (q < 1 || m < 1) throw ConfigError("compile: q and m must be positive");
  if (q * m > 64) throw ConfigError("compile: at most 64 modes");
  const ModeGrid grid{q, m};

  ordered_json snapshot;
  ordered_json section = {{"q", q}, {"m", m}};
  std::optional<std::uint64_t> run_seed;
  CMatrix u;
  if (!unitary_path.empty()) {
    section["unitary"] = unitary_path;
    u = matrix_from_json(read_text_file(unitary_path));
  } else {
    run_seed = require_seed(seed, "compile");
    u = haar_unitary(grid.n(), *run_seed);
  }
  snapshot["compile"] = section;
  RunOutputs outputs("compile", snapshot, run_seed);

  const CompiledCircuit circuit = compile(u, grid);
  const double error = (reconstruct(circuit) - u).cwiseAbs().maxCoeff();
  ordered_json doc;
  doc["manifest"] = manifest_path_for(args.common.out).filename().string();
  doc["run_id"] = outputs.run_id();
  const ordered_json body = ordered_json::parse(circuit_to_text(circuit));
  for (const auto& [key, value] : body.items()) {
    doc[key] = value;
  }
  outputs.set_summary({{"stages", circuit.stages.size()}, {"reconstruction_error", error}});
  outputs.add(args.common.out, doc.dump(1) + "\n", [u](std::string_view t) {
    const CompiledCircuit back = circuit_from_text(t);
    if ((reconstruct(back) - u).cwiseAbs().maxCoeff() > 1e-8) {
      throw IoError("compiled circuit does not reproduce the target");
    }
  });
  outputs.commit();
  out << "compiled " << grid.n() << "-mode unitary into " << circuit.stages.size()
      << " stages, reconstruction error " << fmt(error) << "\n";
  out << "program written to " << args.common.out << "\n";
}

void cmd_hom(const HomArgs& args, std::ostream& out) {
  const ConfigFile file = load_config(args.common);
  SectionReader r(file, "hom");
  double xi_min = 0.07, xi_max = 0.35, xi_point = 0.17;
  int steps = 29;
  HomSimConfig base;
  std::string reference = "half-loss";
  std::string thermal = "source";
  r.read("xi_min", xi_min);
  r.read("xi_max", xi_max);
  r.read("steps", steps);
  r.read("xi_point", xi_point);
  r.read("loss_db_signal", base.loss_db_signal);
  r.read("loss_db_idler", base.loss_db_idler);
  r.read("thermal_coeff", base.thermal_coeff);
  r.read("reference", reference);
  r.read("thermal_injection", thermal);
  r.finish();
  override_with(args.xi_min, xi_min);
  override_with(args.xi_max, xi_max);
  override_with(args.steps, steps);
  override_with(args.xi_point, xi_point);
  override_with(args.loss_db_signal, base.loss_db_signal);
  override_with(args.loss_db_idler, base.loss_db_idler);
  override_with(args.thermal_coeff, base.thermal_coeff);
  override_with(args.reference, reference);
  override_with(args.thermal_injection, thermal);
  base.reference = parse_hom_reference(reference);
  base.thermal = parse_thermal_injection(thermal);
  if (steps < 1) throw ConfigError("hom.steps: must be at least 1");
  if (!(xi_min > 0.0) || xi_max < xi_min) {
    throw ConfigError("hom: need 0 < xi_min <= xi_max");
  }
  if (base.loss_db_signal < 0.0 || base.loss_db_idler < 0.0 || base.thermal_coeff < 0.0) {
    throw ConfigError("hom: losses and thermal_coeff must be non-negative");
  }

  ordered_json snapshot;
  snapshot["hom"] = {{"xi_min", xi_min},
                     {"xi_max", xi_max},
                     {"steps", steps},
                     {"xi_point", xi_point},
                     {"loss_db_signal", base.loss_db_signal},
                     {"loss_db_idler", base.loss_db_idler},
                     {"thermal_coeff", base.thermal_coeff},
                     {"reference", reference},
                     {"thermal_injection", thermal}};
  RunOutputs outputs("hom", snapshot, std::nullopt);
  const std::vector<std::string> header = {"xi", "visibility", "n0", "n_td"};
  CsvWriter csv(csv_manifest_comment(args.common.out, outputs.run_id()), header);
  for (int i = 0; i < steps; ++i) {
    HomSimConfig c = base;
    c.xi_abs = steps == 1 ? xi_min : xi_min + (xi_max - xi_min) * i / (steps - 1);
    const HomResult h = hom_simulate(c);
    csv.add_row({fmt(c.xi_abs), fmt(h.visibility), fmt(h.n0), fmt(h.n_td)});
  }
  HomSimConfig point = base;
  point.xi_abs = xi_point;
  const double v = hom_visibility(point);
  outputs.set_summary({{"xi_point", xi_point}, {"visibility_at_point", v}});
  outputs.add(args.common.out, csv.str(), csv_validator(header, steps));
  outputs.commit();
  out << "V(xi=" << fmt(xi_point) << ") = " << fmt(v) << "\n";
  out << steps << "-point sweep written to " << args.common.out << "\n";
}

void cmd_franson(const FransonArgs& args, std::ostream& out) {
  const ConfigFile file = load_config(args.common);
  const ExperimentConfig config = resolve_experiment(file, args.experiment);
  SectionReader r(file, "franson");
  double x_min = 0.0, x_max = 2.0 * std::numbers::pi;
  int points = 64;
  r.read("x_min", x_min);
  r.read("x_max", x_max);
  r.read("points", points);
  r.finish();
  override_with(args.x_min, x_min);
  override_with(args.x_max, x_max);
  override_with(args.points, points);
  if (points < 2) throw ConfigError("franson.points: must be at least 2");
  if (!(x_max > x_min)) throw ConfigError("franson: need x_min < x_max");

  ordered_json snapshot;
  snapshot["experiment"] = experiment_json(config);
  snapshot["franson"] = {{"x_min", x_min}, {"x_max", x_max}, {"points", points}};
  RunOutputs outputs("franson", snapshot, std::nullopt);
  const std::array<std::array<int, 2>, 6> combos = {
      {{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2}}};
  std::vector<std::string> header = {"x"};
  for (const auto& jk : combos) {
    header.push_back("fringe_" + std::to_string(jk[0]) + std::to_string(jk[1]));
  }
  for (const auto& jk : combos) {
    header.push_back("coincidence_" + std::to_string(jk[0]) + std::to_string(jk[1]));
  }
  CsvWriter csv(csv_manifest_comment(args.common.out, outputs.run_id()), header);
  for (int i = 0; i < points; ++i) {
    ExperimentConfig c = config;
    c.x = x_min + (x_max - x_min) * i / (points - 1);
    std::vector<std::string> cells = {fmt(c.x)};
    for (const auto& jk : combos) cells.push_back(fmt(franson_probability(jk[0], jk[1], c.x, c.delta)));
    for (const auto& jk : combos) {
      cells.push_back(fmt(coincidence_probability(c, 3 + jk[0], 3 + jk[1])));
    }
    csv.add_row(std::move(cells));
  }
  ordered_json offsets = ordered_json::object();
  out << "fringe offsets at delta = " << fmt(config.delta) << ":";
  for (const auto& jk : combos) {
    const double o = franson_offset(jk[0], jk[1], config.delta);
    offsets[std::to_string(jk[0]) + std::to_string(jk[1])] = o;
    out << " (" << jk[0] << "," << jk[1] << ") " << fmt(o);
  }
  out << "\n";
  outputs.set_summary({{"offsets", offsets}});
  outputs.add(args.common.out, csv.str(), csv_validator(header, points));
  outputs.commit();
  out << points << "-point scan written to " << args.common.out << "\n";
}

}  // namespace tfgbs::cli
