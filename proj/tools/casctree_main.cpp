#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>

#include "casctree/cascade.hpp"
#include "casctree/iogen.hpp"
#include "casctree/symcore.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace casctree;

namespace {

struct SourceOpts {
  std::string input;
  std::string synthetic;
  bool normalize = false;
};

void add_source_opts(CLI::App* cmd, SourceOpts& s, bool need_normalize = true) {
  auto* in = cmd->add_option("--input", s.input, "correlation matrix CSV");
  auto* syn = cmd->add_option("--synthetic", s.synthetic,
                              "synthetic instance as n,density,seed");
  in->excludes(syn);
  if (need_normalize)
    cmd->add_flag("--normalize", s.normalize,
                  "rescale a covariance input to unit diagonal");
}

SyntheticSpec parse_synthetic(const std::string& s) {
  SyntheticSpec spec;
  char extra;
  unsigned long long seed = 0;
  if (std::sscanf(s.c_str(), "%d,%lf,%llu%c", &spec.n, &spec.density, &seed,
                  &extra) != 3)
    throw std::invalid_argument("SyntheticSpec: expected n,density,seed, got '" +
                                s + "'");
  spec.seed = seed;
  return spec;
}

CorrMatrix load_source(const SourceOpts& s, json* meta) {
  if (s.input.empty() == s.synthetic.empty())
    throw CLI::ValidationError("input",
                               "exactly one of --input/--synthetic required");
  if (!s.input.empty()) {
    if (meta) (*meta)["input"] = s.input;
    return read_matrix(s.input, s.normalize);
  }
  SyntheticSpec spec = parse_synthetic(s.synthetic);
  if (meta) {
    (*meta)["synthetic"] = {
        {"n", spec.n}, {"density", spec.density}, {"seed", spec.seed}};
    (*meta)["generator"] = generator_id();
  }
  return generate_synthetic(spec);
}

void warn_if_large(int n) {
  if (n > 2000)
    std::fprintf(stderr, "warning: n = %d, each stage costs O(n^3)\n", n);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << text;
}

int cmd_approximate(const SourceOpts& src, const std::string& policy_s,
                    const std::string& fact_s, int stages,
                    std::optional<double> threshold, const std::string& out_dir,
                    bool emit_dot, bool emit_sparsity, bool emit_stage) {
  auto policy = parse_policy(policy_s);
  if (!policy) throw CLI::ValidationError("--policy", "unknown: " + policy_s);
  auto fact = parse_factorization(fact_s);
  if (!fact)
    throw CLI::ValidationError("--factorization", "unknown: " + fact_s);

  json meta;
  CorrMatrix source = load_source(src, &meta);
  warn_if_large(source.n());
  fs::create_directories(out_dir);
  fs::path dir(out_dir);

  CascadeModel model =
      run_cascade(source, *policy, *fact, stages, threshold);

  write_trace(model.kl_trace, (dir / "kl_trace.csv").string());
  write_matrix(model.model_cov, (dir / "model_cov.csv").string());

  meta["n"] = model.n;
  meta["policy"] = policy_name(model.policy);
  meta["factorization"] = factorization_name(model.factorization);
  meta["stages_run"] = model.stages.size();
  meta["kl_trace"] = model.kl_trace;
  if (model.kl_trace.size() > 2) {
    json rel = json::array();
    double kl1 = model.kl_trace[1];
    for (size_t i = 2; i < model.kl_trace.size(); ++i)
      rel.push_back(kl1 > 0 ? 1.0 - model.kl_trace[i] / kl1 : 0.0);
    meta["kl_drop_vs_stage1"] = rel;
  }
  write_text(dir / "summary.json", meta.dump(2) + "\n");

  if (emit_sparsity)
    sparsity_dump(source, (dir / "sigma_inv.csv").string());
  Matrix partial = Matrix::Identity(model.n, model.n);
  for (const auto& st : model.stages) {
    const int i = st.stage_index;
    const std::string tag = std::to_string(i);
    if (emit_stage) {
      write_matrix(st.factor, (dir / ("L_" + tag + ".csv")).string());
      write_matrix(st.perm.matrix(), (dir / ("P_" + tag + ".csv")).string());
      write_matrix(st.inverse_sparse, (dir / ("Q_" + tag + ".csv")).string());
    }
    if (emit_dot)
      write_text(dir / ("stage_" + tag + ".dot"),
                 to_factor_graph(st).to_dot());
    if (emit_sparsity) {
      partial = partial * st.transform;
      Matrix model_i = partial * partial.transpose();
      sparsity_dump(0.5 * (model_i + model_i.transpose()),
                    (dir / ("model_inv_" + tag + ".csv")).string());
      sparsity_dump(st.tree.covariance,
                    (dir / ("tree_inv_" + tag + ".csv")).string());
    }
  }

  std::printf("final KL: %.9g\n", model.kl_trace.back());
  return 0;
}

int cmd_compare(const SourceOpts& src, int stages, const std::string& out_dir) {
  CorrMatrix source = load_source(src, nullptr);
  warn_if_large(source.n());
  fs::create_directories(out_dir);
  auto traces = compare_policies(source, stages);
  std::string csv = "policy,factorization,stage,kl_nats\n";
  char buf[40];
  for (const auto& t : traces) {
    for (size_t i = 0; i < t.kl_trace.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", t.kl_trace[i]);
      csv += std::string(policy_name(t.policy)) + "," +
             factorization_name(t.factorization) + "," + std::to_string(i) +
             "," + buf + "\n";
    }
    if (!t.error.empty())
      std::fprintf(stderr, "warning: %s/%s failed: %s\n",
                   policy_name(t.policy), factorization_name(t.factorization),
                   t.error.c_str());
  }
  write_text(fs::path(out_dir) / "compare.csv", csv);
  std::printf("wrote %s\n", (fs::path(out_dir) / "compare.csv").c_str());
  return 0;
}

int cmd_generate(const std::string& synthetic, const std::string& out_dir) {
  SyntheticSpec spec = parse_synthetic(synthetic);
  CorrMatrix m = generate_synthetic(spec);
  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  write_matrix(m, (dir / "matrix.csv").string());
  json meta = {{"n", spec.n},
               {"density", spec.density},
               {"seed", spec.seed},
               {"generator", generator_id()}};
  write_text(dir / "metadata.json", meta.dump(2) + "\n");
  std::printf("wrote %s\n", (dir / "matrix.csv").c_str());
  return 0;
}

int cmd_validate(const std::string& input, bool normalize) {
  CorrMatrix m = read_matrix(input, normalize);  // throws with diagnostics
  const Matrix& mat = m.mat();
  double trace = mat.trace();
  double max_diag_dev = (mat.diagonal().array() - 1.0).abs().maxCoeff();
  std::printf("n: %d\n", m.n());
  std::printf("symmetric: yes\nunit_diagonal: yes\npositive_definite: yes\n");
  std::printf("trace: %.17g (deviation from n: %.3g)\n", trace,
              std::abs(trace - m.n()));
  std::printf("max_diag_deviation: %.3g\n", max_diag_dev);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cascade tree decomposition of correlation matrices"};
  app.require_subcommand(1);

  SourceOpts approx_src;
  std::string policy = "chow-liu";
  std::string fact = "chol-ll";
  int stages = 3;
  double threshold = -1.0;
  std::string out_dir = ".";
  bool emit_dot = false, emit_sparsity = false, emit_stage = false;

  auto* approx =
      app.add_subcommand("approximate", "run the cascade and write artifacts");
  add_source_opts(approx, approx_src);
  approx->add_option("--policy", policy, "chow-liu|star-fixed|star-sweep");
  approx->add_option("--factorization", fact, "chol-ll|chol-uu|sym-sqrt");
  approx->add_option("--stages", stages, "maximum cascade stages")
      ->check(CLI::PositiveNumber);
  auto* thr = approx->add_option("--kl-threshold", threshold,
                                 "stop once the stage KL falls below this");
  approx->add_option("--out", out_dir, "output directory");
  approx->add_flag("--emit-dot", emit_dot, "write per-stage factor graphs");
  approx->add_flag("--emit-sparsity", emit_sparsity,
                   "write |inverse| dumps of source, models and trees");
  approx->add_flag("--emit-stage-matrices", emit_stage,
                   "write per-stage L, P, Q matrices");

  SourceOpts cmp_src;
  int cmp_stages = 3;
  std::string cmp_out = ".";
  auto* cmp = app.add_subcommand(
      "compare", "trace every policy/factorization combination");
  add_source_opts(cmp, cmp_src);
  cmp->add_option("--stages", cmp_stages, "maximum cascade stages")
      ->check(CLI::PositiveNumber);
  cmp->add_option("--out", cmp_out, "output directory");

  std::string gen_spec;
  std::string gen_out = ".";
  auto* gen = app.add_subcommand("generate", "write a synthetic instance");
  gen->add_option("--synthetic", gen_spec, "n,density,seed")->required();
  gen->add_option("--out", gen_out, "output directory");

  std::string val_input;
  bool val_normalize = false;
  auto* val =
      app.add_subcommand("validate", "check correlation-matrix invariants");
  val->add_option("--input", val_input, "matrix CSV")->required();
  val->add_flag("--normalize", val_normalize,
                "rescale to unit diagonal before validating");

  CLI11_PARSE(app, argc, argv);

  try {
    if (approx->parsed())
      return cmd_approximate(
          approx_src, policy, fact, stages,
          thr->count() ? std::optional<double>(threshold) : std::nullopt,
          out_dir, emit_dot, emit_sparsity, emit_stage);
    if (cmp->parsed()) return cmd_compare(cmp_src, cmp_stages, cmp_out);
    if (gen->parsed()) return cmd_generate(gen_spec, gen_out);
    if (val->parsed()) return cmd_validate(val_input, val_normalize);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
