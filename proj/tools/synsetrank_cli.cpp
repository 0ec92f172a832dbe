// Command-line front end over the synsetrank C API: rank, grid, compare, gen.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synsetrank.h"

namespace fs = std::filesystem;

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int report_failure(srk_status status) {
  std::cerr << "error: " << srk_last_error() << "\n";
  return static_cast<int>(status);
}

int write_text_file(const std::string& path, const char* body) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 1;
  }
  out << body;
  if (!out) {
    std::cerr << "error: failed writing '" << path << "'\n";
    return 1;
  }
  return 0;
}

int jobs_or_env(const CLI::Option* jobs_opt, int jobs_flag) {
  if (jobs_opt->count() > 0) return jobs_flag;
  if (const char* env = std::getenv("SYNSETRANK_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 0; // library default: available parallelism
}

struct GridFlags {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<int32_t> steps;

  // Returns nullptr (library default grid) when nothing was overridden.
  const srk_grid_spec* resolve(srk_grid_spec& storage) {
    if (alphas.empty() && betas.empty() && steps.empty()) return nullptr;
    if (alphas.empty()) alphas = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    if (betas.empty()) betas = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    if (steps.empty()) steps = {1, 2, 3, 4, 5};
    storage.alphas = alphas.data();
    storage.alpha_count = static_cast<int64_t>(alphas.size());
    storage.betas = betas.data();
    storage.beta_count = static_cast<int64_t>(betas.size());
    storage.steps = steps.data();
    storage.step_count = static_cast<int64_t>(steps.size());
    return &storage;
  }
};

void add_grid_flags(CLI::App* cmd, GridFlags& flags) {
  cmd->add_option("--alphas", flags.alphas, "Comma-separated taxation values in [0,1]")
      ->delimiter(',');
  cmd->add_option("--betas", flags.betas, "Comma-separated self-link values in [0,1]")
      ->delimiter(',');
  cmd->add_option("--steps-list", flags.steps, "Comma-separated walk lengths (>= 1)")
      ->delimiter(',');
}

// Sorted subdirectories that look like relation datasets.
std::vector<std::string> dataset_subdirs(const std::string& dir) {
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "edges.tsv"))
      out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct DatasetHandles {
  std::vector<srk_dataset*> handles;
  ~DatasetHandles() {
    for (srk_dataset* d : handles) srk_dataset_free(d);
  }
};

int open_datasets(const std::vector<std::string>& dirs, bool reverse_augment,
                  DatasetHandles& out) {
  for (const std::string& d : dirs) {
    srk_dataset* handle = nullptr;
    if (srk_status s = srk_dataset_open(d.c_str(), reverse_augment ? 1 : 0, &handle);
        s != SRK_OK)
      return report_failure(s);
    out.handles.push_back(handle);
  }
  return 0;
}

int method_from_name(const std::string& name, srk_method& out) {
  if (name == "frequency") out = SRK_METHOD_FREQUENCY;
  else if (name == "moro") out = SRK_METHOD_MORO;
  else if (name == "pagerank") out = SRK_METHOD_PAGERANK;
  else if (name == "synsetrank") out = SRK_METHOD_SYNSETRANK;
  else {
    std::cerr << "error: unknown method '" << name << "'\n";
    return 1;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Node relevance ranking on edge-labeled directed graphs"};
  app.require_subcommand(1);

  // ---- rank -------------------------------------------------------------
  auto* rank = app.add_subcommand("rank", "Rank all nodes and write a TSV");
  std::string rank_method = "synsetrank";
  std::string rank_edges, rank_freq, rank_weights, rank_out;
  int64_t rank_nodes = -1, rank_labels = -1;
  double rank_alpha = 0.0, rank_beta = 0.0;
  int32_t rank_steps = 1, rank_top_k = 50;
  bool rank_no_augment = false;
  rank->add_option("--method", rank_method,
                   "frequency | moro | pagerank | synsetrank")
      ->capture_default_str();
  rank->add_option("--edges", rank_edges, "Edge list TSV (src<TAB>dst<TAB>label)")
      ->required();
  rank->add_option("--freq", rank_freq, "Frequency TSV (node<TAB>value)")->required();
  rank->add_option("--nodes", rank_nodes, "Node count (default: edge-list header)");
  rank->add_option("--labels", rank_labels, "Label count (default: edge-list header)");
  rank->add_option("--weights", rank_weights, "Label weights TSV (label<TAB>weight)");
  auto* alpha_opt = rank->add_option("--alpha", rank_alpha, "Taxation in [0,1]");
  auto* beta_opt = rank->add_option("--beta", rank_beta, "Self-link probability in [0,1]");
  auto* steps_opt = rank->add_option("--steps", rank_steps, "Walk length (>= 1)");
  auto* topk_opt = rank->add_option("--top-k", rank_top_k, "Moro seed count");
  rank->add_flag("--no-reverse-augment", rank_no_augment,
                 "Do not add reversed edge labels");
  rank->add_option("--out", rank_out, "Output path (default: stdout)");

  // ---- grid -------------------------------------------------------------
  auto* grid = app.add_subcommand("grid", "Exhaustive (alpha, beta, steps) search");
  std::string grid_method = "synsetrank";
  std::string grid_data, grid_common, grid_csv;
  std::string grid_edges, grid_freq, grid_gold_valid, grid_gold_test;
  int64_t grid_nodes = -1, grid_labels = -1;
  bool grid_no_augment = false;
  int32_t grid_jobs = 0;
  GridFlags grid_flags;
  grid->add_option("--method", grid_method, "pagerank | synsetrank")
      ->capture_default_str();
  grid->add_option("--data", grid_data, "Relation dataset directory");
  grid->add_option("--common", grid_common,
                   "Directory of relation subdirectories; one shared optimum");
  grid->add_option("--edges", grid_edges, "Edge list TSV (with --freq/--gold-*)");
  grid->add_option("--freq", grid_freq, "Frequency TSV");
  grid->add_option("--gold-valid", grid_gold_valid, "Validation gold TSV (node<TAB>0|1)");
  grid->add_option("--gold-test", grid_gold_test, "Test gold TSV (node<TAB>0|1)");
  grid->add_option("--nodes", grid_nodes, "Node count (default: edge-list header)");
  grid->add_option("--labels", grid_labels, "Label count (default: edge-list header)");
  add_grid_flags(grid, grid_flags);
  grid->add_flag("--no-reverse-augment", grid_no_augment,
                 "Do not add reversed edge labels");
  auto* grid_jobs_opt =
      grid->add_option("--jobs", grid_jobs, "Worker threads (default: all cores)");
  grid->add_option("--csv", grid_csv, "Write the per-configuration table as CSV");

  // ---- compare ----------------------------------------------------------
  auto* compare = app.add_subcommand(
      "compare", "Six-method AUC report over a benchmark directory");
  std::string compare_data, compare_csv;
  std::vector<int32_t> compare_moro_ks;
  bool compare_no_augment = false;
  int32_t compare_jobs = 0;
  GridFlags compare_flags;
  compare->add_option("--data", compare_data, "Directory of relation subdirectories")
      ->required();
  compare->add_option("--moro-ks", compare_moro_ks,
                      "Comma-separated Moro seed counts to validate")
      ->delimiter(',');
  add_grid_flags(compare, compare_flags);
  compare->add_flag("--no-reverse-augment", compare_no_augment,
                    "Do not add reversed edge labels");
  auto* compare_jobs_opt =
      compare->add_option("--jobs", compare_jobs, "Worker threads (default: all cores)");
  compare->add_option("--csv", compare_csv, "Also write the report as CSV");

  // ---- gen --------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate planted-relevance benchmark datasets");
  srk_planted_spec gen_spec;
  srk_planted_spec_defaults(&gen_spec);
  std::string gen_out;
  int32_t gen_relations = 1;
  uint64_t gen_seed = gen_spec.rng_seed;
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--relations", gen_relations, "Number of relation datasets")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Master RNG seed")->capture_default_str();
  gen->add_option("--nodes", gen_spec.node_count, "Nodes per relation")
      ->capture_default_str();
  gen->add_option("--labels", gen_spec.label_count, "Edge labels before augmentation")
      ->capture_default_str();
  gen->add_option("--cluster-size", gen_spec.cluster_size, "Relevant cluster size")
      ->capture_default_str();
  gen->add_option("--seed-mass", gen_spec.seed_frequency_mass,
                  "Frequency mass on seed hubs")
      ->capture_default_str();
  gen->add_option("--noise-mass", gen_spec.noise_frequency_mass,
                  "Frequency mass on noise nodes")
      ->capture_default_str();
  gen->add_option("--degree-skew", gen_spec.degree_skew,
                  "Power-law exponent of background out-degrees")
      ->capture_default_str();
  gen->add_option("--neg-per-pos", gen_spec.negatives_per_positive,
                  "Gold negatives per positive")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  // ---- rank -------------------------------------------------------------
  if (rank->parsed()) {
    srk_method method;
    if (method_from_name(rank_method, method) != 0) return 1;

    bool walk_method = method == SRK_METHOD_PAGERANK || method == SRK_METHOD_SYNSETRANK;
    if (!walk_method && (alpha_opt->count() || beta_opt->count() || steps_opt->count()))
      std::cerr << "warning: --alpha/--beta/--steps are ignored for method '"
                << rank_method << "'\n";
    if (method != SRK_METHOD_MORO && topk_opt->count())
      std::cerr << "warning: --top-k is ignored for method '" << rank_method << "'\n";

    srk_graph* graph = nullptr;
    if (srk_status s = srk_graph_load(rank_edges.c_str(), rank_nodes, rank_labels, &graph);
        s != SRK_OK)
      return report_failure(s);
    std::unique_ptr<srk_graph, decltype(&srk_graph_free)> graph_guard(graph,
                                                                      &srk_graph_free);
    if (!rank_no_augment) {
      srk_graph* augmented = nullptr;
      if (srk_status s = srk_graph_augment_reverse(graph, &augmented); s != SRK_OK)
        return report_failure(s);
      graph_guard.reset(augmented);
      graph = augmented;
    }

    int64_t n = srk_graph_node_count(graph);
    int64_t labels = srk_graph_label_count(graph);
    std::vector<double> freq(static_cast<std::size_t>(n), 0.0);
    if (srk_status s = srk_load_frequencies(rank_freq.c_str(), n, freq.data());
        s != SRK_OK)
      return report_failure(s);

    std::vector<double> weights;
    const double* weights_ptr = nullptr;
    if (!rank_weights.empty()) {
      weights.assign(static_cast<std::size_t>(labels), 1.0);
      // When reverse labels were added, the weights file addresses the
      // original labels; reversed labels inherit their forward weight.
      int64_t file_labels = rank_no_augment ? labels : labels / 2;
      if (srk_status s =
              srk_load_label_weights(rank_weights.c_str(), file_labels, weights.data());
          s != SRK_OK)
        return report_failure(s);
      if (!rank_no_augment)
        for (int64_t l = 0; l < file_labels; ++l)
          weights[static_cast<std::size_t>(file_labels + l)] =
              weights[static_cast<std::size_t>(l)];
      weights_ptr = weights.data();
    }

    srk_rank_params params{rank_alpha, rank_beta, rank_steps, rank_top_k};
    srk_ranking* ranking = nullptr;
    if (srk_status s = srk_rank(graph, freq.data(), weights_ptr, method, &params, &ranking);
        s != SRK_OK)
      return report_failure(s);
    std::unique_ptr<srk_ranking, decltype(&srk_ranking_free)> ranking_guard(
        ranking, &srk_ranking_free);

    const char* tsv = srk_ranking_tsv(ranking);
    if (rank_out.empty()) {
      std::cout << tsv;
      return 0;
    }
    return write_text_file(rank_out, tsv);
  }

  // ---- grid -------------------------------------------------------------
  if (grid->parsed()) {
    srk_method method;
    if (method_from_name(grid_method, method) != 0) return 1;
    if (method != SRK_METHOD_PAGERANK && method != SRK_METHOD_SYNSETRANK) {
      std::cerr << "error: grid search applies to pagerank or synsetrank\n";
      return 1;
    }
    srk_grid_spec spec_storage{};
    const srk_grid_spec* spec = grid_flags.resolve(spec_storage);
    int jobs = jobs_or_env(grid_jobs_opt, grid_jobs);
    bool reverse_augment = !grid_no_augment;

    bool common_mode = !grid_common.empty();
    bool dir_mode = !grid_data.empty();
    bool file_mode = !grid_edges.empty();
    if (static_cast<int>(common_mode) + static_cast<int>(dir_mode) +
            static_cast<int>(file_mode) != 1) {
      std::cerr << "error: give exactly one of --data, --common, or --edges with "
                   "--freq/--gold-valid/--gold-test\n";
      return 1;
    }

    srk_grid_result* result = nullptr;
    DatasetHandles datasets;
    if (common_mode) {
      std::vector<std::string> dirs = dataset_subdirs(grid_common);
      if (dirs.empty()) {
        std::cerr << "error: no relation datasets found in '" << grid_common << "'\n";
        return 1;
      }
      if (int rc = open_datasets(dirs, reverse_augment, datasets); rc != 0) return rc;
      if (srk_status s = srk_grid_search_common(
              datasets.handles.data(), static_cast<int64_t>(datasets.handles.size()),
              method, spec, jobs, &result);
          s != SRK_OK)
        return report_failure(s);
    } else {
      srk_dataset* ds = nullptr;
      srk_status s;
      if (dir_mode) {
        s = srk_dataset_open(grid_data.c_str(), reverse_augment ? 1 : 0, &ds);
      } else {
        if (grid_freq.empty() || grid_gold_valid.empty() || grid_gold_test.empty()) {
          std::cerr << "error: --edges needs --freq, --gold-valid and --gold-test\n";
          return 1;
        }
        s = srk_dataset_open_files(grid_edges.c_str(), grid_freq.c_str(),
                                   grid_gold_valid.c_str(), grid_gold_test.c_str(),
                                   grid_nodes, grid_labels, reverse_augment ? 1 : 0,
                                   "dataset", &ds);
      }
      if (s != SRK_OK) return report_failure(s);
      datasets.handles.push_back(ds);
      if (srk_status g = srk_grid_search(ds, method, spec, jobs, &result); g != SRK_OK)
        return report_failure(g);
    }
    std::unique_ptr<srk_grid_result, decltype(&srk_grid_result_free)> result_guard(
        result, &srk_grid_result_free);

    double alpha = 0, beta = 0, best_auc = 0;
    int32_t steps = 0;
    srk_grid_result_best(result, &alpha, &beta, &steps, &best_auc);
    std::cout << "best\talpha=" << fmt12(alpha) << "\tbeta=" << fmt12(beta)
              << "\tsteps=" << steps << '\t'
              << (common_mode ? "mean_validation_auc=" : "validation_auc=")
              << fmt12(best_auc) << '\n';
    int64_t relations = srk_grid_result_relation_count(result);
    for (int64_t i = 0; i < relations; ++i)
      std::cout << srk_grid_result_relation_name(result, i)
                << "\ttest_auc=" << fmt12(srk_grid_result_relation_test_auc(result, i))
                << '\n';
    if (common_mode)
      std::cout << "mean\ttest_auc=" << fmt12(srk_grid_result_mean_test_auc(result))
                << '\n';

    if (!grid_csv.empty())
      return write_text_file(grid_csv, srk_grid_result_csv(result));
    return 0;
  }

  // ---- compare ----------------------------------------------------------
  if (compare->parsed()) {
    std::vector<std::string> dirs = dataset_subdirs(compare_data);
    if (dirs.empty()) {
      std::cerr << "error: no relation datasets found in '" << compare_data << "'\n";
      return 1;
    }
    DatasetHandles datasets;
    if (int rc = open_datasets(dirs, !compare_no_augment, datasets); rc != 0) return rc;

    srk_grid_spec spec_storage{};
    const srk_grid_spec* spec = compare_flags.resolve(spec_storage);
    int jobs = jobs_or_env(compare_jobs_opt, compare_jobs);

    srk_report* report = nullptr;
    if (srk_status s = srk_compare(
            datasets.handles.data(), static_cast<int64_t>(datasets.handles.size()), spec,
            compare_moro_ks.empty() ? nullptr : compare_moro_ks.data(),
            static_cast<int64_t>(compare_moro_ks.size()), jobs, &report);
        s != SRK_OK)
      return report_failure(s);
    std::unique_ptr<srk_report, decltype(&srk_report_free)> report_guard(report,
                                                                         &srk_report_free);

    std::cout << srk_report_text(report);
    if (!compare_csv.empty())
      return write_text_file(compare_csv, srk_report_csv(report));
    return 0;
  }

  // ---- gen --------------------------------------------------------------
  if (gen->parsed()) {
    if (gen_relations < 1) {
      std::cerr << "error: --relations must be at least 1\n";
      return 1;
    }
    gen_spec.rng_seed = gen_seed;
    if (srk_status s = srk_generate_benchmark(&gen_spec, gen_relations, gen_out.c_str());
        s != SRK_OK)
      return report_failure(s);
    std::cout << "wrote " << gen_relations << " relation dataset"
              << (gen_relations == 1 ? "" : "s") << " under " << gen_out << '\n';
    return 0;
  }

  return 0;
}
