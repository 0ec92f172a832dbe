#include "synsetrank.h"

#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "synsetrank/eval.hpp"
#include "synsetrank/graph.hpp"
#include "synsetrank/rankers.hpp"
#include "synsetrank/synthbench.hpp"

using namespace synsetrank;

namespace {

thread_local std::string g_last_error;

srk_status status_of(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::io: return SRK_ERROR_IO;
    case ErrorKind::parse: return SRK_ERROR_PARSE;
    case ErrorKind::invalid: return SRK_ERROR_INVALID_ARGUMENT;
    case ErrorKind::domain: return SRK_ERROR_DOMAIN;
  }
  return SRK_ERROR_INTERNAL;
}

srk_status fail(srk_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
srk_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SRK_OK;
  } catch (const Error& e) {
    return fail(status_of(e), e.what());
  } catch (const std::exception& e) {
    return fail(SRK_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(SRK_ERROR_INTERNAL, "unknown error");
  }
}

GridSpec grid_spec_of(const srk_grid_spec* spec) {
  if (spec == nullptr) return GridSpec::defaults();
  if (spec->alphas == nullptr || spec->betas == nullptr || spec->steps == nullptr ||
      spec->alpha_count < 1 || spec->beta_count < 1 || spec->step_count < 1)
    throw Error::invalid("grid spec arrays must be non-null and non-empty");
  GridSpec out;
  out.alphas.assign(spec->alphas, spec->alphas + spec->alpha_count);
  out.betas.assign(spec->betas, spec->betas + spec->beta_count);
  out.steps_list.assign(spec->steps, spec->steps + spec->step_count);
  out.validate();
  return out;
}

constexpr int64_t kMaxCount = 0xFFFFFFFFLL;

PlantedSpec planted_spec_of(const srk_planted_spec* spec) {
  if (spec == nullptr) throw Error::invalid("planted spec must not be null");
  if (spec->node_count < 1 || spec->label_count < 1 || spec->cluster_size < 1 ||
      spec->node_count > kMaxCount || spec->label_count > kMaxCount ||
      spec->cluster_size > kMaxCount)
    throw Error::invalid("planted spec counts out of range");
  PlantedSpec out;
  out.node_count = static_cast<std::uint32_t>(spec->node_count);
  out.label_count = static_cast<std::uint32_t>(spec->label_count);
  out.relevant_cluster_size = static_cast<std::uint32_t>(spec->cluster_size);
  out.seed_frequency_mass = spec->seed_frequency_mass;
  out.noise_frequency_mass = spec->noise_frequency_mass;
  out.degree_skew = spec->degree_skew;
  out.negatives_per_positive = spec->negatives_per_positive;
  out.rng_seed = spec->rng_seed;
  out.validate();
  return out;
}

} // namespace

struct srk_graph {
  LabeledGraph graph;
};

struct srk_ranking {
  Ranking ranking;
  std::string tsv_cache;
};

struct srk_dataset {
  RelationDataset data;
};

struct srk_grid_result {
  // Per-relation and common searches share the handle; a per-relation result
  // has exactly one relation entry.
  GridSpec grid;
  WalkParams best_params{};
  std::size_t best_index{0};
  double best_validation_auc{0.0};
  std::vector<double> validation_auc;
  std::vector<std::string> relation_names;
  std::vector<double> relation_test_auc;
  double mean_test_auc{0.0};
  bool common{false};
  std::string csv_cache;
};

struct srk_report {
  CompareReport report;
  std::string text_cache;
  std::string csv_cache;
};

extern "C" {

const char* srk_version(void) { return "0.1.0"; }

const char* srk_status_name(srk_status status) {
  switch (status) {
    case SRK_OK: return "ok";
    case SRK_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case SRK_ERROR_IO: return "io error";
    case SRK_ERROR_PARSE: return "parse error";
    case SRK_ERROR_DOMAIN: return "domain error";
    case SRK_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* srk_last_error(void) { return g_last_error.c_str(); }

/* ---- graphs ------------------------------------------------------------ */

srk_status srk_graph_load(const char* path, int64_t node_count, int64_t label_count,
                          srk_graph** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr)
      throw Error::invalid("path and out must not be null");
    NodeId nodes;
    LabelId labels;
    if (node_count < 0 || label_count < 0) {
      auto header = read_edge_list_header(path);
      if (!header)
        throw Error::parse("'" + std::string(path) +
                           "' has no `# nodes=N labels=L` header; pass explicit counts");
      nodes = header->node_count;
      labels = header->label_count;
    } else {
      if (node_count > kMaxCount || label_count > kMaxCount)
        throw Error::invalid("node or label count out of range");
      nodes = static_cast<NodeId>(node_count);
      labels = static_cast<LabelId>(label_count);
    }
    *out = new srk_graph{LabeledGraph::load_edge_list(path, nodes, labels)};
  });
}

srk_status srk_graph_augment_reverse(const srk_graph* graph, srk_graph** out) {
  return guarded([&] {
    if (graph == nullptr || out == nullptr)
      throw Error::invalid("graph and out must not be null");
    *out = new srk_graph{graph->graph.augment_with_reverse_labels()};
  });
}

void srk_graph_free(srk_graph* graph) { delete graph; }

int64_t srk_graph_node_count(const srk_graph* graph) {
  return graph == nullptr ? -1 : static_cast<int64_t>(graph->graph.node_count());
}

int64_t srk_graph_label_count(const srk_graph* graph) {
  return graph == nullptr ? -1 : static_cast<int64_t>(graph->graph.label_count());
}

int64_t srk_graph_edge_count(const srk_graph* graph) {
  return graph == nullptr ? -1 : static_cast<int64_t>(graph->graph.edge_count());
}

int srk_graph_is_augmented(const srk_graph* graph) {
  return graph != nullptr && graph->graph.augmented() ? 1 : 0;
}

srk_status srk_graph_weighted_out_degree(const srk_graph* graph, const double* weights,
                                         double* out_degree) {
  return guarded([&] {
    if (graph == nullptr || out_degree == nullptr)
      throw Error::invalid("graph and out_degree must not be null");
    std::vector<double> w = weights == nullptr
                                ? uniform_weights(graph->graph.label_count())
                                : std::vector<double>(weights, weights + graph->graph.label_count());
    std::vector<double> degree = graph->graph.weighted_out_degree(w);
    std::memcpy(out_degree, degree.data(), degree.size() * sizeof(double));
  });
}

srk_status srk_load_label_weights(const char* path, int64_t label_count,
                                  double* out_weights) {
  return guarded([&] {
    if (path == nullptr || out_weights == nullptr || label_count < 0)
      throw Error::invalid("bad arguments to srk_load_label_weights");
    std::vector<double> w = load_label_weights(path, static_cast<LabelId>(label_count));
    std::memcpy(out_weights, w.data(), w.size() * sizeof(double));
  });
}

srk_status srk_load_frequencies(const char* path, int64_t node_count, double* out_freq) {
  return guarded([&] {
    if (path == nullptr || out_freq == nullptr || node_count < 0)
      throw Error::invalid("bad arguments to srk_load_frequencies");
    FrequencyDistribution p0 =
        FrequencyDistribution::load_tsv(path, static_cast<NodeId>(node_count));
    std::memcpy(out_freq, p0.raw().data(), p0.size() * sizeof(double));
  });
}

/* ---- ranking ------------------------------------------------------------ */

srk_status srk_rank(const srk_graph* graph, const double* frequencies,
                    const double* weights, srk_method method,
                    const srk_rank_params* params, srk_ranking** out) {
  return guarded([&] {
    if (graph == nullptr || frequencies == nullptr || out == nullptr)
      throw Error::invalid("graph, frequencies and out must not be null");
    const LabeledGraph& g = graph->graph;
    FrequencyDistribution p0(
        std::vector<double>(frequencies, frequencies + g.node_count()));
    std::vector<double> w = weights == nullptr
                                ? uniform_weights(g.label_count())
                                : std::vector<double>(weights, weights + g.label_count());

    Ranking ranking;
    switch (method) {
      case SRK_METHOD_FREQUENCY:
        ranking = rank_frequency(p0);
        break;
      case SRK_METHOD_MORO: {
        if (params == nullptr) throw Error::invalid("moro needs params.moro_top_k");
        ranking = rank_moro(g, p0, MoroConfig{params->moro_top_k});
        break;
      }
      case SRK_METHOD_PAGERANK:
      case SRK_METHOD_SYNSETRANK: {
        if (params == nullptr) throw Error::invalid("walk methods need params");
        WalkParams wp{params->alpha, params->beta, params->steps};
        ranking = method == SRK_METHOD_PAGERANK ? rank_pagerank(g, w, p0, wp)
                                                : rank_synsetrank(g, w, p0, wp);
        break;
      }
      default:
        throw Error::invalid("unknown ranking method");
    }
    *out = new srk_ranking{std::move(ranking), {}};
  });
}

int64_t srk_ranking_size(const srk_ranking* ranking) {
  return ranking == nullptr ? -1 : static_cast<int64_t>(ranking->ranking.scores.size());
}

double srk_ranking_score(const srk_ranking* ranking, int64_t node) {
  if (ranking == nullptr || node < 0 ||
      node >= static_cast<int64_t>(ranking->ranking.scores.size()))
    return -1.0;
  return ranking->ranking.scores[static_cast<std::size_t>(node)];
}

int64_t srk_ranking_node_at(const srk_ranking* ranking, int64_t position) {
  if (ranking == nullptr || position < 0 ||
      position >= static_cast<int64_t>(ranking->ranking.order.size()))
    return -1;
  return ranking->ranking.order[static_cast<std::size_t>(position)];
}

const char* srk_ranking_tsv(srk_ranking* ranking) {
  if (ranking == nullptr) return "";
  if (ranking->tsv_cache.empty())
    ranking->tsv_cache = format_ranking_tsv(ranking->ranking);
  return ranking->tsv_cache.c_str();
}

void srk_ranking_free(srk_ranking* ranking) { delete ranking; }

/* ---- evaluation ---------------------------------------------------------- */

srk_status srk_auc(const double* scores, int64_t score_count, const int64_t* gold_nodes,
                   const uint8_t* gold_positive, int64_t gold_count, double* out_auc) {
  return guarded([&] {
    if (scores == nullptr || gold_nodes == nullptr || gold_positive == nullptr ||
        out_auc == nullptr || score_count < 0 || gold_count < 1)
      throw Error::invalid("bad arguments to srk_auc");
    std::vector<NodeId> nodes(gold_count);
    std::vector<std::uint8_t> flags(gold_count);
    for (int64_t i = 0; i < gold_count; ++i) {
      if (gold_nodes[i] < 0 || gold_nodes[i] >= score_count)
        throw Error::invalid("gold node out of range");
      nodes[i] = static_cast<NodeId>(gold_nodes[i]);
      flags[i] = gold_positive[i] ? 1 : 0;
    }
    GoldLabels gold(std::move(nodes), std::move(flags));
    *out_auc = auc(std::span<const double>(scores, static_cast<std::size_t>(score_count)),
                   gold);
  });
}

srk_status srk_dataset_open(const char* dir, int reverse_augment, srk_dataset** out) {
  return guarded([&] {
    if (dir == nullptr || out == nullptr)
      throw Error::invalid("dir and out must not be null");
    *out = new srk_dataset{RelationDataset::load_dir(dir, reverse_augment != 0)};
  });
}

srk_status srk_dataset_open_files(const char* edges_path, const char* freq_path,
                                  const char* gold_valid_path, const char* gold_test_path,
                                  int64_t node_count, int64_t label_count,
                                  int reverse_augment, const char* name,
                                  srk_dataset** out) {
  return guarded([&] {
    if (edges_path == nullptr || freq_path == nullptr || gold_valid_path == nullptr ||
        gold_test_path == nullptr || out == nullptr)
      throw Error::invalid("paths and out must not be null");
    NodeId nodes;
    LabelId labels;
    if (node_count < 0 || label_count < 0) {
      auto header = read_edge_list_header(edges_path);
      if (!header)
        throw Error::parse("'" + std::string(edges_path) +
                           "' has no `# nodes=N labels=L` header; pass explicit counts");
      nodes = header->node_count;
      labels = header->label_count;
    } else {
      if (node_count > kMaxCount || label_count > kMaxCount)
        throw Error::invalid("node or label count out of range");
      nodes = static_cast<NodeId>(node_count);
      labels = static_cast<LabelId>(label_count);
    }
    LabeledGraph graph = LabeledGraph::load_edge_list(edges_path, nodes, labels);
    if (reverse_augment != 0) graph = graph.augment_with_reverse_labels();
    *out = new srk_dataset{RelationDataset{
        name == nullptr ? "dataset" : name, std::move(graph),
        FrequencyDistribution::load_tsv(freq_path, nodes),
        GoldLabels::load_tsv(gold_valid_path, nodes),
        GoldLabels::load_tsv(gold_test_path, nodes)}};
  });
}

const char* srk_dataset_name(const srk_dataset* dataset) {
  return dataset == nullptr ? "" : dataset->data.name.c_str();
}

int64_t srk_dataset_node_count(const srk_dataset* dataset) {
  return dataset == nullptr ? -1 : static_cast<int64_t>(dataset->data.graph.node_count());
}

void srk_dataset_free(srk_dataset* dataset) { delete dataset; }

srk_status srk_grid_search(const srk_dataset* dataset, srk_method method,
                           const srk_grid_spec* spec, int32_t jobs,
                           srk_grid_result** out) {
  return guarded([&] {
    if (dataset == nullptr || out == nullptr)
      throw Error::invalid("dataset and out must not be null");
    if (method != SRK_METHOD_PAGERANK && method != SRK_METHOD_SYNSETRANK)
      throw Error::invalid("grid search applies to the walk methods only");
    GridSpec grid = grid_spec_of(spec);
    WalkMethod wm = method == SRK_METHOD_PAGERANK ? WalkMethod::pagerank
                                                  : WalkMethod::synsetrank;
    GridResult r = grid_search_per_relation(dataset->data, wm, grid, jobs);
    auto* handle = new srk_grid_result;
    handle->grid = std::move(r.grid);
    handle->best_params = r.best_params;
    handle->best_index = r.best_index;
    handle->best_validation_auc = r.best_validation_auc;
    handle->validation_auc = std::move(r.validation_auc);
    handle->relation_names = {dataset->data.name};
    handle->relation_test_auc = {r.test_auc};
    handle->mean_test_auc = r.test_auc;
    handle->common = false;
    *out = handle;
  });
}

srk_status srk_grid_search_common(const srk_dataset* const* datasets,
                                  int64_t dataset_count, srk_method method,
                                  const srk_grid_spec* spec, int32_t jobs,
                                  srk_grid_result** out) {
  return guarded([&] {
    if (datasets == nullptr || out == nullptr || dataset_count < 1)
      throw Error::invalid("need at least one dataset");
    if (method != SRK_METHOD_PAGERANK && method != SRK_METHOD_SYNSETRANK)
      throw Error::invalid("grid search applies to the walk methods only");
    std::vector<RelationDataset> sets;
    sets.reserve(dataset_count);
    for (int64_t i = 0; i < dataset_count; ++i) {
      if (datasets[i] == nullptr) throw Error::invalid("null dataset handle");
      sets.push_back(datasets[i]->data);
    }
    GridSpec grid = grid_spec_of(spec);
    WalkMethod wm = method == SRK_METHOD_PAGERANK ? WalkMethod::pagerank
                                                  : WalkMethod::synsetrank;
    CommonGridResult r = grid_search_common(sets, wm, grid, jobs);
    auto* handle = new srk_grid_result;
    handle->grid = std::move(r.grid);
    handle->best_params = r.best_params;
    handle->best_index = r.best_index;
    handle->best_validation_auc = r.best_mean_validation_auc;
    handle->validation_auc = std::move(r.mean_validation_auc);
    handle->relation_names = std::move(r.relation_names);
    handle->relation_test_auc = std::move(r.test_auc);
    handle->mean_test_auc = r.mean_test_auc;
    handle->common = true;
    *out = handle;
  });
}

int64_t srk_grid_result_config_count(const srk_grid_result* result) {
  return result == nullptr ? -1 : static_cast<int64_t>(result->validation_auc.size());
}

srk_status srk_grid_result_config(const srk_grid_result* result, int64_t index,
                                  double* alpha, double* beta, int32_t* steps,
                                  double* validation_auc) {
  return guarded([&] {
    if (result == nullptr || index < 0 ||
        index >= static_cast<int64_t>(result->validation_auc.size()))
      throw Error::invalid("grid configuration index out of range");
    WalkParams p = result->grid.config(static_cast<std::size_t>(index));
    if (alpha != nullptr) *alpha = p.alpha;
    if (beta != nullptr) *beta = p.beta;
    if (steps != nullptr) *steps = p.steps;
    if (validation_auc != nullptr)
      *validation_auc = result->validation_auc[static_cast<std::size_t>(index)];
  });
}

void srk_grid_result_best(const srk_grid_result* result, double* alpha, double* beta,
                          int32_t* steps, double* validation_auc) {
  if (result == nullptr) return;
  if (alpha != nullptr) *alpha = result->best_params.alpha;
  if (beta != nullptr) *beta = result->best_params.beta;
  if (steps != nullptr) *steps = result->best_params.steps;
  if (validation_auc != nullptr) *validation_auc = result->best_validation_auc;
}

int64_t srk_grid_result_relation_count(const srk_grid_result* result) {
  return result == nullptr ? -1 : static_cast<int64_t>(result->relation_names.size());
}

const char* srk_grid_result_relation_name(const srk_grid_result* result, int64_t index) {
  if (result == nullptr || index < 0 ||
      index >= static_cast<int64_t>(result->relation_names.size()))
    return "";
  return result->relation_names[static_cast<std::size_t>(index)].c_str();
}

double srk_grid_result_relation_test_auc(const srk_grid_result* result, int64_t index) {
  if (result == nullptr || index < 0 ||
      index >= static_cast<int64_t>(result->relation_test_auc.size()))
    return -1.0;
  return result->relation_test_auc[static_cast<std::size_t>(index)];
}

double srk_grid_result_mean_test_auc(const srk_grid_result* result) {
  return result == nullptr ? -1.0 : result->mean_test_auc;
}

const char* srk_grid_result_csv(srk_grid_result* result) {
  if (result == nullptr) return "";
  if (result->csv_cache.empty()) {
    GridResult view;
    view.grid = result->grid;
    view.best_index = result->best_index;
    view.validation_auc = result->validation_auc;
    std::string csv = grid_result_csv(view);
    if (result->common) {
      // header names the column for what it is in common mode
      std::size_t eol = csv.find('\n');
      csv = "alpha,beta,steps,mean_validation_auc,best" + csv.substr(eol);
    }
    result->csv_cache = std::move(csv);
  }
  return result->csv_cache.c_str();
}

void srk_grid_result_free(srk_grid_result* result) { delete result; }

srk_status srk_compare(const srk_dataset* const* datasets, int64_t dataset_count,
                       const srk_grid_spec* spec, const int32_t* moro_ks,
                       int64_t moro_k_count, int32_t jobs, srk_report** out) {
  return guarded([&] {
    if (datasets == nullptr || out == nullptr || dataset_count < 1)
      throw Error::invalid("need at least one dataset");
    std::vector<RelationDataset> sets;
    sets.reserve(dataset_count);
    for (int64_t i = 0; i < dataset_count; ++i) {
      if (datasets[i] == nullptr) throw Error::invalid("null dataset handle");
      sets.push_back(datasets[i]->data);
    }
    GridSpec grid = grid_spec_of(spec);
    std::vector<int> ks;
    if (moro_ks == nullptr) {
      ks.assign(kDefaultMoroKs.begin(), kDefaultMoroKs.end());
    } else {
      if (moro_k_count < 1) throw Error::invalid("moro_k_count must be positive");
      ks.assign(moro_ks, moro_ks + moro_k_count);
    }
    CompareReport report = compare_table(sets, grid, ks, jobs);
    *out = new srk_report{std::move(report), {}, {}};
  });
}

const char* srk_report_text(const srk_report* report) {
  if (report == nullptr) return "";
  auto* mutable_report = const_cast<srk_report*>(report);
  if (mutable_report->text_cache.empty())
    mutable_report->text_cache = report->report.text();
  return mutable_report->text_cache.c_str();
}

const char* srk_report_csv(const srk_report* report) {
  if (report == nullptr) return "";
  auto* mutable_report = const_cast<srk_report*>(report);
  if (mutable_report->csv_cache.empty())
    mutable_report->csv_cache = report->report.csv();
  return mutable_report->csv_cache.c_str();
}

void srk_report_free(srk_report* report) { delete report; }

/* ---- synthetic benchmark -------------------------------------------------- */

void srk_planted_spec_defaults(srk_planted_spec* spec) {
  if (spec == nullptr) return;
  PlantedSpec d;
  spec->node_count = d.node_count;
  spec->label_count = d.label_count;
  spec->cluster_size = d.relevant_cluster_size;
  spec->seed_frequency_mass = d.seed_frequency_mass;
  spec->noise_frequency_mass = d.noise_frequency_mass;
  spec->degree_skew = d.degree_skew;
  spec->negatives_per_positive = d.negatives_per_positive;
  spec->rng_seed = d.rng_seed;
}

srk_status srk_generate_planted(const srk_planted_spec* spec, const char* dir) {
  return guarded([&] {
    if (dir == nullptr) throw Error::invalid("dir must not be null");
    PlantedSpec ps = planted_spec_of(spec);
    RelationDataset ds = generate_planted(ps);
    write_dataset_dir(ds, ps, dir);
  });
}

srk_status srk_generate_benchmark(const srk_planted_spec* spec, int32_t relation_count,
                                  const char* dir) {
  return guarded([&] {
    if (dir == nullptr) throw Error::invalid("dir must not be null");
    if (relation_count < 1)
      throw Error::invalid("relation count must be at least 1");
    PlantedSpec base = planted_spec_of(spec);
    std::vector<PlantedSpec> specs =
        benchmark_specs(base, static_cast<std::uint32_t>(relation_count), base.rng_seed);
    for (std::size_t r = 0; r < specs.size(); ++r) {
      char name[16];
      std::snprintf(name, sizeof name, "rel%02zu", r + 1);
      RelationDataset ds = generate_planted(specs[r]);
      write_dataset_dir(ds, specs[r], std::filesystem::path(dir) / name);
    }
  });
}

} // extern "C"
