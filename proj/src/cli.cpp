#include "vne/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "vne/entropy.hpp"
#include "vne/parallel.hpp"
#include "vne/readout.hpp"
#include "vne/rng.hpp"
#include "vne/tu_dataset.hpp"

namespace vne {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size() / 2;
  return xs.size() % 2 ? xs[k] : 0.5 * (xs[k - 1] + xs[k]);
}

std::size_t parse_size(const std::string& s) {
  std::size_t pos = 0;
  std::size_t value = 0;
  try {
    value = std::stoul(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid size '" + s + "'");
  }
  const std::string suffix = s.substr(pos);
  if (suffix == "k" || suffix == "K") return value * 1000;
  if (suffix == "m" || suffix == "M") return value * 1000000;
  if (!suffix.empty()) throw ConfigError("invalid size '" + s + "'");
  return value;
}

json metrics_json(const MetricsReport& r) {
  return {{"homogeneity", r.homogeneity},
          {"completeness", r.completeness},
          {"silhouette", r.silhouette},
          {"accuracy", r.accuracy},
          {"f1_macro", r.f1_macro},
          {"runs", r.runs},
          {"stddev",
           {{"homogeneity", r.stddev.homogeneity},
            {"completeness", r.stddev.completeness},
            {"silhouette", r.stddev.silhouette},
            {"accuracy", r.stddev.accuracy},
            {"f1_macro", r.stddev.f1_macro}}}};
}

json flags_json(const CLI::App& app) {
  json flags = json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name() == "-h") continue;
    std::string name = opt->get_single_name();
    if (opt->count() == 0) {
      flags[name] = opt->get_default_str().empty() ? json(nullptr) : json(opt->get_default_str());
    } else if (opt->get_expected_max() == 0) {
      flags[name] = true;
    } else if (opt->results().size() == 1) {
      flags[name] = opt->results().front();
    } else {
      flags[name] = opt->results();
    }
  }
  return flags;
}

void write_manifest(const fs::path& path, const std::string& command, const CLI::App& app,
                    std::uint64_t seed, double wall) {
  json manifest = {{"command", command},
                   {"flags", flags_json(app)},
                   {"seed", seed},
                   {"version", kVersion},
                   {"wall_time_seconds", wall}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << manifest.dump(2) << '\n';
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<int> dense_labels(const std::vector<std::string>& names) {
  std::map<std::string, int> ids;
  for (const auto& s : names) ids.emplace(s, 0);
  int next = 0;
  for (auto& [s, id] : ids) id = next++;
  std::vector<int> out;
  out.reserve(names.size());
  for (const auto& s : names) out.push_back(ids.at(s));
  return out;
}

struct ShapeFlags {
  std::vector<std::string> shapes;
  bool basic = false;
  bool varied = false;
  std::size_t cycle = 30;
  std::size_t instances = 10;
  std::string placement;
  std::size_t rewire = 0;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--shape", shapes, "Shape type (house|fan|star); repeatable");
    app->add_flag("--basic", basic, "One shape type, regularly placed");
    app->add_flag("--varied", varied, "Every shape type, randomly placed");
    app->add_option("--cycle", cycle, "Cycle length")->capture_default_str();
    app->add_option("--instances", instances, "Instances per shape type")->capture_default_str();
    app->add_option("--placement", placement, "regular|random (default: by setup)")
        ->check(CLI::IsMember({"regular", "random"}));
    app->add_option("--rewire", rewire, "Edges to rewire after construction")->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  ShapeConfig config() const {
    if (basic && varied) throw ConfigError("--basic and --varied are mutually exclusive");
    ShapeConfig cfg;
    cfg.cycle_len = cycle;
    cfg.instances_per_shape = instances;
    cfg.rewire_count = rewire;
    cfg.seed = seed;
    if (varied) {
      cfg.shapes.clear();
      if (shapes.empty()) {
        cfg.shapes = {Shape::house, Shape::fan, Shape::star};
      } else {
        for (const auto& s : shapes) cfg.shapes.push_back(parse_shape(s));
      }
      cfg.placement = Placement::random;
    } else {
      if (shapes.size() > 1) throw ConfigError("a basic setup uses a single --shape");
      cfg.shapes = {shapes.empty() ? Shape::house : parse_shape(shapes.front())};
      cfg.placement = Placement::regular;
    }
    if (placement == "regular") cfg.placement = Placement::regular;
    if (placement == "random") cfg.placement = Placement::random;
    return cfg;
  }
};

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  if (opts.sizes.empty()) throw ConfigError("bench needs at least one size");
  if (!std::is_sorted(opts.sizes.begin(), opts.sizes.end()) ||
      std::adjacent_find(opts.sizes.begin(), opts.sizes.end()) != opts.sizes.end()) {
    throw ConfigError("bench sizes must be strictly ascending");
  }
  if (opts.repeats < 1) throw ConfigError("bench repeats must be >= 1");

  std::vector<BenchRow> rows;
  for (std::size_t idx = 0; idx < opts.sizes.size(); ++idx) {
    const std::size_t n = opts.sizes[idx];
    const double p = n > 1 ? std::min(1.0, opts.avg_degree / static_cast<double>(n - 1)) : 0.0;
    BenchRow row;
    row.n = n;

    // A fresh draw per repeat: iteration counts depend on the spectral gap of
    // each instance, so the median is taken over the family, not one graph.
    std::vector<double> approx_t, embed_t, exact_t, iters;
    std::size_t edge_total = 0;
    for (int rep = 0; rep < opts.repeats; ++rep) {
      const Graph g = erdos_renyi(n, p, derive_seed(opts.seed, "bench", n * 1000003 + rep));
      edge_total += g.num_edges();
      auto t0 = Clock::now();
      const auto s = approx_summary(g, opts.power);
      approx_t.push_back(seconds_since(t0));
      iters.push_back(s.iterations);

      if (opts.include_embed) {
        t0 = Clock::now();
        embed(g, {opts.embed_radius, opts.mode, opts.power, 0});
        embed_t.push_back(seconds_since(t0));
      }
      if (n <= opts.exact_limit) {
        t0 = Clock::now();
        vnge_exact(g);
        exact_t.push_back(seconds_since(t0));
      }
    }
    row.m = edge_total / static_cast<std::size_t>(opts.repeats);
    row.approx_iterations = static_cast<int>(median(iters));
    row.approx_seconds = median(approx_t);
    if (!embed_t.empty()) row.embed_seconds = median(embed_t);
    if (!exact_t.empty()) row.exact_seconds = median(exact_t);
    if (idx > 0) {
      const auto& prev = rows.back();
      if (prev.approx_seconds > 0.0) row.approx_ratio = row.approx_seconds / prev.approx_seconds;
      if (row.embed_seconds && prev.embed_seconds && *prev.embed_seconds > 0.0) {
        row.embed_ratio = *row.embed_seconds / *prev.embed_seconds;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

MetricsReport run_pipeline(const PipelineOptions& opts) {
  if (opts.graphs == 0) throw ConfigError("pipeline needs at least one graph");
  std::vector<MetricsReport> reports(opts.graphs);
  for (std::size_t i = 0; i < opts.graphs; ++i) {
    ShapeConfig cfg = opts.shapes;
    cfg.seed = opts.shapes.seed + i;
    const auto ds = shapes_on_cycle(cfg);
    const auto emb = embed(ds.graph, opts.embed);
    RoleEvalOptions eval = opts.eval;
    eval.seed = derive_seed(opts.eval.seed, "pipeline-eval", i);
    reports[i] = evaluate_roles(emb.values, ds.roles, eval);
  }
  return aggregate_reports(reports);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural node embeddings from ego-network Von Neumann entropy", "vnestruct"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic role dataset");
  generate->require_subcommand(1);
  std::string gen_out;
  auto* gen_barbell = generate->add_subcommand("barbell", "Two cliques joined by a path");
  std::size_t clique = 10, path_len = 7;
  gen_barbell->add_option("--clique", clique, "Clique size")->capture_default_str();
  gen_barbell->add_option("--path", path_len, "Interior path nodes")->capture_default_str();
  gen_barbell->add_option("--out", gen_out, "Output prefix")->default_str("barbell");
  auto* gen_shapes = generate->add_subcommand("shapes", "Shapes planted on a cycle");
  ShapeFlags gen_flags;
  gen_flags.attach(gen_shapes);
  gen_shapes->add_option("--out", gen_out, "Output prefix")->default_str("shapes");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Compute per-node entropy embeddings");
  std::string embed_in, embed_out, mode_name = "approx";
  unsigned radius = 3;
  PowerIterationOptions power;
  embed_cmd->add_option("--input", embed_in, "Edge list")->required()->check(CLI::ExistingFile);
  embed_cmd->add_option("--out", embed_out, "Embedding CSV")->required();
  embed_cmd->add_option("--radius", radius, "Largest ego-network radius")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  embed_cmd->add_option("--mode", mode_name, "exact|approx")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "approx"}));
  embed_cmd->add_option("--tol", power.tol, "Power-iteration tolerance")->capture_default_str();
  embed_cmd->add_option("--max-iters", power.max_iters, "Power-iteration cap")->capture_default_str();

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "Von Neumann entropy of a whole graph");
  std::string entropy_in, entropy_mode = "both";
  entropy_cmd->add_option("--input", entropy_in, "Edge list")->required()->check(CLI::ExistingFile);
  entropy_cmd->add_option("--mode", entropy_mode, "exact|approx|both")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "approx", "both"}));
  entropy_cmd->add_option("--tol", power.tol, "Power-iteration tolerance")->capture_default_str();
  entropy_cmd->add_option("--max-iters", power.max_iters, "Power-iteration cap")->capture_default_str();

  // eval-roles
  auto* eval_cmd = app.add_subcommand("eval-roles", "Cluster and classify embeddings against roles");
  std::string eval_emb, eval_labels;
  RoleEvalOptions eval_opts;
  eval_cmd->add_option("--embeddings", eval_emb, "Embedding CSV")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--labels", eval_labels, "Node-label file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--runs", eval_opts.kmeans_runs, "k-means restarts")->capture_default_str();
  eval_cmd->add_option("--folds", eval_opts.folds, "Cross-validation folds")->capture_default_str();
  eval_cmd->add_option("--seed", eval_opts.seed, "Random seed")->capture_default_str();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Graph classification on a TU dataset");
  std::string data_dir, aggregator = "sum";
  TrainConfig train;
  unsigned cls_radius = 3;
  std::string cls_mode = "approx";
  classify_cmd->add_option("--data", data_dir, "TU dataset directory")->required()->check(CLI::ExistingDirectory);
  classify_cmd->add_option("--radius", cls_radius, "Ego-network radius")
      ->capture_default_str()
      ->check(CLI::Range(1u, 16u));
  classify_cmd->add_option("--hidden", train.hidden, "Hidden units")->capture_default_str();
  classify_cmd->add_option("--epochs", train.epochs, "Epochs")->capture_default_str();
  classify_cmd->add_option("--lr", train.learning_rate, "Adam learning rate")->capture_default_str();
  classify_cmd->add_option("--folds", train.folds, "Cross-validation folds")->capture_default_str();
  classify_cmd->add_option("--batch-size", train.batch_size, "Mini-batch size (0: full batch)")
      ->capture_default_str();
  classify_cmd->add_option("--seed", train.seed, "Random seed")->capture_default_str();
  classify_cmd->add_option("--mode", cls_mode, "exact|approx")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "approx"}));
  classify_cmd->add_option("--aggregator", aggregator, "sum|mean")
      ->capture_default_str()
      ->check(CLI::IsMember({"sum", "mean"}));

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Runtime scaling of the entropy paths");
  std::string family = "gnp", sizes_arg = "1k,2k,4k,8k", bench_mode = "approx", bench_csv;
  BenchOptions bench;
  bench_cmd->add_option("--family", family, "Graph family")
      ->capture_default_str()
      ->check(CLI::IsMember({"gnp"}));
  bench_cmd->add_option("--sizes", sizes_arg, "Comma-separated ascending node counts")
      ->capture_default_str();
  bench_cmd->add_option("--avg-degree", bench.avg_degree, "Expected average degree")
      ->capture_default_str();
  bench_cmd->add_option("--mode", bench_mode, "Entropy mode for the embedding timing")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "approx"}));
  bench_cmd->add_option("--repeats", bench.repeats, "Timed repetitions per size")->capture_default_str();
  bench_cmd->add_option("--embed-radius", bench.embed_radius, "Radius for the embedding timing")
      ->capture_default_str();
  bench_cmd->add_flag("--no-embed", "Skip the embedding timing");
  bench_cmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
  bench_cmd->add_option("--csv", bench_csv, "Also write the table as CSV");

  // pipeline
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Generate, embed and evaluate role datasets");
  ShapeFlags pipe_flags;
  pipe_flags.attach(pipeline_cmd);
  PipelineOptions pipe;
  unsigned pipe_radius = 3;
  std::string pipe_mode = "exact";
  pipeline_cmd->add_option("--graphs", pipe.graphs, "Datasets to average over")->capture_default_str();
  pipeline_cmd->add_option("--radius", pipe_radius, "Ego-network radius")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  pipeline_cmd->add_option("--mode", pipe_mode, "exact|approx")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "approx"}));
  pipeline_cmd->add_option("--runs", pipe.eval.kmeans_runs, "k-means restarts")->capture_default_str();
  pipeline_cmd->add_option("--folds", pipe.eval.folds, "Cross-validation folds")->capture_default_str();

  std::vector<std::string> argv_storage{"vnestruct"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (pipeline_cmd->parsed() && !pipe_flags.basic && !pipe_flags.varied) {
      throw CLI::RequiredError("--basic or --varied");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = Clock::now();
  try {
    if (generate->parsed()) {
      RoleDataset ds;
      std::string command;
      std::uint64_t seed = 0;
      const CLI::App* sub = nullptr;
      if (gen_barbell->parsed()) {
        ds = barbell(clique, path_len);
        command = "generate barbell";
        sub = gen_barbell;
        if (gen_out.empty()) gen_out = "barbell";
      } else {
        const auto cfg = gen_flags.config();
        ds = shapes_on_cycle(cfg);
        seed = cfg.seed;
        command = "generate shapes";
        sub = gen_shapes;
        if (gen_out.empty()) gen_out = "shapes";
      }
      const fs::path edges_path = gen_out + ".edges";
      const fs::path labels_path = gen_out + ".labels";
      const fs::path manifest_path = gen_out + ".manifest.json";
      {
        auto f = open_out(edges_path);
        write_edge_list(ds.graph, f);
      }
      {
        auto f = open_out(labels_path);
        std::vector<std::string> names;
        for (int r : ds.roles) names.push_back(ds.role_names[static_cast<std::size_t>(r)]);
        write_node_labels(names, f);
      }
      write_manifest(manifest_path, command, *sub, seed, seconds_since(start));
      out << json{{"nodes", ds.graph.num_nodes()},
                  {"edges", ds.graph.num_edges()},
                  {"classes", ds.num_classes()},
                  {"role_names", ds.role_names},
                  {"files",
                   {{"edges", edges_path.string()},
                    {"labels", labels_path.string()},
                    {"manifest", manifest_path.string()}}}}
                 .dump()
          << '\n';
      err << "wrote " << ds.graph.num_nodes() << " nodes, " << ds.graph.num_edges() << " edges to "
          << edges_path.string() << '\n';
      return 0;
    }

    if (embed_cmd->parsed()) {
      const Graph g = read_edge_list_file(embed_in);
      EmbedOptions opts{radius, parse_entropy_mode(mode_name), power, 0};
      err << "embedding " << g.num_nodes() << " nodes (R=" << radius << ", " << mode_name
          << ", " << default_thread_count() << " threads)\n";
      const auto emb = embed(g, opts);
      {
        auto f = open_out(embed_out);
        write_embeddings(emb, f);
      }
      write_manifest(embed_out + ".manifest.json", "embed", *embed_cmd, 0, seconds_since(start));
      out << json{{"nodes", g.num_nodes()},
                  {"radius", radius},
                  {"mode", mode_name},
                  {"output", embed_out},
                  {"seconds", seconds_since(start)}}
                 .dump()
          << '\n';
      return 0;
    }

    if (entropy_cmd->parsed()) {
      const Graph g = read_edge_list_file(entropy_in);
      json result = json::object();
      if (entropy_mode != "approx") result["exact"] = vnge_exact(g);
      if (entropy_mode != "exact") {
        const auto s = approx_summary(g, power);
        result["approx"] = g.num_edges() == 0 ? 0.0 : std::max(0.0, -s.q * std::log(s.lambda_max));
        result["q"] = s.q;
        result["lambda_max"] = s.lambda_max;
        result["iterations"] = s.iterations;
      }
      out << result.dump() << '\n';
      return 0;
    }

    if (eval_cmd->parsed()) {
      std::ifstream emb_in(eval_emb);
      const auto emb = read_embeddings(emb_in);
      std::ifstream lab_in(eval_labels);
      const auto labels = dense_labels(read_node_labels(lab_in, emb.num_nodes()));
      out << metrics_json(evaluate_roles(emb.values, labels, eval_opts)).dump() << '\n';
      return 0;
    }

    if (classify_cmd->parsed()) {
      train.aggregator = aggregator == "mean" ? Aggregator::mean : Aggregator::sum;
      const auto raw = load_tu_dataset(data_dir);
      err << "loaded " << raw.size() << " graphs, " << raw.num_classes() << " classes\n";
      const auto data = augment(raw, {cls_radius, parse_entropy_mode(cls_mode), {}, 0});
      const auto cv = train_cv(data, train);
      out << json{{"dataset", tu_dataset_name(data_dir)},
                  {"accuracy_mean", cv.accuracy_mean},
                  {"accuracy_std", cv.accuracy_std},
                  {"per_fold", cv.per_fold}}
                 .dump()
          << '\n';
      return 0;
    }

    if (bench_cmd->parsed()) {
      bench.sizes.clear();
      std::stringstream ss(sizes_arg);
      for (std::string tok; std::getline(ss, tok, ',');) bench.sizes.push_back(parse_size(tok));
      bench.mode = parse_entropy_mode(bench_mode);
      bench.include_embed = bench_cmd->count("--no-embed") == 0;
      const auto rows = run_bench(bench);
      json table = json::array();
      auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
      for (const auto& r : rows) {
        table.push_back({{"n", r.n},
                         {"m", r.m},
                         {"approx_seconds", r.approx_seconds},
                         {"approx_iterations", r.approx_iterations},
                         {"embed_seconds", opt(r.embed_seconds)},
                         {"exact_seconds", opt(r.exact_seconds)},
                         {"approx_ratio", opt(r.approx_ratio)},
                         {"embed_ratio", opt(r.embed_ratio)}});
      }
      if (!bench_csv.empty()) {
        auto f = open_out(bench_csv);
        auto cell = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string(); };
        f << "n,m,approx_seconds,approx_iterations,embed_seconds,exact_seconds,approx_ratio,embed_ratio\n";
        for (const auto& r : rows) {
          f << r.n << ',' << r.m << ',' << r.approx_seconds << ',' << r.approx_iterations << ','
            << cell(r.embed_seconds) << ',' << cell(r.exact_seconds) << ',' << cell(r.approx_ratio)
            << ',' << cell(r.embed_ratio) << '\n';
        }
      }
      out << json{{"family", family}, {"avg_degree", bench.avg_degree}, {"repeats", bench.repeats},
                  {"rows", table}}
                 .dump()
          << '\n';
      return 0;
    }

    if (pipeline_cmd->parsed()) {
      pipe.shapes = pipe_flags.config();
      pipe.embed = {pipe_radius, parse_entropy_mode(pipe_mode), {}, 0};
      pipe.eval.seed = pipe_flags.seed;
      err << "running " << pipe.graphs << " datasets\n";
      out << metrics_json(run_pipeline(pipe)).dump() << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace vne
