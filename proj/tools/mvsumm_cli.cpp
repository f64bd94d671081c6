// mvsumm command line: synth, segment, summarize, evaluate.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include "mvsumm/dataset.hpp"
#include "mvsumm/error.hpp"
#include "mvsumm/evaluator.hpp"
#include "mvsumm/io.hpp"
#include "mvsumm/pipeline.hpp"
#include "mvsumm/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct SummarizeOptions {
  std::string data_dir;
  std::string out_dir;
  int dim = 0;
  double alpha = 0.05;
  double rho = 10.0;
  double epsilon = 1e-8;
  int max_iters = 25;
  double tol = 1e-6;
  std::vector<int> lengths{5};
  bool coverage = false;
  bool weighted = false;
  std::uint64_t seed = 0;
  std::string laplacian = "unnormalized";
  double rho_sim = 10.0;
  int sim_iters = 100;
  double sim_tol = 1e-6;
  int restarts = 0;
  bool no_normalize = false;
  bool evaluate = false;
  std::string ground_truth;
  std::string eval_mode = "event";
  bool dump_graph = false;
};

struct SynthOptions {
  std::string out_dir;
  mvsumm::SyntheticConfig cfg;
};

struct EvaluateOptions {
  std::string summary;
  std::string ground_truth;
  std::string mode = "event";
  std::string out;
};

struct SegmentOptions {
  std::string frames;
  mvsumm::SegmentationConfig cfg;
  std::string out;
  std::string features_out;
  int view = 1;
};

mvsumm::ScoreMode parse_mode(const std::string& mode) {
  return mode == "frame" ? mvsumm::ScoreMode::kFrame : mvsumm::ScoreMode::kEvent;
}

int run_summarize(const SummarizeOptions& o) {
  for (int len : o.lengths)
    if (len < 1) throw mvsumm::InvalidArgument("summary lengths must be positive");

  fs::path gt_path;
  if (o.evaluate) {
    gt_path = !o.ground_truth.empty() ? fs::path(o.ground_truth) : fs::path(o.data_dir) / "ground_truth.json";
    if (!fs::exists(gt_path)) throw mvsumm::InvalidArgument("ground truth required");
  }

  const mvsumm::MultiViewDataset data = mvsumm::load_dataset(o.data_dir, !o.no_normalize);
  std::optional<mvsumm::GroundTruth> gt;
  if (o.evaluate) gt = mvsumm::io::read_ground_truth(gt_path);

  mvsumm::PipelineConfig cfg;
  cfg.similarity.rho_sim = o.rho_sim;
  cfg.similarity.solver.epsilon = o.epsilon;
  cfg.similarity.solver.max_iters = o.sim_iters;
  cfg.similarity.solver.rel_tol = o.sim_tol;
  cfg.similarity.laplacian = o.laplacian == "normalized" ? mvsumm::LaplacianKind::kNormalized
                                                         : mvsumm::LaplacianKind::kUnnormalized;
  cfg.joint.alpha = o.alpha;
  cfg.joint.rho = o.rho;
  cfg.joint.epsilon = o.epsilon;
  cfg.joint.max_iters = o.max_iters;
  cfg.joint.rel_tol = o.tol;
  cfg.joint.dim = o.dim;
  cfg.joint.weighted = o.weighted;
  cfg.joint.restarts = o.restarts;
  cfg.joint.seed = o.seed;
  cfg.coverage = o.coverage;

  // One optimizer run serves every requested length.
  const mvsumm::Analysis analysis = mvsumm::analyze(data, cfg);

  const fs::path out(o.out_dir);
  fs::create_directories(out);
  std::vector<std::string> outputs;
  auto emit = [&](const std::string& name, const std::string& text) {
    mvsumm::io::write_text(out / name, text);
    outputs.push_back(name);
  };

  emit("weights.csv", mvsumm::io::curve_csv(analysis.curve, data.shots));
  emit("trace.csv", mvsumm::io::trace_csv(analysis.result.trace));
  json metrics_by_length = json::object();
  for (int len : o.lengths) {
    const mvsumm::Summary s = mvsumm::summarize(analysis, data, len, o.coverage);
    emit("summary_L" + std::to_string(len) + ".json", mvsumm::io::summary_json(s));
    if (gt) {
      const mvsumm::Metrics m = mvsumm::evaluate(s, *gt, parse_mode(o.eval_mode));
      emit("metrics_L" + std::to_string(len) + ".json", mvsumm::io::metrics_json(m));
      metrics_by_length[std::to_string(len)] = json::parse(mvsumm::io::metrics_json(m));
    }
  }
  if (o.dump_graph) {
    mvsumm::io::write_matrix_csv(out / "W.csv", analysis.graph.w);
    mvsumm::io::write_matrix_csv(out / "L.csv", analysis.graph.l);
    outputs.push_back("W.csv");
    outputs.push_back("L.csv");
  }

  const auto& trace = analysis.result.trace;
  json manifest = {
      {"command", "summarize"},
      {"data", o.data_dir},
      {"num_views", data.num_views()},
      {"num_shots", data.num_shots()},
      {"feature_dim", data.dim()},
      {"config",
       {{"dim", analysis.resolved.dim},
        {"alpha", o.alpha},
        {"rho", o.rho},
        {"epsilon", o.epsilon},
        {"max_iters", o.max_iters},
        {"tol", o.tol},
        {"lengths", o.lengths},
        {"coverage", o.coverage},
        {"weighted", o.weighted},
        {"seed", o.seed},
        {"laplacian", o.laplacian},
        {"rho_sim", o.rho_sim},
        {"sim_iters", o.sim_iters},
        {"sim_tol", o.sim_tol},
        {"restarts", o.restarts},
        {"normalize", !o.no_normalize},
        {"evaluate", o.evaluate},
        {"eval_mode", o.eval_mode}}},
      {"lambda0", analysis.result.lambda0},
      {"lambda", analysis.result.lambda},
      {"iterations_run", trace.iterations_run},
      {"converged", trace.converged},
      {"start_index", analysis.result.start_index},
      {"optimizer_runs", 1},
      {"outputs", outputs}};
  if (o.evaluate) {
    manifest["ground_truth"] = gt_path.string();
    manifest["metrics"] = metrics_by_length;
  }
  mvsumm::io::write_text(out / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "summarized " << data.num_shots() << " shots from " << data.num_views()
            << " views in " << trace.iterations_run << " iterations"
            << (trace.converged ? "" : " (not converged)") << "; wrote " << outputs.size() + 1
            << " files to " << out.string() << "\n";
  return kOk;
}

int run_synth(const SynthOptions& o) {
  const mvsumm::SyntheticData s = mvsumm::generate_synthetic(o.cfg);
  const fs::path out(o.out_dir);
  mvsumm::io::write_dataset(out, s.dataset);
  mvsumm::io::write_ground_truth(out / "ground_truth.json", s.ground_truth);
  std::cout << "wrote " << s.dataset.num_views() << " views, " << s.dataset.num_shots()
            << " shots and " << s.ground_truth.events.size() << " events to " << out.string() << "\n";
  return kOk;
}

int run_evaluate(const EvaluateOptions& o) {
  const mvsumm::Summary s = mvsumm::io::read_summary_json(o.summary);
  const mvsumm::GroundTruth gt = mvsumm::io::read_ground_truth(o.ground_truth);
  const mvsumm::Metrics m = mvsumm::evaluate(s, gt, parse_mode(o.mode));
  const std::string text = mvsumm::io::metrics_json(m);
  if (!o.out.empty()) mvsumm::io::write_text(o.out, text);
  std::cout << text;
  return kOk;
}

int run_segment(const SegmentOptions& o) {
  const mvsumm::Matrix frames = mvsumm::io::read_matrix_csv(o.frames);
  const auto shots = mvsumm::segment_shots(frames, o.cfg);
  json doc = json::array();
  int index = 1;
  std::vector<mvsumm::ShotRecord> records;
  for (const auto& r : shots) {
    doc.push_back({{"view", o.view}, {"shot", index}, {"frame_start", r.start}, {"frame_end", r.end}});
    records.push_back({o.view, index, r.start, r.end});
    ++index;
  }
  const std::string text = doc.dump(2) + "\n";
  if (!o.out.empty()) {
    mvsumm::io::write_text(o.out, text);
  } else {
    std::cout << text;
  }
  if (!o.features_out.empty()) {
    mvsumm::io::write_view_csv(o.features_out, o.view, mvsumm::pool_shot_features(frames, shots));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-view shot summarization by joint embedding and row-sparse selection"};
  app.require_subcommand(1);

  SummarizeOptions sum;
  auto* summarize = app.add_subcommand("summarize", "Analyze a dataset once and emit summaries");
  summarize->add_option("--data", sum.data_dir, "Dataset directory")->required();
  summarize->add_option("--out", sum.out_dir, "Output directory")->required();
  summarize->add_option("--dim", sum.dim, "Embedding dimension (0: widest Laplacian eigengap)");
  summarize->add_option("--alpha", sum.alpha, "Embedding / selection trade-off")->capture_default_str();
  summarize->add_option("--rho", sum.rho, "lambda = lambda0 / rho")->capture_default_str();
  summarize->add_option("--epsilon", sum.epsilon, "Half-quadratic smoothing")->capture_default_str();
  summarize->add_option("--max-iters", sum.max_iters, "Joint optimizer iterations")->capture_default_str();
  summarize->add_option("--tol", sum.tol, "Relative objective tolerance")->capture_default_str();
  summarize->add_option("--lengths", sum.lengths, "Summary lengths")->delimiter(',')->capture_default_str();
  summarize->add_flag("--coverage", sum.coverage, "Spread picks over the timeline");
  summarize->add_flag("--weighted", sum.weighted, "Duration-weighted l2,1 penalty");
  summarize->add_option("--seed", sum.seed, "Seed for multi-start perturbations")->capture_default_str();
  summarize->add_option("--laplacian", sum.laplacian, "Laplacian variant")
      ->check(CLI::IsMember({"unnormalized", "normalized"}))
      ->capture_default_str();
  summarize->add_option("--rho-sim", sum.rho_sim, "Similarity-stage lambda divisor")->capture_default_str();
  summarize->add_option("--sim-iters", sum.sim_iters, "Similarity solver iterations")->capture_default_str();
  summarize->add_option("--sim-tol", sum.sim_tol, "Similarity solver tolerance")->capture_default_str();
  summarize->add_option("--restarts", sum.restarts, "Extra perturbed starts")->capture_default_str();
  summarize->add_flag("--no-normalize", sum.no_normalize, "Keep descriptors as read");
  summarize->add_flag("--evaluate", sum.evaluate, "Score every summary against ground truth");
  summarize->add_option("--ground-truth", sum.ground_truth, "Ground truth JSON (default <data>/ground_truth.json)");
  summarize->add_option("--eval-mode", sum.eval_mode, "event or frame")
      ->check(CLI::IsMember({"event", "frame"}))
      ->capture_default_str();
  summarize->add_flag("--dump-graph", sum.dump_graph, "Write W.csv and L.csv");

  SynthOptions syn;
  auto* synth = app.add_subcommand("synth", "Write a synthetic dataset with planted prototypes");
  synth->add_option("--out", syn.out_dir, "Output directory")->required();
  synth->add_option("--views", syn.cfg.num_views)->capture_default_str();
  synth->add_option("--prototypes", syn.cfg.prototypes)->capture_default_str();
  synth->add_option("--copies", syn.cfg.copies, "Copies per prototype per view")->capture_default_str();
  synth->add_option("--dim", syn.cfg.dim)->capture_default_str();
  synth->add_option("--sigma", syn.cfg.noise_sigma)->capture_default_str();
  synth->add_option("--seed", syn.cfg.seed)->capture_default_str();
  synth->add_option("--shot-length", syn.cfg.shot_length)->capture_default_str();

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score a summary against ground truth");
  evaluate->add_option("--summary", ev.summary)->required();
  evaluate->add_option("--ground-truth", ev.ground_truth)->required();
  evaluate->add_option("--mode", ev.mode)->check(CLI::IsMember({"event", "frame"}))->capture_default_str();
  evaluate->add_option("--out", ev.out, "Also write the metrics JSON here");

  SegmentOptions seg;
  auto* segment = app.add_subcommand("segment", "Cut a per-frame descriptor stream into shots");
  segment->add_option("--frames", seg.frames, "CSV, one row per frame")->required();
  segment->add_option("--change-fraction", seg.cfg.change_fraction)->capture_default_str();
  segment->add_option("--min-len", seg.cfg.min_len)->capture_default_str();
  segment->add_option("--max-len", seg.cfg.max_len)->capture_default_str();
  segment->add_option("--view", seg.view, "View id recorded in the output")->capture_default_str();
  segment->add_option("--out", seg.out, "Shot list JSON (default stdout)");
  segment->add_option("--features-out", seg.features_out, "Write mean-pooled shot features here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*summarize) return run_summarize(sum);
    if (*synth) return run_synth(syn);
    if (*evaluate) return run_evaluate(ev);
    if (*segment) return run_segment(seg);
  } catch (const mvsumm::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const mvsumm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const mvsumm::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
