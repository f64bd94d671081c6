#include "mvsumm/dataset.hpp"
#include "mvsumm/embedding.hpp"
#include "mvsumm/error.hpp"
#include "mvsumm/evaluator.hpp"
#include "mvsumm/io.hpp"
#include "mvsumm/joint_optimizer.hpp"
#include "mvsumm/pipeline.hpp"
#include "mvsumm/report.hpp"
#include "mvsumm/similarity_graph.hpp"
#include "mvsumm/sparse_solvers.hpp"
#include "mvsumm/summarizer.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace mvsumm;

namespace {

LaplacianKind laplacian_kind(const std::string& name) {
  if (name == "unnormalized") return LaplacianKind::kUnnormalized;
  if (name == "normalized") return LaplacianKind::kNormalized;
  throw InvalidArgument("laplacian must be 'unnormalized' or 'normalized'");
}

ScoreMode score_mode(const std::string& name) {
  if (name == "event") return ScoreMode::kEvent;
  if (name == "frame") return ScoreMode::kFrame;
  throw InvalidArgument("mode must be 'event' or 'frame'");
}

SolverConfig solver_config(double epsilon, int max_iters, double rel_tol) {
  SolverConfig cfg;
  cfg.epsilon = epsilon;
  cfg.max_iters = max_iters;
  cfg.rel_tol = rel_tol;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_mvsumm, m) {
  m.doc() = "Multi-view shot summarization by joint embedding and row-sparse selection";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // dataset
  py::class_<ShotRecord>(m, "ShotRecord")
      .def(py::init([](int view, int shot, std::int64_t start, std::int64_t end) {
             return ShotRecord{view, shot, start, end};
           }),
           py::arg("view"), py::arg("shot"), py::arg("frame_start"), py::arg("frame_end"))
      .def_readwrite("view", &ShotRecord::view)
      .def_readwrite("shot", &ShotRecord::shot)
      .def_readwrite("frame_start", &ShotRecord::frame_start)
      .def_readwrite("frame_end", &ShotRecord::frame_end)
      .def_property_readonly("duration", &ShotRecord::duration)
      .def("__repr__", [](const ShotRecord& s) {
        return "ShotRecord(view=" + std::to_string(s.view) + ", shot=" + std::to_string(s.shot) +
               ", frames=" + std::to_string(s.frame_start) + ".." + std::to_string(s.frame_end) + ")";
      });

  py::class_<Event>(m, "Event")
      .def(py::init([](int id, std::int64_t start, std::int64_t end, std::set<int> views) {
             return Event{id, start, end, std::move(views)};
           }),
           py::arg("event_id"), py::arg("frame_start"), py::arg("frame_end"),
           py::arg("views") = std::set<int>{})
      .def_readwrite("event_id", &Event::id)
      .def_readwrite("frame_start", &Event::frame_start)
      .def_readwrite("frame_end", &Event::frame_end)
      .def_readwrite("views", &Event::views);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def(py::init([](std::vector<Event> events) { return GroundTruth{std::move(events)}; }),
           py::arg("events"))
      .def_readwrite("events", &GroundTruth::events);

  py::class_<BlockIndex>(m, "BlockIndex")
      .def(py::init<std::vector<int>>())
      .def_property_readonly("sizes", &BlockIndex::sizes)
      .def_property_readonly("total", &BlockIndex::total)
      .def("flat", &BlockIndex::flat, py::arg("view"), py::arg("shot"))
      .def("locate", &BlockIndex::locate, py::arg("flat_index"));

  py::class_<MultiViewDataset>(m, "MultiViewDataset")
      .def_readonly("views", &MultiViewDataset::views)
      .def_readonly("shots", &MultiViewDataset::shots)
      .def_readonly("index", &MultiViewDataset::index)
      .def_property_readonly("num_views", &MultiViewDataset::num_views)
      .def_property_readonly("num_shots", &MultiViewDataset::num_shots)
      .def_property_readonly("dim", &MultiViewDataset::dim)
      .def("stacked", &MultiViewDataset::stacked)
      .def("durations", &MultiViewDataset::durations);

  m.def("make_dataset", &make_dataset, py::arg("views"), py::arg("shots"),
        py::arg("normalize") = true);
  m.def("load_dataset", &load_dataset, py::arg("path"), py::arg("normalize") = true);
  m.def("write_dataset", &io::write_dataset, py::arg("path"), py::arg("dataset"));
  m.def("read_ground_truth", &io::read_ground_truth, py::arg("path"));
  m.def("write_ground_truth", &io::write_ground_truth, py::arg("path"), py::arg("ground_truth"));

  m.def(
      "segment_shots",
      [](const Matrix& frames, double change_fraction, std::int64_t min_len, std::int64_t max_len) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (const auto& r : segment_shots(frames, {change_fraction, min_len, max_len}))
          out.emplace_back(r.start, r.end);
        return out;
      },
      py::arg("frames"), py::arg("change_fraction") = 0.75, py::arg("min_len") = 32,
      py::arg("max_len") = 96, "Shot ranges (1-based, inclusive) of a frames x D descriptor stream.");
  m.def(
      "pool_shot_features",
      [](const Matrix& frames, const std::vector<std::pair<std::int64_t, std::int64_t>>& shots) {
        std::vector<FrameRange> ranges;
        for (const auto& [s, e] : shots) ranges.push_back({s, e});
        return pool_shot_features(frames, ranges);
      },
      py::arg("frames"), py::arg("shots"));

  m.def(
      "generate_synthetic",
      [](int views, int prototypes, int copies, int dim, double sigma, std::uint64_t seed,
         std::int64_t shot_length) {
        SyntheticData s = generate_synthetic({views, prototypes, copies, dim, sigma, seed, shot_length});
        return py::make_tuple(s.dataset, s.ground_truth, s.labels, s.prototypes);
      },
      py::arg("num_views") = 2, py::arg("prototypes") = 3, py::arg("copies") = 2,
      py::arg("dim") = 16, py::arg("noise_sigma") = 0.0, py::arg("seed") = 0,
      py::arg("shot_length") = 48, "Returns (dataset, ground_truth, labels, prototypes).");

  // sparse solvers
  m.def(
      "solve_l1_selfexpress",
      [](const Matrix& dictionary, const Matrix& targets, double lambda, bool zero_diagonal,
         double epsilon, int max_iters, double rel_tol) {
        return solve_l1_selfexpress(dictionary, targets, lambda, zero_diagonal,
                                    solver_config(epsilon, max_iters, rel_tol));
      },
      py::arg("dictionary"), py::arg("targets"), py::arg("lam"), py::arg("zero_diagonal") = false,
      py::arg("epsilon") = 1e-8, py::arg("max_iters") = 100, py::arg("rel_tol") = 1e-6);
  m.def("l21_norm", &l21_norm, py::arg("z"));
  m.def("update_P", &update_P, py::arg("z"), py::arg("epsilon") = 1e-8,
        py::arg("row_weights") = std::optional<Vector>{});
  m.def("z_step", &z_step, py::arg("y"), py::arg("p"), py::arg("lam"));

  // similarity graph
  m.def(
      "intra_view_similarity",
      [](const Matrix& view, double rho_sim) {
        SimilarityConfig cfg;
        cfg.rho_sim = rho_sim;
        return intra_view_similarity(view, cfg);
      },
      py::arg("view"), py::arg("rho_sim") = 10.0);
  m.def(
      "inter_view_similarity",
      [](const Matrix& vm, const Matrix& vn, double rho_sim) {
        SimilarityConfig cfg;
        cfg.rho_sim = rho_sim;
        return inter_view_similarity(vm, vn, cfg);
      },
      py::arg("view_m"), py::arg("view_n"), py::arg("rho_sim") = 10.0);
  m.def("assemble_total", [](const std::vector<std::vector<Matrix>>& blocks) { return assemble_total(blocks); },
        py::arg("blocks"));
  m.def("symmetrize_normalize", &symmetrize_normalize, py::arg("c_total"));
  m.def(
      "laplacian", [](const Matrix& w, const std::string& kind) { return laplacian(w, laplacian_kind(kind)); },
      py::arg("w"), py::arg("kind") = "unnormalized");

  py::class_<SimilarityGraph>(m, "SimilarityGraph")
      .def_readonly("c_total", &SimilarityGraph::c_total)
      .def_readonly("w", &SimilarityGraph::w)
      .def_readonly("l", &SimilarityGraph::l)
      .def_readonly("index", &SimilarityGraph::index);
  m.def(
      "build_similarity_graph",
      [](const MultiViewDataset& data, double rho_sim, const std::string& kind) {
        SimilarityConfig cfg;
        cfg.rho_sim = rho_sim;
        cfg.laplacian = laplacian_kind(kind);
        return build_similarity_graph(data, cfg);
      },
      py::arg("dataset"), py::arg("rho_sim") = 10.0, py::arg("laplacian") = "unnormalized");

  // embedding
  py::class_<Embedding>(m, "Embedding")
      .def_readonly("y", &Embedding::y)
      .def_readonly("eigenvalues", &Embedding::eigenvalues);
  m.def("initial_embedding", &initial_embedding, py::arg("l"), py::arg("dim"),
        py::arg("zero_tol") = 1e-8);
  m.def("eigengap_dimension", &eigengap_dimension, py::arg("l"), py::arg("max_dim"),
        py::arg("zero_tol") = 1e-8);
  m.def("y_step", &y_step, py::arg("l"), py::arg("z"), py::arg("alpha"), py::arg("dim"));

  // joint optimizer
  py::class_<JointConfig>(m, "JointConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &JointConfig::alpha)
      .def_readwrite("rho", &JointConfig::rho)
      .def_readwrite("epsilon", &JointConfig::epsilon)
      .def_readwrite("max_iters", &JointConfig::max_iters)
      .def_readwrite("rel_tol", &JointConfig::rel_tol)
      .def_readwrite("dim", &JointConfig::dim)
      .def_readwrite("zero_tol", &JointConfig::zero_tol)
      .def_readwrite("weighted", &JointConfig::weighted)
      .def_readwrite("shot_weights", &JointConfig::shot_weights)
      .def_readwrite("restarts", &JointConfig::restarts)
      .def_readwrite("seed", &JointConfig::seed);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("iteration", &TraceRecord::iteration)
      .def_readonly("augmented", &TraceRecord::augmented)
      .def_readonly("true_objective", &TraceRecord::true_objective)
      .def_readonly("delta_z", &TraceRecord::delta_z)
      .def_readonly("delta_y", &TraceRecord::delta_y);
  py::class_<OptimizerTrace>(m, "OptimizerTrace")
      .def_readonly("records", &OptimizerTrace::records)
      .def_readonly("iterations_run", &OptimizerTrace::iterations_run)
      .def_readonly("converged", &OptimizerTrace::converged);
  py::class_<JointResult>(m, "JointResult")
      .def_readonly("embedding", &JointResult::embedding)
      .def_readonly("z", &JointResult::z)
      .def_readonly("p", &JointResult::p)
      .def_readonly("trace", &JointResult::trace)
      .def_readonly("lambda0", &JointResult::lambda0)
      .def_readonly("lam", &JointResult::lambda);

  m.def("compute_lambda0", &compute_lambda0, py::arg("y"));
  m.def(
      "compute_objective",
      [](const Matrix& y, const Matrix& z, const Matrix& l, double alpha, double lambda,
         double epsilon, const std::optional<Vector>& q) {
        const ObjectiveValue v = compute_objective(y, z, l, alpha, lambda, epsilon, q);
        return py::make_tuple(v.augmented, v.true_objective);
      },
      py::arg("y"), py::arg("z"), py::arg("l"), py::arg("alpha"), py::arg("lam"),
      py::arg("epsilon") = 1e-8, py::arg("row_weights") = std::optional<Vector>{},
      "Returns (augmented, true_objective).");
  m.def("optimize", &optimize, py::arg("l"), py::arg("config"));

  // summarizer / evaluator
  py::class_<SummaryEntry>(m, "SummaryEntry")
      .def_readonly("flat_index", &SummaryEntry::flat_index)
      .def_readonly("view", &SummaryEntry::view)
      .def_readonly("shot", &SummaryEntry::shot)
      .def_readonly("frame_start", &SummaryEntry::frame_start)
      .def_readonly("frame_end", &SummaryEntry::frame_end)
      .def_readonly("weight", &SummaryEntry::weight);
  py::class_<Summary>(m, "Summary")
      .def_readonly("entries", &Summary::entries)
      .def_readonly("requested_length", &Summary::requested_length)
      .def("to_json", &io::summary_json);

  m.def("weight_curve", &weight_curve, py::arg("z"));
  m.def("local_maxima", &local_maxima, py::arg("curve"), py::arg("index"));
  m.def(
      "select_summary",
      [](const std::vector<int>& candidates, const Vector& curve, const std::vector<ShotRecord>& shots,
         int length, bool coverage) { return select_summary(candidates, curve, shots, length, coverage); },
      py::arg("candidates"), py::arg("curve"), py::arg("shots"), py::arg("length"),
      py::arg("coverage") = false);

  py::class_<Metrics>(m, "Metrics")
      .def_readonly("precision", &Metrics::precision)
      .def_readonly("recall", &Metrics::recall)
      .def_readonly("f_measure", &Metrics::f_measure)
      .def_readonly("matched_events", &Metrics::matched_events)
      .def_readonly("redundant_count", &Metrics::redundant_count)
      .def_readonly("unmatched_shot_count", &Metrics::unmatched_shot_count)
      .def("to_json", &io::metrics_json);
  m.def(
      "evaluate",
      [](const Summary& s, const GroundTruth& gt, const std::string& mode) {
        return evaluate(s, gt, score_mode(mode));
      },
      py::arg("summary"), py::arg("ground_truth"), py::arg("mode") = "event");
  m.def("f_measure", &f_measure, py::arg("precision"), py::arg("recall"));

  // pipeline
  py::class_<Analysis>(m, "Analysis")
      .def_readonly("graph", &Analysis::graph)
      .def_readonly("result", &Analysis::result)
      .def_readonly("curve", &Analysis::curve)
      .def_readonly("candidates", &Analysis::candidates)
      .def_readonly("config", &Analysis::resolved);
  m.def(
      "analyze",
      [](const MultiViewDataset& data, int dim, double alpha, double rho, double epsilon,
         int max_iters, double rel_tol, bool weighted, double rho_sim, const std::string& kind,
         int restarts, std::uint64_t seed) {
        PipelineConfig cfg;
        cfg.similarity.rho_sim = rho_sim;
        cfg.similarity.solver.epsilon = epsilon;
        cfg.similarity.laplacian = laplacian_kind(kind);
        cfg.joint.dim = dim;
        cfg.joint.alpha = alpha;
        cfg.joint.rho = rho;
        cfg.joint.epsilon = epsilon;
        cfg.joint.max_iters = max_iters;
        cfg.joint.rel_tol = rel_tol;
        cfg.joint.weighted = weighted;
        cfg.joint.restarts = restarts;
        cfg.joint.seed = seed;
        py::gil_scoped_release release;
        return analyze(data, cfg);
      },
      py::arg("dataset"), py::arg("dim") = 0, py::arg("alpha") = 0.05, py::arg("rho") = 10.0,
      py::arg("epsilon") = 1e-8, py::arg("max_iters") = 25, py::arg("rel_tol") = 1e-6,
      py::arg("weighted") = false, py::arg("rho_sim") = 10.0, py::arg("laplacian") = "unnormalized",
      py::arg("restarts") = 0, py::arg("seed") = 0);
  m.def("summarize", &summarize, py::arg("analysis"), py::arg("dataset"), py::arg("length"),
        py::arg("coverage") = false);
}
