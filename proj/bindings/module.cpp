// Python face of the library: graph construction, the classification
// methods behind one `classify` call, the evaluation harness, and the
// parallel vote engine. Input failures surface as ValueError, numerical
// failures as RuntimeError.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "graphlabel/engine.hpp"
#include "graphlabel/eval.hpp"
#include "graphlabel/induce.hpp"
#include "graphlabel/walk.hpp"

namespace py = pybind11;
using namespace graphlabel;

namespace {

template <typename T>
T parse_enum(const std::map<std::string, T>& table, const std::string& name,
             const char* what) {
    auto it = table.find(name);
    if (it == table.end())
        throw InputError(Errc::config_error, std::string("unknown ") + what + ": " + name);
    return it->second;
}

const std::map<std::string, Method> kMethods{
    {"ica-vote", Method::IcaVote},     {"ica-nn", Method::IcaNN},
    {"lp", Method::Lp},                {"tstep", Method::Tstep},
    {"rendezvous", Method::Rendezvous}, {"regularize", Method::Regularize},
    {"adsorption", Method::Adsorption}};
const std::map<std::string, SolverKind> kSolvers{
    {"direct", SolverKind::Direct},
    {"iterative", SolverKind::Iterative},
    {"second-order", SolverKind::SecondOrder},
    {"montecarlo", SolverKind::MonteCarlo}};
const std::map<std::string, KernelKind> kKernels{
    {"stochastic", KernelKind::RowStochastic}, {"symmetric", KernelKind::SymmetricKernel}};
const std::map<std::string, Metric> kMetrics{
    {"euclidean", Metric::Euclidean}, {"cosine", Metric::CosineDistance}};
const std::map<std::string, KnnMode> kKnnModes{
    {"directed", KnnMode::Directed}, {"mutual", KnnMode::Mutual}};

std::vector<std::vector<double>> matrix_rows(const Matrix& y) {
    std::vector<std::vector<double>> out(y.rows(), std::vector<double>(y.cols()));
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t c = 0; c < y.cols(); ++c) out[i][c] = y(i, c);
    return out;
}

Graph build_graph_py(NodeId n, const std::vector<std::tuple<NodeId, NodeId, double>>& edges,
                     bool directed) {
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const auto& [s, d, w] : edges) es.push_back({s, d, w});
    return build_graph(n, es, directed);
}

MethodConfig make_config(const std::string& method, const std::string& solver,
                         const std::string& kernel, double alpha, double beta, int t,
                         double injection, int top_k, int ica_iterations, double tol,
                         int max_iter, std::uint64_t seed, std::uint64_t walks) {
    MethodConfig cfg;
    cfg.method = parse_enum(kMethods, method, "method");
    cfg.solver = parse_enum(kSolvers, solver, "solver");
    cfg.kernel = parse_enum(kKernels, kernel, "kernel");
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.t = t;
    cfg.labeled_injection = injection;
    cfg.top_k = top_k;
    cfg.ica_iterations = ica_iterations;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.seed = seed;
    cfg.walks = walks;
    return cfg;
}

py::dict classify_py(const Graph& g, const LabelMatrix& seeds, const std::string& method,
                     const std::string& solver, const std::string& kernel, double alpha,
                     double beta, int t, double injection, int top_k, int ica_iterations,
                     double tol, int max_iter, std::uint64_t seed, std::uint64_t walks) {
    const MethodConfig cfg = make_config(method, solver, kernel, alpha, beta, t, injection,
                                         top_k, ica_iterations, tol, max_iter, seed, walks);
    const WalkResult r = run_method(g, seeds, cfg);
    py::dict out;
    out["labels"] = matrix_rows(r.labels.values());
    out["hard_labels"] = r.hard_labels;
    out["iterations"] = r.iterations_used;
    out["residual"] = r.residual;
    out["converged"] = r.converged;
    return out;
}

py::dict holdout_py(const Graph& g, const LabelMatrix& seeds, double fraction,
                    const std::string& method, const std::string& solver,
                    const std::string& kernel, double alpha, double beta, int t,
                    double injection, int top_k, int ica_iterations, double tol, int max_iter,
                    std::uint64_t seed, std::uint64_t walks) {
    const MethodConfig cfg = make_config(method, solver, kernel, alpha, beta, t, injection,
                                         top_k, ica_iterations, tol, max_iter, seed, walks);
    const EvalReport r = holdout_evaluate(g, seeds, cfg, fraction, seed);
    py::dict out;
    out["accuracy"] = r.accuracy;
    out["coverage"] = r.coverage;
    out["iterations"] = r.iterations_used;
    out["wall_time_s"] = r.wall_time_s;
    out["withheld"] = r.withheld;
    out["uncovered"] = r.uncovered;
    return out;
}

PointSet points_of(const std::vector<std::vector<double>>& coords, const std::string& metric) {
    return make_point_set(coords, parse_enum(kMetrics, metric, "metric"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Node classification on partially labeled graphs";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NumericError& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<Graph>(m, "Graph")
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("directed", &Graph::directed)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("degree", &Graph::degree, py::arg("node"))
        .def("neighbors",
             [](const Graph& g, NodeId i) {
                 auto span = g.out_neighbors(i);
                 return std::vector<NodeId>(span.begin(), span.end());
             },
             py::arg("node"))
        .def("edges", [](const Graph& g) {
            std::vector<std::tuple<NodeId, NodeId, double>> out;
            out.reserve(g.edge_count());
            for (const Edge& e : g.edges()) out.emplace_back(e.src, e.dst, e.w);
            return out;
        });

    py::class_<LabelMatrix>(m, "LabelMatrix")
        .def_property_readonly("n", &LabelMatrix::n)
        .def_property_readonly("m", &LabelMatrix::m)
        .def_property_readonly("num_labeled", &LabelMatrix::num_labeled)
        .def("labeled_set", &LabelMatrix::labeled_set)
        .def("hard_label", &LabelMatrix::hard_label, py::arg("node"))
        .def("rows", [](const LabelMatrix& y) { return matrix_rows(y.values()); });

    m.def("build_graph", &build_graph_py, py::arg("n"), py::arg("edges"),
          py::arg("directed") = false,
          "Graph over nodes 0..n-1 from (src, dst, weight) triples.");
    m.def("seed_matrix",
          [](NodeId n, LabelId labels, const std::vector<std::pair<NodeId, LabelId>>& seeds) {
              return LabelMatrix::from_assignments(n, labels, seeds);
          },
          py::arg("n"), py::arg("labels"), py::arg("seeds"),
          "One-hot seed rows from (node, label) pairs; other rows stay zero.");

    m.def("classify", &classify_py, py::arg("graph"), py::arg("seeds"),
          py::arg("method") = "lp", py::arg("solver") = "direct",
          py::arg("kernel") = "stochastic", py::arg("alpha") = kDefaultAlpha,
          py::arg("beta") = kDefaultBeta, py::arg("t") = kDefaultWalkSteps,
          py::arg("injection") = kDefaultLabeledInjection, py::arg("top_k") = 0,
          py::arg("ica_iterations") = kDefaultIcaIterations, py::arg("tol") = kDefaultTol,
          py::arg("max_iter") = kDefaultMaxIter, py::arg("seed") = 1,
          py::arg("walks") = kDefaultWalksPerStart,
          "Label the unlabeled nodes; returns labels, hard_labels, iterations, "
          "residual, converged.");

    m.def("holdout_evaluate", &holdout_py, py::arg("graph"), py::arg("seeds"),
          py::arg("fraction"), py::arg("method") = "lp", py::arg("solver") = "direct",
          py::arg("kernel") = "stochastic", py::arg("alpha") = kDefaultAlpha,
          py::arg("beta") = kDefaultBeta, py::arg("t") = kDefaultWalkSteps,
          py::arg("injection") = kDefaultLabeledInjection, py::arg("top_k") = 0,
          py::arg("ica_iterations") = kDefaultIcaIterations, py::arg("tol") = kDefaultTol,
          py::arg("max_iter") = kDefaultMaxIter, py::arg("seed") = 1,
          py::arg("walks") = kDefaultWalksPerStart,
          "Withhold a seeded fraction of the labeled nodes and report accuracy.");

    m.def("generate_planted", &generate_planted, py::arg("n"), py::arg("blocks"),
          py::arg("p_in"), py::arg("p_out"), py::arg("labeled_fraction"), py::arg("seed"),
          "Planted-partition graph; block id is the true label.");

    m.def("exp_graph",
          [](const std::vector<std::vector<double>>& coords, std::optional<double> sigma2,
             const std::string& metric) {
              return exp_weighted_graph(points_of(coords, metric), sigma2);
          },
          py::arg("points"), py::arg("sigma2") = py::none(), py::arg("metric") = "euclidean");
    m.def("knn_graph",
          [](const std::vector<std::vector<double>>& coords, int k, const std::string& mode,
             std::optional<double> sigma2, const std::string& metric) {
              return knn_graph(points_of(coords, metric), k,
                               parse_enum(kKnnModes, mode, "knn mode"), sigma2);
          },
          py::arg("points"), py::arg("k"), py::arg("mode") = "mutual",
          py::arg("sigma2") = py::none(), py::arg("metric") = "euclidean");
    m.def("epsilon_graph",
          [](const std::vector<std::vector<double>>& coords, double eps,
             std::optional<double> sigma2, const std::string& metric) {
              return epsilon_graph(points_of(coords, metric), eps, sigma2);
          },
          py::arg("points"), py::arg("eps"), py::arg("sigma2") = py::none(),
          py::arg("metric") = "euclidean");

    m.def("run_rounds",
          [](const Graph& g, const LabelMatrix& seeds, int workers, int rounds, bool clamp) {
              std::vector<RoundStat> trace;
              LabelMatrix out = run_rounds(g, seeds, workers, rounds, clamp, &trace);
              std::vector<std::tuple<int, int, std::size_t>> rows;
              rows.reserve(trace.size());
              for (const RoundStat& s : trace)
                  rows.emplace_back(s.round, s.changed, s.messages);
              return py::make_tuple(std::move(out), std::move(rows));
          },
          py::arg("graph"), py::arg("seeds"), py::arg("workers"), py::arg("rounds"),
          py::arg("clamp") = true,
          "Bulk-synchronous vote propagation; returns (labels, per-round stats).");
}
