// nodeclass: label the unlabeled nodes of a partially labeled graph.
//
// Input is either an edge-list TSV plus a labels TSV, a points TSV run
// through one of the graph constructions, or a synthetic planted-partition
// instance. Output is a result TSV (or a holdout evaluation report).

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphlabel/engine.hpp"
#include "graphlabel/eval.hpp"
#include "graphlabel/induce.hpp"
#include "graphlabel/io.hpp"
#include "graphlabel/walk.hpp"

namespace gl = graphlabel;

namespace {

enum class InduceKind { Exp, Knn, Eps };

struct Options {
    gl::MethodConfig cfg;
    std::string graph_path;
    std::string labels_path;
    std::string points_path;
    std::string out_path;
    std::string trace_path;
    InduceKind induce = InduceKind::Exp;
    bool induce_set = false;
    gl::Metric metric = gl::Metric::Euclidean;
    gl::KnnMode knn_mode = gl::KnnMode::Mutual;
    std::optional<double> sigma2;
    double sigma2_raw = 0.0;
    int knn_k = 5;
    double eps = 0.0;
    double holdout = 0.0;
    int iters = 0;
    int workers = 1;
    gl::NodeId planted_n = 0;
    int blocks = 2;
    double p_in = 0.3;
    double p_out = 0.02;
    double labeled_frac = 0.1;
};

void add_flags(CLI::App& app, Options& opt) {
    const std::map<std::string, gl::Method> methods{
        {"ica-vote", gl::Method::IcaVote}, {"ica-nn", gl::Method::IcaNN},
        {"lp", gl::Method::Lp},           {"tstep", gl::Method::Tstep},
        {"rendezvous", gl::Method::Rendezvous}, {"regularize", gl::Method::Regularize},
        {"adsorption", gl::Method::Adsorption}};
    const std::map<std::string, gl::SolverKind> solvers{
        {"direct", gl::SolverKind::Direct},
        {"iterative", gl::SolverKind::Iterative},
        {"second-order", gl::SolverKind::SecondOrder},
        {"montecarlo", gl::SolverKind::MonteCarlo}};
    const std::map<std::string, gl::KernelKind> kernels{
        {"stochastic", gl::KernelKind::RowStochastic},
        {"symmetric", gl::KernelKind::SymmetricKernel}};
    const std::map<std::string, InduceKind> inducers{
        {"exp", InduceKind::Exp}, {"knn", InduceKind::Knn}, {"eps", InduceKind::Eps}};
    const std::map<std::string, gl::Metric> metrics{
        {"euclidean", gl::Metric::Euclidean}, {"cosine", gl::Metric::CosineDistance}};
    const std::map<std::string, gl::KnnMode> knn_modes{
        {"directed", gl::KnnMode::Directed}, {"mutual", gl::KnnMode::Mutual}};

    app.add_option("--method", opt.cfg.method, "Classification method")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    app.add_option("--solver", opt.cfg.solver, "Route for methods with several")
        ->transform(CLI::CheckedTransformer(solvers, CLI::ignore_case));
    app.add_option("--kernel", opt.cfg.kernel, "Propagation kernel for regularize")
        ->transform(CLI::CheckedTransformer(kernels, CLI::ignore_case));
    app.add_option("--alpha", opt.cfg.alpha, "Neighbor weight in (0,1)");
    app.add_option("--beta", opt.cfg.beta, "Second-order mixing factor in [1,2]");
    app.add_option("--t", opt.cfg.t, "Walk length for tstep");
    app.add_option("--k", opt.cfg.top_k, "Keep only the k largest label scores (ICA)");
    app.add_option("--iters", opt.iters, "Iteration budget (ICA rounds / solver cap)")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", opt.cfg.tol, "Convergence tolerance");
    app.add_option("--injection", opt.cfg.labeled_injection,
                   "Seed retention probability on labeled nodes (adsorption)");
    app.add_option("--walks", opt.cfg.walks, "Monte Carlo walks per start node");
    app.add_option("--holdout", opt.holdout, "Withhold this fraction of seeds and report accuracy");
    app.add_option("--seed", opt.cfg.seed, "Master random seed");
    app.add_option("--workers", opt.workers, "Engine worker count (ica-vote)")
        ->check(CLI::PositiveNumber);

    auto* graph = app.add_option("--graph", opt.graph_path, "Edge-list TSV");
    app.add_option("--labels", opt.labels_path, "Seed labels TSV");
    auto* points = app.add_option("--points", opt.points_path, "Point coordinates TSV");
    auto* planted = app.add_option("--planted", opt.planted_n,
                                   "Generate a planted-partition graph with this many nodes")
                        ->check(CLI::PositiveNumber);
    graph->excludes(points)->excludes(planted);
    points->excludes(planted);

    app.add_option("--induce", opt.induce, "Graph construction for --points")
        ->transform(CLI::CheckedTransformer(inducers, CLI::ignore_case));
    app.add_option("--metric", opt.metric, "Point distance")
        ->transform(CLI::CheckedTransformer(metrics, CLI::ignore_case));
    app.add_option("--sigma2", opt.sigma2_raw,
                   "Gaussian bandwidth; median squared distance when omitted");
    app.add_option("--knn-k", opt.knn_k, "Neighbor count for --induce knn");
    app.add_option("--knn-mode", opt.knn_mode, "Edge rule for --induce knn")
        ->transform(CLI::CheckedTransformer(knn_modes, CLI::ignore_case));
    app.add_option("--eps", opt.eps, "Distance threshold for --induce eps");

    app.add_option("--blocks", opt.blocks, "Planted block count");
    app.add_option("--p-in", opt.p_in, "Planted within-block edge probability");
    app.add_option("--p-out", opt.p_out, "Planted cross-block edge probability");
    app.add_option("--labeled-frac", opt.labeled_frac, "Planted seed fraction per block");

    app.add_option("--out", opt.out_path, "Result TSV path; stdout when omitted");
    app.add_option("--trace", opt.trace_path, "Per-round engine stats TSV (ica-vote)");
}

gl::Graph induce_graph(const Options& opt, const std::vector<std::vector<double>>& coords) {
    const gl::PointSet pts = gl::make_point_set(coords, opt.metric);
    switch (opt.induce) {
        case InduceKind::Exp:
            return gl::exp_weighted_graph(pts, opt.sigma2);
        case InduceKind::Knn:
            return gl::knn_graph(pts, opt.knn_k, opt.knn_mode, opt.sigma2);
        case InduceKind::Eps:
            return gl::epsilon_graph(pts, opt.eps, opt.sigma2);
    }
    throw gl::InputError(gl::Errc::config_error, "unknown graph construction");
}

// Assembles (graph, seeds, vocab) from whichever input mode was selected.
void load_inputs(const Options& opt, std::optional<gl::Graph>& g,
                 std::optional<gl::LabelMatrix>& y, gl::LabelVocab& vocab) {
    if (opt.planted_n > 0) {
        auto [graph, labels] = gl::generate_planted(opt.planted_n, opt.blocks, opt.p_in,
                                                    opt.p_out, opt.labeled_frac, opt.cfg.seed);
        for (int b = 0; b < opt.blocks; ++b) vocab.intern(std::to_string(b));
        g.emplace(std::move(graph));
        y.emplace(std::move(labels));
        return;
    }
    if (!opt.points_path.empty()) {
        if (!opt.induce_set)
            throw gl::InputError(gl::Errc::config_error, "--points requires --induce");
        g.emplace(induce_graph(opt, gl::load_points(opt.points_path)));
    } else if (!opt.graph_path.empty()) {
        g.emplace(gl::load_graph(opt.graph_path));
    } else {
        throw gl::InputError(gl::Errc::config_error,
                             "need one of --graph, --points, or --planted");
    }
    if (opt.labels_path.empty())
        throw gl::InputError(gl::Errc::config_error, "--labels is required with this input");
    y.emplace(gl::load_labels(opt.labels_path, g->n(), vocab));
}

void write_trace(const std::string& path, const std::vector<gl::RoundStat>& trace) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr)
        throw gl::InputError(gl::Errc::io_error, "cannot open trace file: " + path);
    std::fprintf(f, "round\tchanged\tmessages\n");
    for (const gl::RoundStat& s : trace)
        std::fprintf(f, "%d\t%d\t%zu\n", s.round, s.changed, s.messages);
    std::fclose(f);
}

int run(const Options& opt) {
    gl::validate(opt.cfg);
    if (opt.holdout < 0.0 || opt.holdout >= 1.0)
        throw gl::InputError(gl::Errc::config_error, "--holdout must lie in [0, 1)");

    std::optional<gl::Graph> g;
    std::optional<gl::LabelMatrix> y;
    gl::LabelVocab vocab;
    load_inputs(opt, g, y, vocab);

    if (opt.holdout > 0.0) {
        const gl::EvalReport r =
            gl::holdout_evaluate(*g, *y, opt.cfg, opt.holdout, opt.cfg.seed);
        std::printf("accuracy\t%.6f\n", r.accuracy);
        std::printf("coverage\t%.6f\n", r.coverage);
        std::printf("iterations\t%d\n", r.iterations_used);
        std::printf("wall_time_s\t%.6f\n", r.wall_time_s);
        std::printf("withheld\t%zu\n", r.withheld);
        std::printf("uncovered\t%zu\n", r.uncovered);
        return 0;
    }

    // ica-vote is the one method with a parallel engine behind it; route it
    // there whenever parallelism or a round trace is requested.
    const bool engine_run = opt.cfg.method == gl::Method::IcaVote &&
                            (opt.workers > 1 || !opt.trace_path.empty());
    gl::LabelMatrix result = [&] {
        if (engine_run) {
            std::vector<gl::RoundStat> trace;
            std::vector<gl::RoundStat>* tp = opt.trace_path.empty() ? nullptr : &trace;
            gl::LabelMatrix out = gl::run_rounds(*g, *y, opt.workers, opt.cfg.ica_iterations,
                                                 true, tp, opt.cfg.dangling);
            if (tp != nullptr) write_trace(opt.trace_path, trace);
            return out;
        }
        return std::move(gl::run_method(*g, *y, opt.cfg).labels);
    }();
    gl::write_result(opt.out_path, result, vocab);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Node classification on partially labeled graphs"};
    Options opt;
    add_flags(app, opt);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (app.count("--iters") > 0) {
        opt.cfg.max_iter = opt.iters;
        opt.cfg.ica_iterations = opt.iters;
    }
    if (app.count("--sigma2") > 0) opt.sigma2 = opt.sigma2_raw;
    opt.induce_set = app.count("--induce") > 0;
    try {
        return run(opt);
    } catch (const gl::NumericError& e) {
        std::cerr << "nodeclass: " << e.what() << "\n";
        return 3;
    } catch (const gl::Error& e) {
        std::cerr << "nodeclass: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "nodeclass: " << e.what() << "\n";
        return 2;
    }
}
