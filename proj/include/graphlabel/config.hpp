#pragma once

#include <cstdint>

#include "graphlabel/constants.hpp"
#include "graphlabel/graph.hpp"

namespace graphlabel {

enum class Method { IcaVote, IcaNN, Lp, Tstep, Rendezvous, Regularize, Adsorption };

enum class SolverKind { Direct, Iterative, SecondOrder, MonteCarlo };

// Propagation kernel for the regularized methods: the row-stochastic walk
// matrix or its degree-symmetrized counterpart.
enum class KernelKind { RowStochastic, SymmetricKernel };

enum class Route { Closed, Iterative };

struct MethodConfig {
    Method method = Method::Lp;
    SolverKind solver = SolverKind::Direct;
    KernelKind kernel = KernelKind::RowStochastic;

    double alpha = kDefaultAlpha;  // neighbor weight in regularization, in (0,1)
    double beta = kDefaultBeta;    // second-order mixing factor, in [1,2]
    int t = kDefaultWalkSteps;     // walk length for the t-step method
    double labeled_injection = kDefaultLabeledInjection;  // seed retention prob
    int top_k = 0;                 // ICA label pruning; 0 keeps every label
    int ica_iterations = kDefaultIcaIterations;

    double tol = kDefaultTol;
    int max_iter = kDefaultMaxIter;
    int dense_threshold = kDenseThreshold;
    std::uint64_t seed = 1;
    std::uint64_t walks = kDefaultWalksPerStart;  // Monte Carlo walks per start
    DanglingPolicy dangling = DanglingPolicy::Reject;
};

// Rejects structurally invalid settings (non-positive tolerances or counts).
// Range checks tied to a specific method are applied by that method.
void validate(const MethodConfig& cfg);

}  // namespace graphlabel
