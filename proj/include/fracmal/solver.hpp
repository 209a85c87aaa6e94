#pragma once

#include <span>
#include <vector>

#include "fracmal/history_kernel.hpp"
#include "fracmal/types.hpp"
#include "fracmal/weights.hpp"

namespace fracmal {

struct SolveOptions {
    HistoryKernel kernel = HistoryKernel::OpenMP;
};

/// Integrate D^alpha y = f(t, y), y(0) = y0, over the given grid with the
/// Adams-type predictor-corrector (one corrector pass per step). Lag-indexed
/// weight tables are precomputed once, so each step costs one fused pass over
/// the derivative history; total work is Theta(n_steps^2), the scheme's
/// inherent memory cost.
///
/// Throws NonFiniteStateError when a step produces NaN/Inf.
Trajectory solve(const SystemFunction& f, std::span<const double> y0,
                 FractionalOrder order, TimeGrid grid, const SolveOptions& opts = {});

/// One predictor step from a trajectory prefix through step k = history.size()-1:
///   y0 + (1/Gamma(a)) * sum_{j=0}^{k} b_{j,k+1} f_history[j]
/// f_history is row-major (k+1) x dim and must hold eval(t_j, states[j]).
std::vector<double> predict(const Trajectory& history, std::span<const double> f_history);

/// One corrector pass over the predicted state:
///   y0 + (1/Gamma(a)) * [ sum_{j=0}^{k} a_{j,k+1} f_history[j]
///                         + a_{k+1,k+1} eval(t_{k+1}, predicted) ]
/// The predicted-point term carries the weight a_{k+1,k+1} = h^a/(a(a+1)).
std::vector<double> correct(const SystemFunction& f, const Trajectory& history,
                            std::span<const double> f_history,
                            std::span<const double> predicted);

namespace reference {

/// Textbook driver over predict()/correct(): every weight is recomputed from
/// its closed form each step. Quadratically slower than solve(); kept as the
/// comparison baseline for tests and benchmarks.
Trajectory solve(const SystemFunction& f, std::span<const double> y0,
                 FractionalOrder order, TimeGrid grid);

} // namespace reference

} // namespace fracmal
