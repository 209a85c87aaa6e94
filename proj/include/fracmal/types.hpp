#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracmal {

/// Caputo differentiation order, shared by all equations of a system.
/// Valid range is (0, 1]; alpha = 1 is the classical limit.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0) || !(alpha <= 1.0))
            throw std::invalid_argument("FractionalOrder: alpha must be in (0, 1], got " +
                                        std::to_string(alpha));
    }
    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Uniform time grid anchored at t0 = 0. The discretized weights assume
/// uniform spacing, so non-uniform grids are not representable here.
class TimeGrid {
public:
    TimeGrid(double h, std::size_t n_steps) : h_(h), n_steps_(n_steps) {
        if (!(h > 0.0))
            throw std::invalid_argument("TimeGrid: step size must be positive");
        if (n_steps < 1)
            throw std::invalid_argument("TimeGrid: need at least one step");
    }
    double h() const noexcept { return h_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * h_; }

private:
    double h_;
    std::size_t n_steps_;
};

/// Right-hand side of a fractional initial value problem D^alpha y = f(t, y).
/// eval must be deterministic and total on the states the solver reaches.
struct SystemFunction {
    std::size_t dimension = 0;
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)> eval;
};

/// Thrown when a solve produces a non-finite state; the step index points at
/// the first poisoned grid point. The history sum makes recovery impossible,
/// so the solve aborts instead of propagating NaN.
class NonFiniteStateError : public std::runtime_error {
public:
    NonFiniteStateError(std::size_t step, std::string_view what_arg)
        : std::runtime_error("non-finite state at step " + std::to_string(step) + ": " +
                             std::string(what_arg)),
          step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Grid times plus the state sequence produced by a solve. Immutable once
/// complete; safe to share across threads.
class Trajectory {
public:
    Trajectory(TimeGrid grid, FractionalOrder order, std::size_t dimension)
        : grid_(grid), order_(order), dim_(dimension) {
        states_.reserve((grid.n_steps() + 1) * dimension);
    }

    const TimeGrid& grid() const noexcept { return grid_; }
    FractionalOrder order() const noexcept { return order_; }
    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return states_.size() / dim_; }

    std::span<const double> state(std::size_t k) const {
        return {states_.data() + k * dim_, dim_};
    }
    std::span<const double> back() const { return state(size() - 1); }
    double time(std::size_t k) const noexcept { return grid_.time(k); }

    void append(std::span<const double> y) {
        states_.insert(states_.end(), y.begin(), y.end());
    }

private:
    TimeGrid grid_;
    FractionalOrder order_;
    std::size_t dim_;
    std::vector<double> states_;
};

} // namespace fracmal
