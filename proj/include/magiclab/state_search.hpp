// Copyright 2026 The magiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAGICLAB_STATE_SEARCH_HPP_
#define MAGICLAB_STATE_SEARCH_HPP_

#include <cmath>
#include <limits>
#include <vector>

#include "magiclab/common.hpp"
#include "magiclab/dense_state.hpp"

namespace magiclab {

struct StateSearchOptions {
  int max_iterations = 2000;
  double initial_step = 0.1;
  double momentum = 0.9;
  double gradient_h = 1e-5;   // central-difference half-width
  double min_step = 1e-9;     // stop once step halving reaches this
};

struct StateSearchResult {
  DenseState state;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;

  StateSearchResult() : state(1) {}
};

// Minimizes f over normalized states of n_qubits qubits by momentum
// gradient descent on the 2^{N+1} real amplitude parameters, with central
// finite differences and step halving whenever a step fails to decrease f.
// f may return +infinity to mark a state as excluded; such steps are
// rejected.
template <class Objective>
StateSearchResult minimize_over_states(const DenseState& start,
                                       const Objective& f,
                                       const StateSearchOptions& options) {
  const int n_qubits = start.n_qubits();
  const std::size_t dim = start.dim();
  const std::size_t n_params = 2 * dim;

  std::vector<double> params(n_params);
  for (std::size_t i = 0; i < dim; ++i) {
    params[2 * i] = start.amp(i).real();
    params[2 * i + 1] = start.amp(i).imag();
  }

  const auto to_state = [&](const std::vector<double>& p) {
    std::vector<cplx> amps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      amps[i] = cplx(p[2 * i], p[2 * i + 1]);
    }
    return DenseState::from_amplitudes_normalized(n_qubits, std::move(amps));
  };
  const auto eval = [&](const std::vector<double>& p) {
    const double value = f(to_state(p));
    return std::isfinite(value) ? value
                                : std::numeric_limits<double>::infinity();
  };

  StateSearchResult result;
  result.state = to_state(params);
  result.value = eval(params);

  std::vector<double> velocity(n_params, 0.0);
  std::vector<double> gradient(n_params, 0.0);
  std::vector<double> trial(n_params, 0.0);
  double step = options.initial_step;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter + 1;
    for (std::size_t k = 0; k < n_params; ++k) {
      trial = params;
      trial[k] += options.gradient_h;
      const double plus = eval(trial);
      trial[k] = params[k] - options.gradient_h;
      const double minus = eval(trial);
      gradient[k] = (plus - minus) / (2.0 * options.gradient_h);
      if (!std::isfinite(gradient[k])) gradient[k] = 0.0;
    }

    double gradient_norm = 0.0;
    for (double g : gradient) gradient_norm += g * g;
    gradient_norm = std::sqrt(gradient_norm);
    if (gradient_norm < 1e-14) break;

    for (std::size_t k = 0; k < n_params; ++k) {
      velocity[k] = options.momentum * velocity[k] - step * gradient[k];
    }
    trial = params;
    for (std::size_t k = 0; k < n_params; ++k) trial[k] += velocity[k];
    const double trial_value = eval(trial);

    if (trial_value < result.value) {
      params = trial;
      result.value = trial_value;
      result.state = to_state(params);
    } else {
      step *= 0.5;
      std::fill(velocity.begin(), velocity.end(), 0.0);
      if (step < options.min_step) break;
    }
  }
  return result;
}

}  // namespace magiclab

#endif  // MAGICLAB_STATE_SEARCH_HPP_
