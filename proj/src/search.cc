// Copyright 2026 The sqcqp Authors
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

#include "sqcqp/search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

namespace sqcqp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> FirstPrimes(int count) {
  std::vector<int> primes;
  for (int candidate = 2; static_cast<int>(primes.size()) < count;
       ++candidate) {
    bool is_prime = true;
    for (int p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(candidate);
  }
  return primes;
}

double MaxValue(std::span<const Functional> fs, const Vector& x) {
  double v = -kInf;
  for (const auto& f : fs) v = std::max(v, f(x, nullptr));
  return v;
}

// Smoothed maximum tau * log(sum exp(f_k / tau)) and its gradient.
double SmoothMax(std::span<const Functional> fs, const Vector& x, double tau,
                 Vector* grad, std::vector<double>& values,
                 std::vector<Vector>& grads) {
  const size_t m = fs.size();
  double vmax = -kInf;
  for (size_t k = 0; k < m; ++k) {
    values[k] = fs[k](x, grad != nullptr ? &grads[k] : nullptr);
    vmax = std::max(vmax, values[k]);
  }
  double total = 0.0;
  for (size_t k = 0; k < m; ++k) total += std::exp((values[k] - vmax) / tau);
  if (grad != nullptr) {
    grad->setZero(x.size());
    for (size_t k = 0; k < m; ++k) {
      *grad += (std::exp((values[k] - vmax) / tau) / total) * grads[k];
    }
  }
  return vmax + tau * std::log(total);
}

Vector ClampToBox(Vector x, double box) {
  return x.cwiseMax(-box).cwiseMin(box);
}

// Armijo gradient descent on the smoothed maximum over a ladder of
// temperatures. Returns early once phi(x) < -margin.
void Descend(std::span<const Functional> fs, const SearchConfig& cfg,
             Vector& x, double& phi, int64_t& evaluations) {
  const size_t m = fs.size();
  std::vector<double> values(m);
  std::vector<Vector> grads(m);
  const double scale = std::max(1.0, std::abs(phi));
  const double temperatures[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-6};
  Vector g(x.size());
  for (double rel_tau : temperatures) {
    const double tau = rel_tau * scale;
    double step = 1.0;
    for (int it = 0; it < cfg.descent_iterations; ++it) {
      const double value = SmoothMax(fs, x, tau, &g, values, grads);
      ++evaluations;
      const double gnorm2 = g.squaredNorm();
      if (gnorm2 == 0.0 || !std::isfinite(gnorm2)) break;
      step = std::min(step * 2.0, 1e6);
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        Vector trial = ClampToBox(x - step * g, cfg.box);
        const double trial_value = SmoothMax(fs, trial, tau, nullptr, values,
                                             grads);
        ++evaluations;
        if (trial_value <= value - 1e-4 * step * gnorm2) {
          x = std::move(trial);
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      const double now = MaxValue(fs, x);
      phi = now;
      if (now < -cfg.strict_margin) return;
      if (!accepted) break;
    }
  }
}

}  // namespace

HaltonSequence::HaltonSequence(int dim, uint64_t seed)
    : bases_(FirstPrimes(dim)), shift_(dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < dim; ++i) shift_[i] = seed == 0 ? 0.0 : unit(rng);
}

Vector HaltonSequence::Point(int64_t index) const {
  Vector p(static_cast<int>(bases_.size()));
  for (size_t i = 0; i < bases_.size(); ++i) {
    const int base = bases_[i];
    double f = 1.0;
    double r = 0.0;
    for (int64_t j = index; j > 0; j /= base) {
      f /= base;
      r += f * static_cast<double>(j % base);
    }
    r += shift_[i];
    p[static_cast<int>(i)] = r - std::floor(r);
  }
  return p;
}

Functional MakeFunctional(const ScalarQuadratic& q) {
  return [q](const Vector& x, Vector* grad) {
    if (grad != nullptr) *grad = Grad(q, x);
    return Eval(q, x);
  };
}

std::vector<Functional> MakeFunctionals(std::span<const ScalarQuadratic> qs) {
  std::vector<Functional> fs;
  fs.reserve(qs.size());
  for (const auto& q : qs) fs.push_back(MakeFunctional(q));
  return fs;
}

MaxSearchResult MinimizeMax(std::span<const Functional> fs, int n,
                            const SearchConfig& cfg) {
  MaxSearchResult result;
  result.best_point = Vector::Zero(n);
  if (fs.empty()) {
    result.best_value = -kInf;
    result.strict = true;
    return result;
  }

  // Candidates: the origin first, then Halton samples over the box.
  std::vector<std::pair<double, Vector>> pool;
  pool.reserve(cfg.samples + 1);
  pool.emplace_back(MaxValue(fs, result.best_point), result.best_point);
  ++result.evaluations;
  HaltonSequence halton(n, cfg.seed);
  for (int i = 1; i <= cfg.samples; ++i) {
    Vector x = (2.0 * halton.Point(i).array() - 1.0).matrix() * cfg.box;
    const double v = MaxValue(fs, x);
    ++result.evaluations;
    pool.emplace_back(v, std::move(x));
  }
  // Stable so that ties keep sampling order.
  std::stable_sort(pool.begin(), pool.end(), [](const auto& l, const auto& r) {
    return l.first < r.first;
  });
  result.best_point = pool.front().second;
  result.best_value = pool.front().first;
  if (result.best_value < -cfg.strict_margin) {
    result.strict = true;
    return result;
  }

  const int starts = std::min<int>(cfg.starts, static_cast<int>(pool.size()));
  for (int s = 0; s < starts; ++s) {
    Vector x = pool[s].second;
    double phi = pool[s].first;
    Descend(fs, cfg, x, phi, result.evaluations);
    if (phi < result.best_value) {
      result.best_value = phi;
      result.best_point = x;
    }
    if (result.best_value < -cfg.strict_margin) break;
  }
  result.strict = result.best_value < -cfg.strict_margin;
  return result;
}

std::optional<Vector> FindStrictPointOf(std::span<const Functional> fs, int n,
                                        const SearchConfig& cfg) {
  MaxSearchResult r = MinimizeMax(fs, n, cfg);
  if (!r.strict) return std::nullopt;
  return r.best_point;
}

}  // namespace sqcqp
