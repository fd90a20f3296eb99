#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfsel {

enum class WeightFamily { log, smoothed_log, sqrt, linear, geometric };

inline std::string to_string(WeightFamily f) {
  switch (f) {
    case WeightFamily::log: return "log";
    case WeightFamily::smoothed_log: return "smoothed-log";
    case WeightFamily::sqrt: return "sqrt";
    case WeightFamily::linear: return "linear";
    case WeightFamily::geometric: return "geometric";
  }
  throw std::invalid_argument("to_string: unknown weight family");
}

inline WeightFamily weight_family_from_string(const std::string& s) {
  if (s == "log") return WeightFamily::log;
  if (s == "smoothed-log") return WeightFamily::smoothed_log;
  if (s == "sqrt") return WeightFamily::sqrt;
  if (s == "linear") return WeightFamily::linear;
  if (s == "geometric") return WeightFamily::geometric;
  throw std::invalid_argument("unknown weight family: " + s);
}

struct WeightParams {
  double epsilon = 1.0;  // log offset, > 0
  double beta = 0.0;     // linear smoothing term, >= 0
  double scale = 1.0;    // global multiplier, > 0
  double ratio = 0.5;    // geometric ratio, in (0, 1)
};

// Degree-weight function h with its first differences cached up to
// max_degree. h is non-decreasing and concave with h(0) = 0; those three
// properties are what make the induced degree prior submodular, so they are
// validated at construction.
//
// The differences diff(k) = h(k+1) - h(k) are computed from closed forms and
// h is stored as their prefix sums, so evaluating the relaxation on a 0/1
// adjacency matrix reproduces the combinatorial prior bit for bit. The log
// family is shifted by -log(epsilon) so that h(0) = 0 holds for every
// epsilon; the shift leaves all differences unchanged.
//
// Instances are immutable after construction and safe to share across
// threads.
class WeightSequence {
 public:
  WeightSequence(WeightFamily family, const WeightParams& params, int max_degree)
      : family_(family), params_(params), max_degree_(max_degree) {
    if (max_degree < 1) throw std::invalid_argument("weights: max_degree must be >= 1");
    if (!(params.scale > 0.0)) throw std::invalid_argument("weights: scale must be > 0");
    switch (family) {
      case WeightFamily::log:
      case WeightFamily::smoothed_log:
        if (!(params.epsilon > 0.0)) throw std::invalid_argument("weights: epsilon must be > 0");
        break;
      case WeightFamily::geometric:
        if (!(params.ratio > 0.0 && params.ratio < 1.0))
          throw std::invalid_argument("weights: geometric ratio must be in (0, 1)");
        break;
      default:
        break;
    }
    if (family == WeightFamily::smoothed_log || family == WeightFamily::sqrt) {
      if (!(params.beta >= 0.0)) throw std::invalid_argument("weights: beta must be >= 0");
    }

    diff_.resize(static_cast<std::size_t>(max_degree));
    const double scale = params.scale;
    switch (family) {
      case WeightFamily::log:
      case WeightFamily::smoothed_log: {
        const double beta = family == WeightFamily::smoothed_log ? params.beta : 0.0;
        for (int k = 0; k < max_degree; ++k)
          diff_[k] = scale * (std::log1p(1.0 / (k + params.epsilon)) + beta);
        break;
      }
      case WeightFamily::sqrt:
        for (int k = 0; k < max_degree; ++k)
          diff_[k] = scale * (1.0 / (std::sqrt(double(k) + 2.0) + std::sqrt(double(k) + 1.0)) + params.beta);
        break;
      case WeightFamily::linear:
        for (int k = 0; k < max_degree; ++k) diff_[k] = scale;
        break;
      case WeightFamily::geometric: {
        double pow_k = 1.0;  // ratio^k
        for (int k = 0; k < max_degree; ++k) {
          diff_[k] = scale * (1.0 - params.ratio) * pow_k;
          pow_k *= params.ratio;
        }
        break;
      }
    }

    for (int k = 0; k < max_degree; ++k) {
      if (!(diff_[k] >= 0.0))
        throw std::domain_error("weights: tractability violation, h must be non-decreasing");
      if (k > 0 && diff_[k] > diff_[k - 1] * (1.0 + 1e-12) + 1e-15)
        throw std::domain_error("weights: tractability violation, h must be concave");
    }

    h_.resize(static_cast<std::size_t>(max_degree) + 1);
    h_[0] = 0.0;
    for (int k = 0; k < max_degree; ++k) h_[k + 1] = h_[k] + diff_[k];
  }

  WeightFamily family() const { return family_; }
  const WeightParams& params() const { return params_; }
  int max_degree() const { return max_degree_; }

  // h(k) for 0 <= k <= max_degree.
  double h(int k) const {
    if (k < 0 || k > max_degree_) throw std::out_of_range("weights: h index out of range");
    return h_[static_cast<std::size_t>(k)];
  }

  // diff(k) = h(k+1) - h(k) for 0 <= k < max_degree.
  double diff(int k) const {
    if (k < 0 || k >= max_degree_) throw std::out_of_range("weights: diff index out of range");
    return diff_[static_cast<std::size_t>(k)];
  }

  const std::vector<double>& diffs() const { return diff_; }

 private:
  WeightFamily family_;
  WeightParams params_;
  int max_degree_;
  std::vector<double> h_;
  std::vector<double> diff_;
};

inline WeightSequence make_weights(WeightFamily family, const WeightParams& params, int max_degree) {
  return WeightSequence(family, params, max_degree);
}

inline double weight_diff(const WeightSequence& w, int k) { return w.diff(k); }

}  // namespace sfsel
