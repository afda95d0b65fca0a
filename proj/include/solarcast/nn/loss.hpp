#pragma once

#include "solarcast/nn/tensor.hpp"

namespace solarcast::nn {

// Mean squared error and its gradient w.r.t. the prediction:
//   L = (1/n) sum (p_i - t_i)^2,   dL/dp_i = 2 (p_i - t_i) / n
struct MseResult {
    double loss;
    Tensor grad;
};

inline MseResult mse_loss(const Tensor& pred, const Tensor& target) {
    if (!pred.same_shape(target))
        throw DataError("mse: shape mismatch " + pred.shape_str() + " vs " +
                        target.shape_str());
    MseResult r{0.0, Tensor(pred.shape())};
    double n = static_cast<double>(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double d = pred[i] - target[i];
        r.loss += d * d;
        r.grad[i] = 2.0 * d / n;
    }
    r.loss /= n;
    return r;
}

} // namespace solarcast::nn
