#pragma once

#include <cmath>

#include "solarcast/nn/conv.hpp"
#include "solarcast/nn/lstm.hpp"
#include "solarcast/nn/network.hpp"

namespace solarcast::nn {

namespace detail {
inline void fill_uniform(Tensor& t, double limit, Rng& rng) {
    for (auto& v : t.values)
        v = rng.uniform(-limit, limit);
}
} // namespace detail

// Glorot-uniform initialisation in node order: conv/dense direction tensors
// get U(-sqrt(6/(fan_in+fan_out)), +), weight-norm magnitudes start at the
// initial direction norm (so the effective weights equal v at step 0), and
// biases start at zero.
inline void init_glorot(Network& net, std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t n = 0; n < net.node_count(); ++n) {
        Layer& l = net.layer(static_cast<int>(n));
        if (auto* conv = dynamic_cast<CausalConv1dLayer*>(&l)) {
            double fan_in = static_cast<double>(conv->kernel() * conv->in_channels());
            double fan_out = static_cast<double>(conv->kernel() * conv->out_channels());
            detail::fill_uniform(conv->v, std::sqrt(6.0 / (fan_in + fan_out)), rng);
            if (conv->weight_norm()) {
                std::size_t k = conv->kernel(), cin = conv->in_channels(),
                            cout = conv->out_channels();
                for (std::size_t o = 0; o < cout; ++o) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < k; ++j)
                        for (std::size_t c = 0; c < cin; ++c) {
                            double x = conv->v.values[(j * cin + c) * cout + o];
                            s += x * x;
                        }
                    conv->g[o] = std::sqrt(s);
                }
            }
            std::fill(conv->b.values.begin(), conv->b.values.end(), 0.0);
        } else if (auto* dense = dynamic_cast<DenseLayer*>(&l)) {
            double fan_out = static_cast<double>(dense->W.rows());
            double fan_in = static_cast<double>(dense->W.cols());
            detail::fill_uniform(dense->W, std::sqrt(6.0 / (fan_in + fan_out)), rng);
            std::fill(dense->b.values.begin(), dense->b.values.end(), 0.0);
        } else if (auto* lstm = dynamic_cast<LstmLayer*>(&l)) {
            for (Tensor* t : lstm->params().all()) {
                if (t->ndim() == 2) {
                    double fi = static_cast<double>(t->cols());
                    double fo = static_cast<double>(t->rows());
                    detail::fill_uniform(*t, std::sqrt(6.0 / (fi + fo)), rng);
                } else {
                    std::fill(t->values.begin(), t->values.end(), 0.0);
                }
            }
        }
    }
}

} // namespace solarcast::nn
