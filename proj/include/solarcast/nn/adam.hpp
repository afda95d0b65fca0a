#pragma once

#include <cmath>
#include <vector>

#include "solarcast/nn/network.hpp"

namespace solarcast::nn {

// Adam with bias correction. One state instance per network; moment buffers
// are laid out to match parameters() order.
class AdamState {
public:
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEps = 1e-8;

    AdamState(Network& net, double learning_rate) : lr_(learning_rate) {
        for (const auto& p : net.parameters()) {
            m_.emplace_back(p.tensor->size(), 0.0);
            v_.emplace_back(p.tensor->size(), 0.0);
        }
    }

    double learning_rate() const { return lr_; }
    long step_count() const { return step_; }

    // Applies one update using the gradients currently held by the
    // parameters.
    void step(Network& net) {
        const auto& params = net.parameters();
        if (params.size() != m_.size())
            throw UsageError("adam: state does not match network parameters");
        ++step_;
        double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step_));
        double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step_));
        for (std::size_t pi = 0; pi < params.size(); ++pi) {
            Tensor& t = *params[pi].tensor;
            auto& m = m_[pi];
            auto& v = v_[pi];
            for (std::size_t i = 0; i < t.size(); ++i) {
                double g = t.grad[i];
                m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g;
                v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g * g;
                double mhat = m[i] / c1;
                double vhat = v[i] / c2;
                t.values[i] -= lr_ * mhat / (std::sqrt(vhat) + kEps);
            }
        }
    }

private:
    double lr_;
    long step_ = 0;
    std::vector<std::vector<double>> m_, v_;
};

} // namespace solarcast::nn
