#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "solarcast/nn/loss.hpp"
#include "solarcast/nn/network.hpp"
#include "solarcast/nn/train.hpp"

namespace solarcast::nn {

struct GradCheckResult {
    double max_rel_err = 0.0;
    std::size_t checked = 0;
};

// Compares analytic parameter gradients of mse(net(inputs), target) against
// central finite differences on a random subsample of parameters. Dropout is
// inactive (non-training forward), so the loss is smooth in the parameters.
// Relative error uses |a - n| / max(|a| + |n|, 1e-6); the floor keeps
// roundoff noise on near-zero gradients from registering as failures.
inline GradCheckResult grad_check(Network& net, const TrainSample& sample,
                                  double eps = 1e-5,
                                  std::size_t max_params = 200,
                                  std::uint64_t seed = 12345) {
    if (!(eps > 0.0 && eps <= 1e-3))
        throw ConfigError("grad_check: eps must lie in (0, 1e-3]");
    net.zero_grads();
    Tensor pred = net.forward(sample.inputs, /*training=*/false);
    MseResult l = mse_loss(pred, sample.target);
    net.backward(l.grad);

    struct Slot {
        Tensor* t;
        std::size_t i;
    };
    std::vector<Slot> slots;
    for (const auto& p : net.parameters())
        for (std::size_t i = 0; i < p.tensor->size(); ++i)
            slots.push_back({p.tensor, i});

    std::vector<std::size_t> order(slots.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order.begin(), order.end());
    std::size_t n_check = std::min(max_params, slots.size());

    GradCheckResult res;
    for (std::size_t oi = 0; oi < n_check; ++oi) {
        Slot s = slots[order[oi]];
        double saved = s.t->values[s.i];
        double analytic = s.t->grad[s.i];
        s.t->values[s.i] = saved + eps;
        double lp = mse_loss(net.forward(sample.inputs), sample.target).loss;
        s.t->values[s.i] = saved - eps;
        double lm = mse_loss(net.forward(sample.inputs), sample.target).loss;
        s.t->values[s.i] = saved;
        double numeric = (lp - lm) / (2.0 * eps);
        double rel = std::abs(analytic - numeric) /
                     std::max(std::abs(analytic) + std::abs(numeric), 1e-6);
        res.max_rel_err = std::max(res.max_rel_err, rel);
        ++res.checked;
    }
    return res;
}

} // namespace solarcast::nn
