#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "solarcast/nn/adam.hpp"
#include "solarcast/nn/loss.hpp"
#include "solarcast/nn/network.hpp"

namespace solarcast::nn {

struct TrainSample {
    std::vector<Tensor> inputs;
    Tensor target;
};

struct TrainConfig {
    int max_epochs = 300;
    int batch_size = 16;
    double learning_rate = 1e-3;
    int patience = 50;          // early stop after this many epochs w/o val improvement
    double val_fraction = 0.1;  // chronological tail of the training samples
    std::uint64_t seed = 0;

    void validate() const {
        if (max_epochs < 1)
            throw ConfigError("train: max_epochs must be >= 1");
        if (batch_size < 1)
            throw ConfigError("train: batch_size must be >= 1");
        if (patience < 1)
            throw ConfigError("train: patience must be >= 1");
        if (!(val_fraction > 0.0 && val_fraction < 1.0))
            throw ConfigError("train: val_fraction must lie in (0,1)");
    }
};

struct TrainResult {
    std::vector<double> train_loss; // per epoch, mean over batches
    std::vector<double> val_loss;   // per epoch
    int best_epoch = -1;            // 0-based epoch of the best validation loss
    double best_val = 0.0;
    int epochs_run = 0;
};

inline double eval_mse(Network& net, const std::vector<TrainSample>& samples,
                       std::size_t begin, std::size_t end) {
    double total = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        Tensor pred = net.forward(samples[i].inputs, /*training=*/false);
        total += mse_loss(pred, samples[i].target).loss;
    }
    return total / static_cast<double>(end - begin);
}

// Mini-batch training with seeded shuffling, a chronological validation tail,
// early stopping, and best-parameter restore. Aborts on non-finite loss.
inline TrainResult train(Network& net, const std::vector<TrainSample>& samples,
                         const TrainConfig& cfg) {
    cfg.validate();
    if (samples.empty())
        throw UsageError("train: no samples");
    std::size_t n = samples.size();
    std::size_t n_val = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(cfg.val_fraction * n)));
    if (n_val >= n)
        n_val = n - 1;
    if (n - n_val == 0)
        throw UsageError("train: validation split leaves no training samples");
    std::size_t n_train = n - n_val;

    Rng rng(cfg.seed);
    AdamState adam(net, cfg.learning_rate);
    TrainResult res;
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> best_params = net.param_values();
    res.best_val = eval_mse(net, samples, n_train, n);
    res.best_epoch = -1; // untrained baseline

    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        rng.shuffle(order.begin(), order.end());
        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n_train;
             start += static_cast<std::size_t>(cfg.batch_size)) {
            std::size_t stop =
                std::min(n_train, start + static_cast<std::size_t>(cfg.batch_size));
            net.zero_grads();
            double batch_loss = 0.0;
            double inv = 1.0 / static_cast<double>(stop - start);
            for (std::size_t bi = start; bi < stop; ++bi) {
                const TrainSample& s = samples[order[bi]];
                Tensor pred = net.forward(s.inputs, /*training=*/true, &rng);
                MseResult l = mse_loss(pred, s.target);
                batch_loss += l.loss;
                for (auto& gv : l.grad.values)
                    gv *= inv;
                net.backward(l.grad);
            }
            batch_loss *= inv;
            if (!std::isfinite(batch_loss))
                throw NumericError("train: non-finite loss at epoch " +
                                   std::to_string(epoch));
            adam.step(net);
            epoch_loss += batch_loss;
            ++batches;
        }
        res.train_loss.push_back(epoch_loss / static_cast<double>(batches));
        double val = eval_mse(net, samples, n_train, n);
        if (!std::isfinite(val))
            throw NumericError("train: non-finite validation loss at epoch " +
                               std::to_string(epoch));
        res.val_loss.push_back(val);
        res.epochs_run = epoch + 1;
        if (val < res.best_val) {
            res.best_val = val;
            res.best_epoch = epoch;
            best_params = net.param_values();
        }
        if (epoch - res.best_epoch >= cfg.patience)
            break;
    }
    net.set_param_values(best_params);
    return res;
}

} // namespace solarcast::nn
