#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "solarcast/nn/layer.hpp"

namespace solarcast::nn {

// A static DAG of layers. Nodes are appended in topological order (builders
// construct them input-to-output), so forward is a single sweep and backward
// the reverse sweep with gradient accumulation at fan-out nodes.
class Network {
public:
    int add(std::unique_ptr<Layer> layer, std::vector<int> inputs,
            std::string name) {
        for (int i : inputs)
            if (i < 0 || i >= static_cast<int>(nodes_.size()))
                throw UsageError("network: node '" + name +
                                 "' wired to unknown node");
        nodes_.push_back({std::move(layer), std::move(inputs), name});
        by_name_[name] = static_cast<int>(nodes_.size()) - 1;
        params_dirty_ = true;
        return static_cast<int>(nodes_.size()) - 1;
    }

    int add_input(std::size_t index, std::size_t rows, std::size_t cols,
                  std::string name) {
        return add(std::make_unique<InputLayer>(index, rows, cols), {},
                   std::move(name));
    }

    void set_output(int node) { output_ = node; }
    int output_node() const { return output_; }

    std::size_t node_count() const { return nodes_.size(); }

    int node_index(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end())
            throw UsageError("network: no node named '" + name + "'");
        return it->second;
    }

    Layer& layer(int node) { return *nodes_[node].layer; }
    Layer& layer(const std::string& name) { return *nodes_[node_index(name)].layer; }

    // Output of a node from the most recent forward; used by shape probes.
    const Tensor& node_output(int node) const { return outputs_[node]; }
    const Tensor& node_output(const std::string& name) const {
        return outputs_[node_index(name)];
    }

    Tensor forward(const std::vector<Tensor>& inputs, bool training = false,
                   Rng* rng = nullptr) {
        if (output_ < 0)
            throw UsageError("network: output node not set");
        RunCtx ctx{training, rng, &inputs};
        outputs_.resize(nodes_.size());
        std::vector<const Tensor*> args;
        for (std::size_t n = 0; n < nodes_.size(); ++n) {
            args.clear();
            for (int i : nodes_[n].in)
                args.push_back(&outputs_[i]);
            outputs_[n] = nodes_[n].layer->forward(args, ctx);
        }
        has_forward_ = true;
        return outputs_[output_];
    }

    // Accumulates parameter gradients for the most recent forward.
    void backward(const Tensor& out_grad) {
        if (!has_forward_)
            throw UsageError("network backward: no cached forward");
        std::vector<Tensor> node_grads(nodes_.size());
        std::vector<bool> seeded(nodes_.size(), false);
        node_grads[output_] = out_grad;
        seeded[output_] = true;
        for (std::size_t n = nodes_.size(); n-- > 0;) {
            if (!seeded[n])
                continue;
            auto in_grads = nodes_[n].layer->backward(node_grads[n]);
            for (std::size_t j = 0; j < nodes_[n].in.size(); ++j) {
                int src = nodes_[n].in[j];
                if (!seeded[src]) {
                    node_grads[src] = std::move(in_grads[j]);
                    seeded[src] = true;
                } else {
                    Tensor& acc = node_grads[src];
                    for (std::size_t i = 0; i < acc.size(); ++i)
                        acc[i] += in_grads[j][i];
                }
            }
        }
    }

    const std::vector<ParamRef>& parameters() {
        if (params_dirty_) {
            params_.clear();
            for (auto& n : nodes_)
                n.layer->collect_params(n.name, params_);
            params_dirty_ = false;
        }
        return params_;
    }

    std::size_t parameter_count() {
        std::size_t n = 0;
        for (const auto& p : parameters())
            n += p.tensor->size();
        return n;
    }

    void zero_grads() {
        for (const auto& p : parameters())
            p.tensor->zero_grad();
    }

    // Flat snapshot of all parameter values in declaration order.
    std::vector<double> param_values() {
        std::vector<double> out;
        for (const auto& p : parameters())
            out.insert(out.end(), p.tensor->values.begin(),
                       p.tensor->values.end());
        return out;
    }

    void set_param_values(const std::vector<double>& flat) {
        std::size_t off = 0;
        for (const auto& p : parameters()) {
            if (off + p.tensor->size() > flat.size())
                throw DataError("network: parameter blob too short");
            std::copy(flat.begin() + off, flat.begin() + off + p.tensor->size(),
                      p.tensor->values.begin());
            off += p.tensor->size();
        }
        if (off != flat.size())
            throw DataError("network: parameter blob size mismatch, expected " +
                            std::to_string(off) + " doubles, got " +
                            std::to_string(flat.size()));
    }

private:
    struct Node {
        std::unique_ptr<Layer> layer;
        std::vector<int> in;
        std::string name;
    };

    std::vector<Node> nodes_;
    std::map<std::string, int> by_name_;
    std::vector<Tensor> outputs_;
    std::vector<ParamRef> params_;
    bool params_dirty_ = true;
    bool has_forward_ = false;
    int output_ = -1;
};

} // namespace solarcast::nn
