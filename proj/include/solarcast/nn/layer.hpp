#pragma once

#include <memory>
#include <string>
#include <vector>

#include "solarcast/core/errors.hpp"
#include "solarcast/core/rng.hpp"
#include "solarcast/nn/tensor.hpp"

namespace solarcast::nn {

// Per-forward context. Dropout is active only when training is set; the Rng
// supplies its masks so a seeded run is fully reproducible.
struct RunCtx {
    bool training = false;
    Rng* rng = nullptr;
    const std::vector<Tensor>* inputs = nullptr; // sample input matrices
};

struct ParamRef {
    std::string name;
    Tensor* tensor; // has grad buffer allocated
};

// One node of the computation graph. Layers cache whatever the adjoint needs
// during forward; each layer instance appears exactly once in a network.
class Layer {
public:
    virtual ~Layer() = default;
    virtual std::string_view kind() const = 0;
    virtual Tensor forward(const std::vector<const Tensor*>& in, RunCtx& ctx) = 0;
    // Returns one gradient per graph input; parameter gradients accumulate
    // into the parameter tensors.
    virtual std::vector<Tensor> backward(const Tensor& grad_out) = 0;
    virtual void collect_params(const std::string& prefix,
                                std::vector<ParamRef>& out) {
        (void)prefix;
        (void)out;
    }
};

// Reads the idx-th input matrix of the current sample.
class InputLayer final : public Layer {
public:
    InputLayer(std::size_t idx, std::size_t rows, std::size_t cols)
        : idx_(idx), rows_(rows), cols_(cols) {}

    std::string_view kind() const override { return "input"; }

    Tensor forward(const std::vector<const Tensor*>&, RunCtx& ctx) override {
        if (ctx.inputs == nullptr || idx_ >= ctx.inputs->size())
            throw UsageError("input " + std::to_string(idx_) +
                             ": sample has too few input matrices");
        const Tensor& t = (*ctx.inputs)[idx_];
        if (t.rows() != rows_ || t.cols() != cols_)
            throw DataError("input " + std::to_string(idx_) + ": expected " +
                            std::to_string(rows_) + "x" + std::to_string(cols_) +
                            ", got " + t.shape_str());
        return t;
    }

    std::vector<Tensor> backward(const Tensor&) override { return {}; }

private:
    std::size_t idx_, rows_, cols_;
};

// Feature-axis concatenation: matrices t x k_i -> t x sum(k_i); vectors
// concatenate end to end.
class ConcatLayer final : public Layer {
public:
    std::string_view kind() const override { return "concat"; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        if (in.empty())
            throw UsageError("concat: no inputs");
        in_shapes_.clear();
        bool matrix = in[0]->ndim() == 2;
        std::size_t t = in[0]->rows();
        std::size_t total = 0;
        for (const Tensor* x : in) {
            if ((x->ndim() == 2) != matrix || (matrix && x->rows() != t))
                throw DataError("concat: row mismatch, " + in[0]->shape_str() +
                                " vs " + x->shape_str());
            in_shapes_.push_back(x->shape());
            total += matrix ? x->cols() : x->size();
        }
        Tensor out = matrix ? Tensor::matrix(t, total) : Tensor::vector(total);
        if (matrix) {
            for (std::size_t r = 0; r < t; ++r) {
                std::size_t off = 0;
                for (const Tensor* x : in) {
                    for (std::size_t c = 0; c < x->cols(); ++c)
                        out.at(r, off + c) = x->at(r, c);
                    off += x->cols();
                }
            }
        } else {
            std::size_t off = 0;
            for (const Tensor* x : in) {
                for (std::size_t i = 0; i < x->size(); ++i)
                    out[off + i] = (*x)[i];
                off += x->size();
            }
        }
        return out;
    }

    std::vector<Tensor> backward(const Tensor& g) override {
        std::vector<Tensor> grads;
        bool matrix = in_shapes_[0].size() == 2;
        std::size_t off = 0;
        for (const auto& shape : in_shapes_) {
            Tensor gi(shape);
            if (matrix) {
                for (std::size_t r = 0; r < gi.rows(); ++r)
                    for (std::size_t c = 0; c < gi.cols(); ++c)
                        gi.at(r, c) = g.at(r, off + c);
                off += gi.cols();
            } else {
                for (std::size_t i = 0; i < gi.size(); ++i)
                    gi[i] = g[off + i];
                off += gi.size();
            }
            grads.push_back(std::move(gi));
        }
        return grads;
    }

private:
    std::vector<std::vector<std::size_t>> in_shapes_;
};

class ReluLayer final : public Layer {
public:
    std::string_view kind() const override { return "relu"; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        const Tensor& x = *in[0];
        mask_.assign(x.size(), 0.0);
        Tensor out(x.shape());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] > 0.0) {
                out[i] = x[i];
                mask_[i] = 1.0;
            }
        }
        return out;
    }

    std::vector<Tensor> backward(const Tensor& g) override {
        Tensor gi(g.shape());
        for (std::size_t i = 0; i < g.size(); ++i)
            gi[i] = g[i] * mask_[i];
        return {std::move(gi)};
    }

private:
    std::vector<double> mask_;
};

// Inverted dropout: surviving activations are scaled by 1/(1-rate) at train
// time so inference applies no rescaling.
class DropoutLayer final : public Layer {
public:
    explicit DropoutLayer(double rate) : rate_(rate) {
        if (rate < 0.0 || rate >= 1.0)
            throw ConfigError("dropout rate must lie in [0,1)");
    }

    std::string_view kind() const override { return "dropout"; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx& ctx) override {
        const Tensor& x = *in[0];
        Tensor out(x.shape());
        mask_.assign(x.size(), 1.0);
        if (ctx.training && rate_ > 0.0) {
            if (ctx.rng == nullptr)
                throw UsageError("dropout: training forward needs an rng");
            double keep = 1.0 - rate_;
            for (std::size_t i = 0; i < x.size(); ++i)
                mask_[i] = (ctx.rng->uniform() >= rate_) ? 1.0 / keep : 0.0;
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = x[i] * mask_[i];
        return out;
    }

    std::vector<Tensor> backward(const Tensor& g) override {
        Tensor gi(g.shape());
        for (std::size_t i = 0; i < g.size(); ++i)
            gi[i] = g[i] * mask_[i];
        return {std::move(gi)};
    }

    double rate() const { return rate_; }

private:
    double rate_;
    std::vector<double> mask_;
};

// t x F feature map -> flat vector of length t*F, row-major.
class FlattenLayer final : public Layer {
public:
    std::string_view kind() const override { return "flatten"; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        in_shape_ = in[0]->shape();
        Tensor out = *in[0];
        out.reshape({out.size()});
        return out;
    }

    std::vector<Tensor> backward(const Tensor& g) override {
        Tensor gi = g;
        gi.reshape(in_shape_);
        return {std::move(gi)};
    }

private:
    std::vector<std::size_t> in_shape_;
};

enum class Activation { Linear, Relu };

// Fully connected layer on vectors: y = act(W x + b), W stored row-major
// [out][in].
class DenseLayer final : public Layer {
public:
    DenseLayer(std::size_t in, std::size_t out, Activation act)
        : W(Tensor::matrix(out, in)), b(Tensor::vector(out)), in_(in),
          out_(out), act_(act) {
        W.ensure_grad();
        b.ensure_grad();
    }

    std::string_view kind() const override { return "dense"; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        const Tensor& x = *in[0];
        if (x.size() != in_)
            throw DataError("dense: expected input of length " +
                            std::to_string(in_) + ", got " + x.shape_str());
        x_ = x;
        Tensor z = Tensor::vector(out_);
        for (std::size_t o = 0; o < out_; ++o) {
            double acc = b[o];
            const double* w = &W.values[o * in_];
            for (std::size_t i = 0; i < in_; ++i)
                acc += w[i] * x[i];
            z[o] = acc;
        }
        z_ = z;
        if (act_ == Activation::Relu)
            for (auto& v : z.values)
                v = v > 0.0 ? v : 0.0;
        return z;
    }

    std::vector<Tensor> backward(const Tensor& g) override {
        Tensor dz = g;
        if (act_ == Activation::Relu)
            for (std::size_t o = 0; o < out_; ++o)
                if (z_[o] <= 0.0)
                    dz[o] = 0.0;
        Tensor gi = Tensor::vector(in_);
        for (std::size_t o = 0; o < out_; ++o) {
            double d = dz[o];
            b.grad[o] += d;
            double* wg = &W.grad[o * in_];
            const double* w = &W.values[o * in_];
            for (std::size_t i = 0; i < in_; ++i) {
                wg[i] += d * x_[i];
                gi[i] += d * w[i];
            }
        }
        return {std::move(gi)};
    }

    void collect_params(const std::string& prefix,
                        std::vector<ParamRef>& out) override {
        out.push_back({prefix + ".W", &W});
        out.push_back({prefix + ".b", &b});
    }

    Tensor W, b;

private:
    std::size_t in_, out_;
    Activation act_;
    Tensor x_, z_;
};

// Max pooling along the time axis; channels are pooled independently.
// Output rows = floor(t / pool). Ties route the gradient to the earliest
// index.
class MaxPool1dLayer final : public Layer {
public:
    explicit MaxPool1dLayer(std::size_t pool) : pool_(pool) {
        if (pool == 0)
            throw ConfigError("max pool size must be >= 1");
    }

    std::string_view kind() const override { return "maxpool"; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        const Tensor& x = *in[0];
        in_shape_ = x.shape();
        std::size_t t_out = x.rows() / pool_;
        if (t_out == 0)
            throw ConfigError("max pool of size " + std::to_string(pool_) +
                              " empties a length-" + std::to_string(x.rows()) +
                              " input");
        Tensor out = Tensor::matrix(t_out, x.cols());
        argmax_.assign(out.size(), 0);
        for (std::size_t r = 0; r < t_out; ++r) {
            for (std::size_t c = 0; c < x.cols(); ++c) {
                std::size_t best = r * pool_;
                for (std::size_t j = 1; j < pool_; ++j)
                    if (x.at(r * pool_ + j, c) > x.at(best, c))
                        best = r * pool_ + j;
                out.at(r, c) = x.at(best, c);
                argmax_[r * x.cols() + c] = best;
            }
        }
        return out;
    }

    std::vector<Tensor> backward(const Tensor& g) override {
        Tensor gi(in_shape_);
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t c = 0; c < g.cols(); ++c)
                gi.at(argmax_[r * g.cols() + c], c) += g.at(r, c);
        return {std::move(gi)};
    }

private:
    std::size_t pool_;
    std::vector<std::size_t> in_shape_;
    std::vector<std::size_t> argmax_;
};

// Elementwise sum of two same-shape inputs (residual skip join).
class AddLayer final : public Layer {
public:
    std::string_view kind() const override { return "add"; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        const Tensor& a = *in[0];
        const Tensor& b = *in[1];
        if (!a.same_shape(b))
            throw DataError("add: shape mismatch " + a.shape_str() + " vs " +
                            b.shape_str());
        Tensor out = a;
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += b[i];
        return out;
    }

    std::vector<Tensor> backward(const Tensor& g) override { return {g, g}; }
};

// Picks the last time step of a t x d sequence (stacked-LSTM readout).
class LastRowLayer final : public Layer {
public:
    std::string_view kind() const override { return "lastrow"; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        const Tensor& x = *in[0];
        in_shape_ = x.shape();
        Tensor out = Tensor::vector(x.cols());
        for (std::size_t c = 0; c < x.cols(); ++c)
            out[c] = x.at(x.rows() - 1, c);
        return out;
    }

    std::vector<Tensor> backward(const Tensor& g) override {
        Tensor gi(in_shape_);
        for (std::size_t c = 0; c < g.size(); ++c)
            gi.at(gi.rows() - 1, c) = g[c];
        return {std::move(gi)};
    }

private:
    std::vector<std::size_t> in_shape_;
};

} // namespace solarcast::nn
