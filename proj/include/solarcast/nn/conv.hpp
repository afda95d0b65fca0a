#pragma once

#include <cmath>
#include <iostream>
#include <vector>

#include "solarcast/nn/layer.hpp"

namespace solarcast::nn {

// Dilated causal 1D convolution over a t x c_in sequence, length preserving
// via implicit left zero padding of (k-1)*d steps:
//
//   y[t, o] = b[o] + sum_j sum_c w[j, c, o] * x[t - (k-1-j)*d, c]
//
// with x treated as zero outside [0, t). Tap j = k-1 reads the current step,
// so no output ever depends on a future input.
//
// With weight_norm, the filter for output channel o is reparameterised as
//   w_o = g_o * v_o / ||v_o||
// and gradients flow to g and v. Without it the layer holds w directly
// (plain 1x1 projections, CNN baseline convs).
class CausalConv1dLayer final : public Layer {
public:
    // direction tensor (the plain weights when weight norm is off),
    // per-filter magnitude, bias
    Tensor v, g, b;

    static constexpr double kNormFloor = 1e-12;

    CausalConv1dLayer(std::size_t kernel, std::size_t dilation, std::size_t c_in,
                      std::size_t c_out, bool weight_norm)
        : v(Tensor({kernel, c_in, c_out})), g(Tensor::vector(c_out)),
          b(Tensor::vector(c_out)), k_(kernel), d_(dilation), cin_(c_in),
          cout_(c_out), wn_(weight_norm), w_eff_(Tensor({kernel, c_in, c_out})) {
        if (kernel == 0 || dilation == 0 || c_in == 0 || c_out == 0)
            throw ConfigError("conv: kernel, dilation and channel counts must be >= 1");
        v.ensure_grad();
        b.ensure_grad();
        if (wn_)
            g.ensure_grad();
    }

    std::string_view kind() const override { return "conv"; }

    std::size_t kernel() const { return k_; }
    std::size_t dilation() const { return d_; }
    std::size_t in_channels() const { return cin_; }
    std::size_t out_channels() const { return cout_; }
    bool weight_norm() const { return wn_; }

    // Effective weights; identity copy of v when weight norm is off.
    const Tensor& effective_weights() {
        if (!wn_) {
            w_eff_ = v;
            return w_eff_;
        }
        norms_.assign(cout_, 0.0);
        for (std::size_t o = 0; o < cout_; ++o) {
            double s = 0.0;
            for (std::size_t j = 0; j < k_; ++j)
                for (std::size_t c = 0; c < cin_; ++c) {
                    double x = vat(v, j, c, o);
                    s += x * x;
                }
            double n = std::sqrt(s);
            if (n < kNormFloor) {
                n = kNormFloor;
                if (!floored_)
                    std::cerr << "warning: zero-norm weight direction floored at "
                              << kNormFloor << "\n";
                floored_ = true;
            }
            norms_[o] = n;
        }
        for (std::size_t j = 0; j < k_; ++j)
            for (std::size_t c = 0; c < cin_; ++c)
                for (std::size_t o = 0; o < cout_; ++o)
                    vat(w_eff_, j, c, o) = g[o] * vat(v, j, c, o) / norms_[o];
        return w_eff_;
    }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        const Tensor& x = *in[0];
        if (x.ndim() != 2 || x.cols() != cin_)
            throw DataError("conv: expected t x " + std::to_string(cin_) +
                            " input, got " + x.shape_str());
        x_ = x;
        effective_weights();
        std::size_t t = x.rows();
        Tensor y = Tensor::matrix(t, cout_);
        for (std::size_t ti = 0; ti < t; ++ti) {
            for (std::size_t o = 0; o < cout_; ++o)
                y.at(ti, o) = b[o];
            for (std::size_t j = 0; j < k_; ++j) {
                std::size_t back = (k_ - 1 - j) * d_;
                if (back > ti)
                    continue;
                std::size_t src = ti - back;
                for (std::size_t c = 0; c < cin_; ++c) {
                    double xv = x.at(src, c);
                    if (xv == 0.0)
                        continue;
                    for (std::size_t o = 0; o < cout_; ++o)
                        y.at(ti, o) += vat(w_eff_, j, c, o) * xv;
                }
            }
        }
        return y;
    }

    std::vector<Tensor> backward(const Tensor& gy) override {
        if (x_.size() == 0)
            throw UsageError("conv backward: no cached forward");
        std::size_t t = x_.rows();
        Tensor gx = Tensor::matrix(t, cin_);
        Tensor gw({k_, cin_, cout_});
        for (std::size_t ti = 0; ti < t; ++ti) {
            for (std::size_t o = 0; o < cout_; ++o)
                b.grad[o] += gy.at(ti, o);
            for (std::size_t j = 0; j < k_; ++j) {
                std::size_t back = (k_ - 1 - j) * d_;
                if (back > ti)
                    continue;
                std::size_t src = ti - back;
                for (std::size_t c = 0; c < cin_; ++c) {
                    double xv = x_.at(src, c);
                    double acc = 0.0;
                    for (std::size_t o = 0; o < cout_; ++o) {
                        double go = gy.at(ti, o);
                        vat(gw, j, c, o) += go * xv;
                        acc += go * vat(w_eff_, j, c, o);
                    }
                    gx.at(src, c) += acc;
                }
            }
        }
        if (!wn_) {
            for (std::size_t i = 0; i < v.size(); ++i)
                v.grad[i] += gw[i];
        } else {
            // chain dL/dw -> (dL/dg, dL/dv) through w_o = g_o v_o / ||v_o||
            for (std::size_t o = 0; o < cout_; ++o) {
                double n = norms_[o];
                double dot = 0.0; // gw_o . v_o
                for (std::size_t j = 0; j < k_; ++j)
                    for (std::size_t c = 0; c < cin_; ++c)
                        dot += vat(gw, j, c, o) * vat(v, j, c, o);
                g.grad[o] += dot / n;
                double gn = g[o] / n;
                for (std::size_t j = 0; j < k_; ++j)
                    for (std::size_t c = 0; c < cin_; ++c)
                        v.grad[vidx(j, c, o)] +=
                            gn * (vat(gw, j, c, o) -
                                  dot * vat(v, j, c, o) / (n * n));
            }
        }
        return {std::move(gx)};
    }

    void collect_params(const std::string& prefix,
                        std::vector<ParamRef>& out) override {
        out.push_back({prefix + ".v", &v});
        if (wn_)
            out.push_back({prefix + ".g", &g});
        out.push_back({prefix + ".b", &b});
    }

    bool norm_was_floored() const { return floored_; }

private:
    std::size_t vidx(std::size_t j, std::size_t c, std::size_t o) const {
        return (j * cin_ + c) * cout_ + o;
    }
    double& vat(Tensor& t, std::size_t j, std::size_t c, std::size_t o) const {
        return t.values[vidx(j, c, o)];
    }
    double vat(const Tensor& t, std::size_t j, std::size_t c, std::size_t o) const {
        return t.values[vidx(j, c, o)];
    }

    std::size_t k_, d_, cin_, cout_;
    bool wn_;
    Tensor w_eff_;
    Tensor x_;
    std::vector<double> norms_;
    bool floored_ = false;
};

} // namespace solarcast::nn
