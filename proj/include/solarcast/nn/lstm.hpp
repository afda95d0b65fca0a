#pragma once

#include <cmath>
#include <vector>

#include "solarcast/nn/layer.hpp"

namespace solarcast::nn {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Gate weights of one LSTM layer. W_*h act on the previous hidden state
// (d x d), W_*x on the input (d x in), biases are length d. The cell update is
//
//   i = sigmoid(W_ih h + W_ix x + b_i)
//   o = sigmoid(W_oh h + W_ox x + b_o)
//   f = sigmoid(W_fh h + W_fx x + b_f)
//   C = i (.) tanh(W_ch h + W_cx x + b_c) + f (.) C_prev
//   h = o (.) tanh(C)
struct LstmParams {
    Tensor Wih, Woh, Wfh, Wch; // d x d
    Tensor Wix, Wox, Wfx, Wcx; // d x in
    Tensor bi, bo, bf, bc;     // d

    LstmParams(std::size_t in, std::size_t d)
        : Wih(Tensor::matrix(d, d)), Woh(Tensor::matrix(d, d)),
          Wfh(Tensor::matrix(d, d)), Wch(Tensor::matrix(d, d)),
          Wix(Tensor::matrix(d, in)), Wox(Tensor::matrix(d, in)),
          Wfx(Tensor::matrix(d, in)), Wcx(Tensor::matrix(d, in)),
          bi(Tensor::vector(d)), bo(Tensor::vector(d)), bf(Tensor::vector(d)),
          bc(Tensor::vector(d)) {}

    std::vector<Tensor*> all() {
        return {&Wih, &Woh, &Wfh, &Wch, &Wix, &Wox, &Wfx, &Wcx,
                &bi,  &bo,  &bf,  &bc};
    }
};

namespace detail {
inline void affine(const Tensor& Wh, const Tensor& Wx, const Tensor& bias,
                   const std::vector<double>& h, const double* x,
                   std::size_t in, std::vector<double>& out) {
    std::size_t d = bias.size();
    for (std::size_t r = 0; r < d; ++r) {
        double acc = bias[r];
        for (std::size_t c = 0; c < d; ++c)
            acc += Wh.at(r, c) * h[c];
        for (std::size_t c = 0; c < in; ++c)
            acc += Wx.at(r, c) * x[c];
        out[r] = acc;
    }
}
} // namespace detail

// One LSTM cell step. Exposed standalone so the gate equations can be probed
// directly; the layer below unrolls it.
inline void lstm_cell_step(const std::vector<double>& x,
                           const std::vector<double>& h_prev,
                           const std::vector<double>& c_prev,
                           const LstmParams& p, std::vector<double>& h_out,
                           std::vector<double>& c_out) {
    std::size_t d = p.bi.size();
    std::size_t in = x.size();
    std::vector<double> gi(d), go(d), gf(d), gc(d);
    detail::affine(p.Wih, p.Wix, p.bi, h_prev, x.data(), in, gi);
    detail::affine(p.Woh, p.Wox, p.bo, h_prev, x.data(), in, go);
    detail::affine(p.Wfh, p.Wfx, p.bf, h_prev, x.data(), in, gf);
    detail::affine(p.Wch, p.Wcx, p.bc, h_prev, x.data(), in, gc);
    h_out.resize(d);
    c_out.resize(d);
    for (std::size_t r = 0; r < d; ++r) {
        double i = sigmoid(gi[r]);
        double o = sigmoid(go[r]);
        double f = sigmoid(gf[r]);
        double ct = i * std::tanh(gc[r]) + f * c_prev[r];
        c_out[r] = ct;
        h_out[r] = o * std::tanh(ct);
    }
}

// Unrolled LSTM over a t x in sequence; emits the full t x d hidden sequence.
// h_0 = C_0 = 0. Backward is plain BPTT over the cached gate activations.
class LstmLayer final : public Layer {
public:
    LstmLayer(std::size_t in, std::size_t d) : in_(in), d_(d), p_(in, d) {
        for (Tensor* t : p_.all())
            t->ensure_grad();
    }

    std::string_view kind() const override { return "lstm"; }

    LstmParams& params() { return p_; }

    Tensor forward(const std::vector<const Tensor*>& in, RunCtx&) override {
        const Tensor& x = *in[0];
        if (x.ndim() != 2 || x.cols() != in_)
            throw DataError("lstm: expected t x " + std::to_string(in_) +
                            " input, got " + x.shape_str());
        std::size_t T = x.rows();
        x_ = x;
        steps_.assign(T, Step(d_));
        std::vector<double> h(d_, 0.0), c(d_, 0.0);
        Tensor out = Tensor::matrix(T, d_);
        for (std::size_t t = 0; t < T; ++t) {
            Step& s = steps_[t];
            s.h_prev = h;
            s.c_prev = c;
            detail::affine(p_.Wih, p_.Wix, p_.bi, h, &x.values[t * in_], in_, s.pre);
            for (std::size_t r = 0; r < d_; ++r)
                s.i[r] = sigmoid(s.pre[r]);
            detail::affine(p_.Woh, p_.Wox, p_.bo, h, &x.values[t * in_], in_, s.pre);
            for (std::size_t r = 0; r < d_; ++r)
                s.o[r] = sigmoid(s.pre[r]);
            detail::affine(p_.Wfh, p_.Wfx, p_.bf, h, &x.values[t * in_], in_, s.pre);
            for (std::size_t r = 0; r < d_; ++r)
                s.f[r] = sigmoid(s.pre[r]);
            detail::affine(p_.Wch, p_.Wcx, p_.bc, h, &x.values[t * in_], in_, s.pre);
            for (std::size_t r = 0; r < d_; ++r)
                s.ct[r] = std::tanh(s.pre[r]);
            for (std::size_t r = 0; r < d_; ++r) {
                c[r] = s.i[r] * s.ct[r] + s.f[r] * s.c_prev[r];
                s.c[r] = c[r];
                s.tc[r] = std::tanh(c[r]);
                h[r] = s.o[r] * s.tc[r];
                out.at(t, r) = h[r];
            }
        }
        return out;
    }

    std::vector<Tensor> backward(const Tensor& gy) override {
        std::size_t T = steps_.size();
        Tensor gx = Tensor::matrix(T, in_);
        std::vector<double> dh(d_, 0.0), dc(d_, 0.0);
        std::vector<double> dgi(d_), dgo(d_), dgf(d_), dgc(d_);
        for (std::size_t ti = T; ti-- > 0;) {
            const Step& s = steps_[ti];
            for (std::size_t r = 0; r < d_; ++r) {
                double dht = gy.at(ti, r) + dh[r];
                double dot = dht * s.tc[r];
                double dct = dc[r] + dht * s.o[r] * (1.0 - s.tc[r] * s.tc[r]);
                double dit = dct * s.ct[r];
                double dctilde = dct * s.i[r];
                double dft = dct * s.c_prev[r];
                dc[r] = dct * s.f[r];
                dgi[r] = dit * s.i[r] * (1.0 - s.i[r]);
                dgo[r] = dot * s.o[r] * (1.0 - s.o[r]);
                dgf[r] = dft * s.f[r] * (1.0 - s.f[r]);
                dgc[r] = dctilde * (1.0 - s.ct[r] * s.ct[r]);
            }
            accumulate(p_.Wih, p_.Wix, p_.bi, s, ti, dgi);
            accumulate(p_.Woh, p_.Wox, p_.bo, s, ti, dgo);
            accumulate(p_.Wfh, p_.Wfx, p_.bf, s, ti, dgf);
            accumulate(p_.Wch, p_.Wcx, p_.bc, s, ti, dgc);
            for (std::size_t r = 0; r < d_; ++r)
                dh[r] = 0.0;
            for (std::size_t r = 0; r < d_; ++r) {
                for (std::size_t cix = 0; cix < d_; ++cix)
                    dh[cix] += p_.Wih.at(r, cix) * dgi[r] +
                               p_.Woh.at(r, cix) * dgo[r] +
                               p_.Wfh.at(r, cix) * dgf[r] +
                               p_.Wch.at(r, cix) * dgc[r];
                for (std::size_t cix = 0; cix < in_; ++cix)
                    gx.at(ti, cix) += p_.Wix.at(r, cix) * dgi[r] +
                                      p_.Wox.at(r, cix) * dgo[r] +
                                      p_.Wfx.at(r, cix) * dgf[r] +
                                      p_.Wcx.at(r, cix) * dgc[r];
            }
        }
        return {std::move(gx)};
    }

    void collect_params(const std::string& prefix,
                        std::vector<ParamRef>& out) override {
        const char* names[] = {"Wih", "Woh", "Wfh", "Wch", "Wix", "Wox",
                               "Wfx", "Wcx", "bi",  "bo",  "bf",  "bc"};
        auto all = p_.all();
        for (std::size_t i = 0; i < all.size(); ++i)
            out.push_back({prefix + "." + names[i], all[i]});
    }

private:
    struct Step {
        explicit Step(std::size_t d)
            : h_prev(d), c_prev(d), i(d), o(d), f(d), ct(d), c(d), tc(d),
              pre(d) {}
        std::vector<double> h_prev, c_prev, i, o, f, ct, c, tc, pre;
    };

    void accumulate(Tensor& Wh, Tensor& Wx, Tensor& bias, const Step& s,
                    std::size_t t, const std::vector<double>& dg) {
        for (std::size_t r = 0; r < d_; ++r) {
            bias.grad[r] += dg[r];
            for (std::size_t c = 0; c < d_; ++c)
                Wh.grad[r * d_ + c] += dg[r] * s.h_prev[c];
            for (std::size_t c = 0; c < in_; ++c)
                Wx.grad[r * in_ + c] += dg[r] * x_.at(t, c);
        }
    }

    std::size_t in_, d_;
    LstmParams p_;
    Tensor x_;
    std::vector<Step> steps_;
};

} // namespace solarcast::nn
