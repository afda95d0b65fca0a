#include "test_util.hpp"

using namespace solarcast;
using namespace solarcast::nn;
using testutil::random_matrix;
using testutil::random_vector;

namespace {

// Reference dilated causal convolution, written against an explicitly
// zero-padded buffer (independent of the layer's index arithmetic):
// pad (k-1)*d zeros on the left, then y[i,o] = b[o] + sum_{j,c} w[j,c,o] *
// padded[i + j*d, c].
Tensor reference_conv(const Tensor& x, const Tensor& w, const Tensor& b,
                      std::size_t k, std::size_t d) {
    std::size_t t = x.rows(), cin = x.cols(), cout = b.size();
    std::size_t pad = (k - 1) * d;
    std::vector<double> padded((t + pad) * cin, 0.0);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t c = 0; c < cin; ++c)
            padded[(i + pad) * cin + c] = x.at(i, c);
    Tensor y = Tensor::matrix(t, cout);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t o = 0; o < cout; ++o) {
            double acc = b[o];
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t c = 0; c < cin; ++c)
                    acc += w.values[(j * cin + c) * cout + o] *
                           padded[(i + j * d) * cin + c];
            y.at(i, o) = acc;
        }
    return y;
}

} // namespace

TEST_CASE("causal conv forward: hand example with dilation 2") {
    CausalConv1dLayer conv(2, 2, 1, 1, false);
    conv.v.values = {1.0, 1.0};
    Tensor x = Tensor::matrix(4, 1);
    x.values = {1, 2, 3, 4};
    RunCtx ctx;
    Tensor y = conv.forward({&x}, ctx);
    CHECK(y.values == std::vector<double>{1, 2, 4, 6});
}

TEST_CASE("causal conv forward: k=1 d=1 identity") {
    CausalConv1dLayer conv(1, 1, 1, 1, false);
    conv.v.values = {1.0};
    Rng rng(11);
    Tensor x = random_matrix(9, 1, rng);
    RunCtx ctx;
    Tensor y = conv.forward({&x}, ctx);
    CHECK(y.values == x.values);
}

TEST_CASE("causal conv forward matches the padded reference") {
    Rng rng(5);
    for (auto [k, d] : {std::pair<std::size_t, std::size_t>{2, 1},
                        {3, 2},
                        {2, 4},
                        {3, 1}}) {
        CausalConv1dLayer conv(k, d, 3, 2, false);
        testutil::fill_normal(conv.v, rng);
        testutil::fill_normal(conv.b, rng);
        Tensor x = random_matrix(7, 3, rng);
        RunCtx ctx;
        Tensor y = conv.forward({&x}, ctx);
        Tensor ref = reference_conv(x, conv.v, conv.b, k, d);
        for (std::size_t i = 0; i < y.size(); ++i)
            CHECK(y[i] == Catch::Approx(ref[i]).margin(1e-12));
    }
}

TEST_CASE("causal conv backward: finite differences") {
    Network net = testutil::single_layer_net(
        std::make_unique<CausalConv1dLayer>(3, 2, 3, 2, true), 6, 3);
    init_glorot(net, 3);
    Rng rng(7);
    TrainSample s;
    s.inputs.push_back(random_matrix(6, 3, rng));
    s.target = random_matrix(6, 2, rng);
    auto res = grad_check(net, s, 1e-5);
    CHECK(res.max_rel_err < 1e-4);
}

TEST_CASE("causal conv backward: zero upstream grad, bias grad identity") {
    CausalConv1dLayer conv(2, 1, 2, 3, false);
    Rng rng(13);
    testutil::fill_normal(conv.v, rng);
    Tensor x = random_matrix(5, 2, rng);
    RunCtx ctx;
    conv.forward({&x}, ctx);

    Tensor zero = Tensor::matrix(5, 3);
    conv.backward(zero);
    for (double g : conv.v.grad)
        CHECK(g == 0.0);
    for (double g : conv.b.grad)
        CHECK(g == 0.0);

    // bias gradient equals the column sums of the upstream gradient
    Tensor up = random_matrix(5, 3, rng);
    conv.forward({&x}, ctx);
    conv.backward(up);
    for (std::size_t o = 0; o < 3; ++o) {
        double col = 0.0;
        for (std::size_t i = 0; i < 5; ++i)
            col += up.at(i, o);
        CHECK(conv.b.grad[o] == Catch::Approx(col).margin(1e-12));
    }
}

TEST_CASE("weight norm reparameterisation") {
    CausalConv1dLayer conv(2, 1, 1, 1, true);
    // ||v|| = 2, g = 2  ->  w = v
    conv.v.values = {1.2, 1.6};
    conv.g.values = {2.0};
    const Tensor& w = conv.effective_weights();
    CHECK(w.values[0] == Catch::Approx(1.2));
    CHECK(w.values[1] == Catch::Approx(1.6));

    // scaling v by c > 0 leaves the forward output unchanged
    Rng rng(3);
    Tensor x = random_matrix(6, 1, rng);
    RunCtx ctx;
    Tensor y1 = conv.forward({&x}, ctx);
    for (auto& v : conv.v.values)
        v *= 37.5;
    Tensor y2 = conv.forward({&x}, ctx);
    for (std::size_t i = 0; i < y1.size(); ++i)
        CHECK(y1[i] == Catch::Approx(y2[i]).margin(1e-12));
}

TEST_CASE("concat joins along the feature axis") {
    ConcatLayer cat;
    Rng rng(9);
    Tensor a = random_matrix(18, 14, rng);
    Tensor b = random_matrix(18, 14, rng);
    Tensor c = random_matrix(18, 14, rng);
    RunCtx ctx;
    Tensor out = cat.forward({&a, &b, &c}, ctx);
    REQUIRE(out.rows() == 18);
    REQUIRE(out.cols() == 42);
    CHECK(out.at(4, 3) == a.at(4, 3));
    CHECK(out.at(4, 14 + 3) == b.at(4, 3));
    CHECK(out.at(4, 28 + 3) == c.at(4, 3));

    Tensor bad = random_matrix(17, 14, rng);
    CHECK_THROWS_AS(cat.forward({&a, &bad}, ctx), DataError);

    // backward splits the gradient back into blocks
    cat.forward({&a, &b, &c}, ctx);
    Tensor g = random_matrix(18, 42, rng);
    auto grads = cat.backward(g);
    REQUIRE(grads.size() == 3);
    CHECK(grads[1].at(2, 5) == g.at(2, 14 + 5));
}

TEST_CASE("dropout: rate 0 is the identity, masks scale by 1/(1-rate)") {
    Rng rng(21);
    Tensor x = random_matrix(10, 4, rng);
    RunCtx train_ctx{true, &rng, nullptr};

    DropoutLayer none(0.0);
    Tensor y = none.forward({&x}, train_ctx);
    CHECK(y.values == x.values);

    DropoutLayer drop(0.25);
    Tensor z = drop.forward({&x}, train_ctx);
    int kept = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] == 0.0 && x[i] != 0.0)
            continue;
        CHECK(z[i] == Catch::Approx(x[i] / 0.75));
        ++kept;
    }
    CHECK(kept > 0);
    CHECK(kept < static_cast<int>(z.size()));

    // inactive outside training
    RunCtx eval_ctx;
    Tensor e = drop.forward({&x}, eval_ctx);
    CHECK(e.values == x.values);
}

TEST_CASE("flatten is row-major and reversible") {
    FlattenLayer fl;
    Rng rng(2);
    Tensor x = random_matrix(3, 4, rng);
    RunCtx ctx;
    Tensor y = fl.forward({&x}, ctx);
    REQUIRE(y.shape() == std::vector<std::size_t>{12});
    CHECK(y[1 * 4 + 2] == x.at(1, 2));
    auto back = fl.backward(y);
    CHECK(back[0].shape() == x.shape());
    CHECK(back[0].values == x.values);
}

TEST_CASE("dense finite differences") {
    Network net;
    int in = net.add_input(0, 6, 1, "in");
    int fl = net.add(std::make_unique<FlattenLayer>(), {in}, "flat");
    int d1 = net.add(std::make_unique<DenseLayer>(6, 5, Activation::Relu), {fl},
                     "d1");
    int d2 = net.add(std::make_unique<DenseLayer>(5, 3, Activation::Linear), {d1},
                     "d2");
    net.set_output(d2);
    init_glorot(net, 17);
    Rng rng(4);
    TrainSample s;
    s.inputs.push_back(random_matrix(6, 1, rng));
    s.target = random_vector(3, rng);
    CHECK(grad_check(net, s).max_rel_err < 1e-4);
}

TEST_CASE("max pooling halves an 18-row sequence and routes gradients") {
    MaxPool1dLayer pool(2);
    Rng rng(6);
    Tensor x = random_matrix(18, 2, rng);
    RunCtx ctx;
    Tensor y = pool.forward({&x}, ctx);
    REQUIRE(y.rows() == 9);
    REQUIRE(y.cols() == 2);
    for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            CHECK(y.at(r, c) == std::max(x.at(2 * r, c), x.at(2 * r + 1, c)));

    Tensor g = random_matrix(9, 2, rng);
    auto back = pool.backward(g);
    double total_in = 0.0, total_out = 0.0;
    for (double v : g.values)
        total_in += v;
    for (double v : back[0].values)
        total_out += v;
    CHECK(total_in == Catch::Approx(total_out));
}

TEST_CASE("residual block with zero weights is the identity") {
    Network net;
    int in = net.add_input(0, 10, 3, "in");
    int out = append_residual_block(net, in, 3, 3, 2, 1, 0.0, "res");
    net.set_output(out);
    for (const auto& p : net.parameters())
        std::fill(p.tensor->values.begin(), p.tensor->values.end(), 0.0);
    Rng rng(8);
    Tensor x = random_matrix(10, 3, rng);
    Tensor y = net.forward({x});
    CHECK(y.values == x.values);
}

TEST_CASE("residual block is causal") {
    Network net;
    int in = net.add_input(0, 12, 2, "in");
    int out = append_residual_block(net, in, 2, 4, 3, 2, 0.1, "res");
    net.set_output(out);
    init_glorot(net, 5);
    Rng rng(10);
    Tensor x = random_matrix(12, 2, rng);
    Tensor y0 = net.forward({x});
    const int t_probe = 6;
    Tensor x2 = x;
    x2.at(t_probe + 1, 0) += 10.0;
    x2.at(t_probe + 1, 1) -= 3.0;
    Tensor y1 = net.forward({x2});
    for (int t = 0; t <= t_probe; ++t)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(y0.at(t, c) == y1.at(t, c));
    // and the perturbation is visible at t+1
    CHECK(y0.at(t_probe + 1, 0) != y1.at(t_probe + 1, 0));
}

TEST_CASE("residual block finite differences") {
    Network net;
    int in = net.add_input(0, 8, 2, "in");
    int out = append_residual_block(net, in, 2, 3, 3, 2, 0.1, "res");
    net.set_output(out);
    init_glorot(net, 23);
    Rng rng(12);
    TrainSample s;
    s.inputs.push_back(random_matrix(8, 2, rng));
    s.target = random_matrix(8, 3, rng);
    CHECK(grad_check(net, s, 1e-5, 400).max_rel_err < 1e-4);
}

TEST_CASE("TCN block receptive field matches 1 + 2(k-1)(2^(m+1)-1)") {
    for (auto [k, m] : {std::pair<int, int>{2, 1}, {2, 2}, {3, 2}}) {
        int rf = 1 + 2 * (k - 1) * ((1 << (m + 1)) - 1);
        int t = rf + 3;
        Network net;
        int in = net.add_input(0, static_cast<std::size_t>(t), 1, "in");
        int out = append_tcn_block(net, in, 1, 2, static_cast<std::size_t>(k), m,
                                   0.0, "tcn");
        net.set_output(out);
        testutil::make_params_positive(net);

        Tensor base = Tensor::matrix(static_cast<std::size_t>(t), 1);
        for (auto& v : base.values)
            v = 1.0;
        Tensor y0 = net.forward({base});
        int last = t - 1;

        // perturbing the oldest step inside the field changes the output...
        Tensor inside = base;
        inside.at(static_cast<std::size_t>(last - (rf - 1)), 0) += 0.5;
        Tensor y_in = net.forward({inside});
        CHECK(y_in.at(static_cast<std::size_t>(last), 0) !=
              y0.at(static_cast<std::size_t>(last), 0));

        // ...and one step further back does not
        Tensor outside = base;
        outside.at(static_cast<std::size_t>(last - rf), 0) += 0.5;
        Tensor y_out = net.forward({outside});
        CHECK(y_out.at(static_cast<std::size_t>(last), 0) ==
              y0.at(static_cast<std::size_t>(last), 0));
    }
}

TEST_CASE("TCN block with m=0 equals a lone dilation-1 residual block") {
    Network tcn;
    int in1 = tcn.add_input(0, 9, 2, "in");
    int out1 = append_tcn_block(tcn, in1, 2, 3, 2, 0, 0.0, "tcn.res0");
    tcn.set_output(out1);

    Network res;
    int in2 = res.add_input(0, 9, 2, "in");
    int out2 = append_residual_block(res, in2, 2, 3, 2, 1, 0.0, "tcn.res0.res0");
    res.set_output(out2);

    init_glorot(tcn, 77);
    init_glorot(res, 77);

    Rng rng(14);
    Tensor x = random_matrix(9, 2, rng);
    Tensor a = tcn.forward({x});
    Tensor b = res.forward({x});
    REQUIRE(a.shape() == b.shape());
    CHECK(a.values == b.values);
}

TEST_CASE("stacked TCN blocks preserve the time dimension") {
    Network net;
    int in = net.add_input(0, 18, 5, "in");
    int out = append_conv_stage(net, in, 5, 4, 3, 2, 3, 0.1, "stage");
    net.set_output(out);
    init_glorot(net, 1);
    Rng rng(15);
    Tensor x = random_matrix(18, 5, rng);
    Tensor y = net.forward({x});
    CHECK(y.rows() == 18);
    CHECK(y.cols() == 4);
}

TEST_CASE("LSTM cell step: zero parameters halve everything") {
    LstmParams p(3, 2);
    std::vector<double> x{0.4, -0.2, 1.0};
    std::vector<double> h{0.0, 0.0};
    std::vector<double> c{0.8, -0.4};
    std::vector<double> h_out, c_out;
    lstm_cell_step(x, h, c, p, h_out, c_out);
    // i = o = f = sigmoid(0) = 0.5, c_t = 0.5*c_prev, h_t = 0.5*tanh(c_t)
    CHECK(c_out[0] == Catch::Approx(0.4));
    CHECK(c_out[1] == Catch::Approx(-0.2));
    CHECK(h_out[0] == Catch::Approx(0.5 * std::tanh(0.4)));
    CHECK(h_out[1] == Catch::Approx(0.5 * std::tanh(-0.2)));
    for (double v : h_out)
        CHECK(std::abs(v) < 0.5); // o*tanh stays inside (-0.5, 0.5)
}

TEST_CASE("LSTM finite differences through 3 unrolled steps") {
    Network net;
    int in = net.add_input(0, 3, 4, "in");
    int l = net.add(std::make_unique<LstmLayer>(4, 5), {in}, "lstm");
    net.set_output(l);
    init_glorot(net, 31);
    Rng rng(16);
    TrainSample s;
    s.inputs.push_back(random_matrix(3, 4, rng));
    s.target = random_matrix(3, 5, rng);
    CHECK(grad_check(net, s, 1e-5, 400).max_rel_err < 1e-4);
}
