#pragma once

#include <json.hpp>

#include "solarcast/nn/init.hpp"
#include "solarcast/nn/network.hpp"

namespace solarcast::nn {

// ---------------------------------------------------------------------------
// Graph fragments
// ---------------------------------------------------------------------------

// Residual block: two weight-normed dilated causal convs with ReLU and
// dropout, plus a skip connection (learned 1x1 projection when the channel
// counts differ).
inline int append_residual_block(Network& net, int in_node, std::size_t c_in,
                                 std::size_t filters, std::size_t kernel,
                                 std::size_t dilation, double dropout,
                                 const std::string& name) {
    int c1 = net.add(std::make_unique<CausalConv1dLayer>(kernel, dilation, c_in,
                                                         filters, true),
                     {in_node}, name + ".conv1");
    int r1 = net.add(std::make_unique<ReluLayer>(), {c1}, name + ".relu1");
    int d1 = net.add(std::make_unique<DropoutLayer>(dropout), {r1}, name + ".drop1");
    int c2 = net.add(std::make_unique<CausalConv1dLayer>(kernel, dilation,
                                                         filters, filters, true),
                     {d1}, name + ".conv2");
    int r2 = net.add(std::make_unique<ReluLayer>(), {c2}, name + ".relu2");
    int d2 = net.add(std::make_unique<DropoutLayer>(dropout), {r2}, name + ".drop2");
    int skip = in_node;
    if (c_in != filters)
        skip = net.add(std::make_unique<CausalConv1dLayer>(1, 1, c_in, filters, false),
                       {in_node}, name + ".proj");
    return net.add(std::make_unique<AddLayer>(), {d2, skip}, name + ".add");
}

// TCN block: residual blocks 0..m with dilation 2^i for block i.
// Receptive field: 1 + 2*(kernel-1)*(2^(m+1)-1).
inline int append_tcn_block(Network& net, int in_node, std::size_t c_in,
                            std::size_t filters, std::size_t kernel, int m,
                            double dropout, const std::string& name) {
    int cur = in_node;
    std::size_t c = c_in;
    for (int i = 0; i <= m; ++i) {
        cur = append_residual_block(net, cur, c, filters, kernel,
                                    std::size_t{1} << i, dropout,
                                    name + ".res" + std::to_string(i));
        c = filters;
    }
    return cur;
}

inline int append_conv_stage(Network& net, int in_node, std::size_t c_in,
                             std::size_t filters, std::size_t kernel, int m,
                             int n_tcn_blocks, double dropout,
                             const std::string& name) {
    int cur = in_node;
    std::size_t c = c_in;
    for (int b = 0; b < n_tcn_blocks; ++b) {
        cur = append_tcn_block(net, cur, c, filters, kernel, m, dropout,
                               name + ".tcn" + std::to_string(b));
        c = filters;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Architecture specs
// ---------------------------------------------------------------------------

enum class HtcnnVariant { A1 = 1, A2 = 2 };

// Hierarchical TCN: a shared convolution stage over the concatenated
// individual series, plus either a parallel aggregate path (A1) or a chain of
// concat-and-convolve stages that reuse the individual features (A2).
struct HtcnnSpec {
    HtcnnVariant variant = HtcnnVariant::A1;
    int n_individual = 1; // N
    int t = 18;
    int f = 14;
    int f_agg = 7;
    int horizon = 18;            // h; equals t for this application
    int filters_individual = 16; // F'
    int filters_aggregate = 8;   // F'' (stage filters in A2)
    int tcn_blocks_individual = 1;
    int tcn_blocks_aggregate = 1;
    int max_dilation_exp = 1; // m: dilations 2^0 .. 2^m within a TCN block
    int kernel = 3;
    int concat_stages = 2; // A2 only
    double dropout = 0.1;

    void validate() const {
        if (n_individual < 1 || t < 1 || f < 1 || f_agg < 1 || horizon < 1)
            throw ConfigError("htcnn: dimensions must be >= 1");
        if (horizon != t)
            throw ConfigError("htcnn: horizon must equal the in-day step count t");
        if (filters_individual < 1 || filters_aggregate < 1)
            throw ConfigError("htcnn: filter counts must be >= 1");
        if (tcn_blocks_individual < 1 || tcn_blocks_aggregate < 1)
            throw ConfigError("htcnn: TCN block counts must be >= 1");
        if (max_dilation_exp < 0 || kernel < 1)
            throw ConfigError("htcnn: bad kernel/dilation configuration");
        if (variant == HtcnnVariant::A2 && concat_stages < 1)
            throw ConfigError("htcnn A2: concat_stages must be >= 1");
        if (dropout < 0.0 || dropout >= 1.0)
            throw ConfigError("htcnn: dropout must lie in [0,1)");
    }
};

struct TcnSpec {
    int t = 18;
    int f = 14;
    int horizon = 18;
    int filters = 16;
    int kernel = 3;
    int max_dilation_exp = 1;
    int n_blocks = 1;
    double dropout = 0.1;

    void validate() const {
        if (t < 1 || f < 1 || horizon < 1 || filters < 1 || kernel < 1 ||
            max_dilation_exp < 0 || n_blocks < 1)
            throw ConfigError("tcn: all counts must be >= 1");
        if (dropout < 0.0 || dropout >= 1.0)
            throw ConfigError("tcn: dropout must lie in [0,1)");
    }
};

struct CnnSpec {
    int t = 18;
    int f = 14;
    int horizon = 18;
    int layers = 1; // conv+pool pairs
    int filters = 16;
    int kernel = 3;
    int pool = 2;

    void validate() const {
        if (t < 1 || f < 1 || horizon < 1 || layers < 1 || filters < 1 ||
            kernel < 1 || pool < 1)
            throw ConfigError("cnn: all counts must be >= 1");
        int len = t;
        for (int i = 0; i < layers; ++i) {
            len /= pool;
            if (len < 1)
                throw ConfigError("cnn: pooling stage " + std::to_string(i + 1) +
                                  " would empty the sequence");
        }
    }
};

struct LstmSpec {
    int t = 18;
    int f = 14;
    int horizon = 18;
    int cell_dim = 16; // d
    int layers = 1;

    void validate() const {
        if (cell_dim < 1)
            throw ConfigError("lstm: cell dimension must be >= 1");
        if (t < 1 || f < 1 || horizon < 1 || layers < 1)
            throw ConfigError("lstm: all counts must be >= 1");
    }
};

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

inline Network build_htcnn(const HtcnnSpec& s, std::uint64_t seed) {
    s.validate();
    Network net;
    std::vector<int> ind;
    for (int i = 0; i < s.n_individual; ++i)
        ind.push_back(net.add_input(static_cast<std::size_t>(i),
                                    static_cast<std::size_t>(s.t),
                                    static_cast<std::size_t>(s.f),
                                    "ind" + std::to_string(i)));
    int agg_in = net.add_input(static_cast<std::size_t>(s.n_individual),
                               static_cast<std::size_t>(s.t),
                               static_cast<std::size_t>(s.f_agg), "agg");
    // Concatenation layer (1): t x (f*N)
    int cat1 = net.add(std::make_unique<ConcatLayer>(), ind, "concat1");
    int ind_feat = append_conv_stage(
        net, cat1, static_cast<std::size_t>(s.f) * s.n_individual,
        s.filters_individual, s.kernel, s.max_dilation_exp,
        s.tcn_blocks_individual, s.dropout, "stage1");

    int out;
    if (s.variant == HtcnnVariant::A1) {
        int fl1 = net.add(std::make_unique<FlattenLayer>(), {ind_feat}, "flatten1");
        int fc1 = net.add(std::make_unique<DenseLayer>(
                              static_cast<std::size_t>(s.t) * s.filters_individual,
                              s.horizon, Activation::Relu),
                          {fl1}, "fc1");
        int agg_feat = append_conv_stage(net, agg_in, s.f_agg, s.filters_aggregate,
                                         s.kernel, s.max_dilation_exp,
                                         s.tcn_blocks_aggregate, s.dropout,
                                         "stage2");
        int fl2 = net.add(std::make_unique<FlattenLayer>(), {agg_feat}, "flatten2");
        int fc2 = net.add(std::make_unique<DenseLayer>(
                              static_cast<std::size_t>(s.t) * s.filters_aggregate,
                              s.horizon, Activation::Relu),
                          {fl2}, "fc2");
        // Concatenation layer (2) joins the two h-vectors.
        int cat2 = net.add(std::make_unique<ConcatLayer>(), {fc1, fc2}, "concat2");
        out = net.add(std::make_unique<DenseLayer>(2 * s.horizon, s.horizon,
                                                   Activation::Linear),
                      {cat2}, "fc3");
    } else {
        // A2 bottom branch: concat(aggregate input, individual features), then
        // concat_stages rounds of TCN + feature re-concatenation. The final
        // stage's TCN output feeds the flatten directly.
        int cur = net.add(std::make_unique<ConcatLayer>(), {agg_in, ind_feat},
                          "stageA2.1.concat");
        cur = append_tcn_block(net, cur,
                               static_cast<std::size_t>(s.f_agg) + s.filters_individual,
                               s.filters_aggregate, s.kernel, s.max_dilation_exp,
                               s.dropout, "stageA2.1.tcn");
        for (int stage = 2; stage <= s.concat_stages; ++stage) {
            std::string nm = "stageA2." + std::to_string(stage);
            int cc = net.add(std::make_unique<ConcatLayer>(), {cur, ind_feat},
                             nm + ".concat");
            cur = append_tcn_block(
                net, cc,
                static_cast<std::size_t>(s.filters_aggregate) + s.filters_individual,
                s.filters_aggregate, s.kernel, s.max_dilation_exp, s.dropout,
                nm + ".tcn");
        }
        int fl = net.add(std::make_unique<FlattenLayer>(), {cur}, "flatten");
        out = net.add(std::make_unique<DenseLayer>(
                          static_cast<std::size_t>(s.t) * s.filters_aggregate,
                          s.horizon, Activation::Linear),
                      {fl}, "fc");
    }
    net.set_output(out);
    init_glorot(net, seed);
    return net;
}

inline Network build_tcn(const TcnSpec& s, std::uint64_t seed) {
    s.validate();
    Network net;
    int in = net.add_input(0, s.t, s.f, "in");
    int feat = append_conv_stage(net, in, s.f, s.filters, s.kernel,
                                 s.max_dilation_exp, s.n_blocks, s.dropout,
                                 "stage");
    int fl = net.add(std::make_unique<FlattenLayer>(), {feat}, "flatten");
    int out = net.add(std::make_unique<DenseLayer>(
                          static_cast<std::size_t>(s.t) * s.filters, s.horizon,
                          Activation::Linear),
                      {fl}, "fc");
    net.set_output(out);
    init_glorot(net, seed);
    return net;
}

inline Network build_cnn1d(const CnnSpec& s, std::uint64_t seed) {
    s.validate();
    Network net;
    int cur = net.add_input(0, s.t, s.f, "in");
    std::size_t c = static_cast<std::size_t>(s.f);
    std::size_t len = static_cast<std::size_t>(s.t);
    for (int i = 0; i < s.layers; ++i) {
        std::string nm = "block" + std::to_string(i);
        cur = net.add(std::make_unique<CausalConv1dLayer>(s.kernel, 1, c,
                                                          s.filters, false),
                      {cur}, nm + ".conv");
        cur = net.add(std::make_unique<ReluLayer>(), {cur}, nm + ".relu");
        cur = net.add(std::make_unique<MaxPool1dLayer>(s.pool), {cur}, nm + ".pool");
        c = static_cast<std::size_t>(s.filters);
        len /= static_cast<std::size_t>(s.pool);
    }
    int fl = net.add(std::make_unique<FlattenLayer>(), {cur}, "flatten");
    int out = net.add(std::make_unique<DenseLayer>(len * c, s.horizon,
                                                   Activation::Linear),
                      {fl}, "fc");
    net.set_output(out);
    init_glorot(net, seed);
    return net;
}

// Stacked LSTM: each layer consumes the previous layer's hidden sequence;
// the final layer's last hidden state feeds the output head.
inline Network build_lstm(const LstmSpec& s, std::uint64_t seed) {
    s.validate();
    Network net;
    int cur = net.add_input(0, s.t, s.f, "in");
    std::size_t in_dim = static_cast<std::size_t>(s.f);
    for (int i = 0; i < s.layers; ++i) {
        cur = net.add(std::make_unique<LstmLayer>(in_dim, s.cell_dim), {cur},
                      "lstm" + std::to_string(i));
        in_dim = static_cast<std::size_t>(s.cell_dim);
    }
    int last = net.add(std::make_unique<LastRowLayer>(), {cur}, "last");
    int out = net.add(std::make_unique<DenseLayer>(s.cell_dim, s.horizon,
                                                   Activation::Linear),
                      {last}, "fc");
    net.set_output(out);
    init_glorot(net, seed);
    return net;
}

// ---------------------------------------------------------------------------
// JSON (sidecar) serialisation
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const HtcnnSpec& s) {
    j = {{"kind", "htcnn"},
         {"variant", s.variant == HtcnnVariant::A1 ? 1 : 2},
         {"n_individual", s.n_individual},
         {"t", s.t},
         {"f", s.f},
         {"f_agg", s.f_agg},
         {"horizon", s.horizon},
         {"filters_individual", s.filters_individual},
         {"filters_aggregate", s.filters_aggregate},
         {"tcn_blocks_individual", s.tcn_blocks_individual},
         {"tcn_blocks_aggregate", s.tcn_blocks_aggregate},
         {"max_dilation_exp", s.max_dilation_exp},
         {"kernel", s.kernel},
         {"concat_stages", s.concat_stages},
         {"dropout", s.dropout}};
}

inline void from_json(const nlohmann::json& j, HtcnnSpec& s) {
    s.variant = j.at("variant").get<int>() == 1 ? HtcnnVariant::A1 : HtcnnVariant::A2;
    j.at("n_individual").get_to(s.n_individual);
    j.at("t").get_to(s.t);
    j.at("f").get_to(s.f);
    j.at("f_agg").get_to(s.f_agg);
    j.at("horizon").get_to(s.horizon);
    j.at("filters_individual").get_to(s.filters_individual);
    j.at("filters_aggregate").get_to(s.filters_aggregate);
    j.at("tcn_blocks_individual").get_to(s.tcn_blocks_individual);
    j.at("tcn_blocks_aggregate").get_to(s.tcn_blocks_aggregate);
    j.at("max_dilation_exp").get_to(s.max_dilation_exp);
    j.at("kernel").get_to(s.kernel);
    j.at("concat_stages").get_to(s.concat_stages);
    j.at("dropout").get_to(s.dropout);
}

inline void to_json(nlohmann::json& j, const TcnSpec& s) {
    j = {{"kind", "tcn"},   {"t", s.t},
         {"f", s.f},        {"horizon", s.horizon},
         {"filters", s.filters}, {"kernel", s.kernel},
         {"max_dilation_exp", s.max_dilation_exp}, {"n_blocks", s.n_blocks},
         {"dropout", s.dropout}};
}

inline void from_json(const nlohmann::json& j, TcnSpec& s) {
    j.at("t").get_to(s.t);
    j.at("f").get_to(s.f);
    j.at("horizon").get_to(s.horizon);
    j.at("filters").get_to(s.filters);
    j.at("kernel").get_to(s.kernel);
    j.at("max_dilation_exp").get_to(s.max_dilation_exp);
    j.at("n_blocks").get_to(s.n_blocks);
    j.at("dropout").get_to(s.dropout);
}

inline void to_json(nlohmann::json& j, const CnnSpec& s) {
    j = {{"kind", "cnn"},     {"t", s.t},       {"f", s.f},
         {"horizon", s.horizon}, {"layers", s.layers}, {"filters", s.filters},
         {"kernel", s.kernel},   {"pool", s.pool}};
}

inline void from_json(const nlohmann::json& j, CnnSpec& s) {
    j.at("t").get_to(s.t);
    j.at("f").get_to(s.f);
    j.at("horizon").get_to(s.horizon);
    j.at("layers").get_to(s.layers);
    j.at("filters").get_to(s.filters);
    j.at("kernel").get_to(s.kernel);
    j.at("pool").get_to(s.pool);
}

inline void to_json(nlohmann::json& j, const LstmSpec& s) {
    j = {{"kind", "lstm"},      {"t", s.t},           {"f", s.f},
         {"horizon", s.horizon}, {"cell_dim", s.cell_dim}, {"layers", s.layers}};
}

inline void from_json(const nlohmann::json& j, LstmSpec& s) {
    j.at("t").get_to(s.t);
    j.at("f").get_to(s.f);
    j.at("horizon").get_to(s.horizon);
    j.at("cell_dim").get_to(s.cell_dim);
    j.at("layers").get_to(s.layers);
}

// Rebuilds a network (with fresh deterministic init) from a sidecar spec.
inline Network build_from_spec_json(const nlohmann::json& j, std::uint64_t seed) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "htcnn")
        return build_htcnn(j.get<HtcnnSpec>(), seed);
    if (kind == "tcn")
        return build_tcn(j.get<TcnSpec>(), seed);
    if (kind == "cnn")
        return build_cnn1d(j.get<CnnSpec>(), seed);
    if (kind == "lstm")
        return build_lstm(j.get<LstmSpec>(), seed);
    throw DataError("unknown network spec kind '" + kind + "'");
}

} // namespace solarcast::nn
