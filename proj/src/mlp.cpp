// Copyright 2026 The glyphseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glyphseg/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "glyphseg/kernels.hpp"
#include "glyphseg/parallel.hpp"
#include "glyphseg/rng.hpp"

namespace glyphseg {

namespace {

constexpr double kTargetHigh = 0.9;
constexpr double kTargetLow = 0.1;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace

void MlpConfig::validate() const {
    if (input_len < 1) throw ConfigError("input_len must be >= 1");
    if (output_len < 1) throw ConfigError("output_len must be >= 1");
    if (hidden_lens.empty() || hidden_lens.size() > 4) {
        throw ConfigError("between 1 and 4 hidden layers required");
    }
    for (int h : hidden_lens) {
        if (h < 1) throw ConfigError("hidden layer length must be >= 1");
    }
}

MlpConfig MlpConfig::with_default_hidden(int input_len, int output_len, int hidden_layers) {
    MlpConfig cfg;
    cfg.input_len = input_len;
    cfg.output_len = output_len;
    int prev = static_cast<int>(std::lround(1.5 * input_len));
    for (int i = 0; i < hidden_layers; ++i) {
        cfg.hidden_lens.push_back(std::max(1, prev));
        prev = prev / 2;
    }
    cfg.validate();
    return cfg;
}

const char* to_string(TrainMethod m) {
    switch (m) {
        case TrainMethod::GDBP: return "GDBP";
        case TrainMethod::GDMBP: return "GDMBP";
        case TrainMethod::GDALBP: return "GDALBP";
        case TrainMethod::GDMALRBP: return "GDMALRBP";
    }
    return "?";
}

TrainMethod parse_train_method(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "GDBP") return TrainMethod::GDBP;
    if (up == "GDMBP") return TrainMethod::GDMBP;
    if (up == "GDALBP") return TrainMethod::GDALBP;
    if (up == "GDMALRBP") return TrainMethod::GDMALRBP;
    throw ConfigError("unknown training method: " + name);
}

void TrainSpec::validate() const {
    if (learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
    if (momentum < 0.0 || momentum >= 1.0) throw ConfigError("momentum must be in [0, 1)");
    if (epochs < 1 || epochs > 10000) throw ConfigError("epochs must be in [1, 10000]");
    if (lr_increase <= 1.0) throw ConfigError("lr_increase must be > 1");
    if (lr_decrease <= 0.0 || lr_decrease >= 1.0) throw ConfigError("lr_decrease must be in (0, 1)");
    if (err_ratio_cap < 1.0) throw ConfigError("err_ratio_cap must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

int Mlp::fan_in(int layer) const {
    return layer == 0 ? cfg_.input_len : cfg_.hidden_lens[layer - 1];
}

int Mlp::fan_out(int layer) const {
    return layer == num_layers() - 1 ? cfg_.output_len : cfg_.hidden_lens[layer];
}

Mlp Mlp::init(const MlpConfig& config, std::uint64_t seed) {
    config.validate();
    Mlp net;
    net.cfg_ = config;
    const int layers = static_cast<int>(config.hidden_lens.size()) + 1;
    net.weights_.resize(layers);
    net.biases_.resize(layers);
    Rng rng(seed);
    for (int l = 0; l < layers; ++l) {
        const int fi = net.fan_in(l);
        const int fo = net.fan_out(l);
        const double bound = 1.0 / std::sqrt(static_cast<double>(fi));
        net.weights_[l].resize(static_cast<std::size_t>(fo) * fi);
        for (auto& w : net.weights_[l]) w = rng.uniform_real(-bound, bound);
        net.biases_[l].assign(static_cast<std::size_t>(fo), 0.0);
    }
    return net;
}

namespace {

// Per-layer activations for one example; scratch reused across calls.
struct Workspace {
    std::vector<std::vector<double>> acts;   // acts[0] = input copy
    std::vector<std::vector<double>> deltas; // per layer fan_out
};

void forward_all(const Mlp& net, std::span<const double> input, Workspace& ws) {
    const auto& ops = kernels::active();
    const int layers = net.num_layers();
    ws.acts.resize(layers + 1);
    ws.acts[0].assign(input.begin(), input.end());
    for (int l = 0; l < layers; ++l) {
        const int fi = net.fan_in(l);
        const int fo = net.fan_out(l);
        ws.acts[l + 1].resize(fo);
        const double* in = ws.acts[l].data();
        const double* w = net.weights()[l].data();
        for (int o = 0; o < fo; ++o) {
            const double z = ops.dot_f64(w + static_cast<std::size_t>(o) * fi, in,
                                         static_cast<std::size_t>(fi)) +
                             net.biases()[l][o];
            ws.acts[l + 1][o] = sigmoid(z);
        }
    }
}

// Backprop of E = sum_k (y_k - t_k)^2 for the example already held in ws;
// accumulates into grad scaled by `scale`.
void accumulate_gradient(const Mlp& net, std::span<const double> target, Workspace& ws,
                         Gradients& grad, double scale) {
    const auto& ops = kernels::active();
    const int layers = net.num_layers();
    ws.deltas.resize(layers);

    // Output layer: dE/dz = 2 (y - t) * y (1 - y).
    {
        const auto& y = ws.acts[layers];
        auto& d = ws.deltas[layers - 1];
        d.resize(y.size());
        for (std::size_t k = 0; k < y.size(); ++k) {
            d[k] = 2.0 * (y[k] - target[k]) * y[k] * (1.0 - y[k]);
        }
    }
    for (int l = layers - 2; l >= 0; --l) {
        const int fo = net.fan_out(l);
        const int fi_next = net.fan_in(l + 1); // == fo
        auto& d = ws.deltas[l];
        d.assign(static_cast<std::size_t>(fo), 0.0);
        const auto& d_next = ws.deltas[l + 1];
        const double* w_next = net.weights()[l + 1].data();
        for (std::size_t o = 0; o < d_next.size(); ++o) {
            ops.axpy_f64(d_next[o], w_next + o * fi_next, d.data(),
                         static_cast<std::size_t>(fo));
        }
        const auto& a = ws.acts[l + 1];
        for (int k = 0; k < fo; ++k) d[k] *= a[k] * (1.0 - a[k]);
    }
    for (int l = 0; l < layers; ++l) {
        const int fi = net.fan_in(l);
        const auto& a = ws.acts[l];
        const auto& d = ws.deltas[l];
        double* wg = grad.weights[l].data();
        for (std::size_t o = 0; o < d.size(); ++o) {
            ops.axpy_f64(scale * d[o], a.data(), wg + o * fi, static_cast<std::size_t>(fi));
        }
        for (std::size_t o = 0; o < d.size(); ++o) grad.biases[l][o] += scale * d[o];
    }
}

Gradients zero_gradients(const Mlp& net) {
    Gradients g;
    g.weights.resize(net.num_layers());
    g.biases.resize(net.num_layers());
    for (int l = 0; l < net.num_layers(); ++l) {
        g.weights[l].assign(net.weights()[l].size(), 0.0);
        g.biases[l].assign(net.biases()[l].size(), 0.0);
    }
    return g;
}

// Reuse an already-shaped gradient buffer.
void zero_in_place(Gradients& g, const Mlp& net) {
    if (g.weights.empty()) {
        g = zero_gradients(net);
        return;
    }
    for (int l = 0; l < net.num_layers(); ++l) {
        std::fill(g.weights[l].begin(), g.weights[l].end(), 0.0);
        std::fill(g.biases[l].begin(), g.biases[l].end(), 0.0);
    }
}

} // namespace

std::vector<double> Mlp::forward(std::span<const double> input) const {
    if (static_cast<int>(input.size()) != cfg_.input_len) {
        throw ShapeError("forward: input length mismatch");
    }
    Workspace ws;
    forward_all(*this, input, ws);
    return ws.acts.back();
}

std::pair<int, double> Mlp::classify(std::span<const double> input) const {
    const std::vector<double> out = forward(input);
    int best = 0;
    for (int k = 1; k < static_cast<int>(out.size()); ++k) {
        if (out[k] > out[best]) best = k;
    }
    return {best, out[best]};
}

Gradients Mlp::gradient(std::span<const double> input, std::span<const double> target) const {
    if (static_cast<int>(input.size()) != cfg_.input_len) {
        throw ShapeError("gradient: input length mismatch");
    }
    if (static_cast<int>(target.size()) != cfg_.output_len) {
        throw ShapeError("gradient: target length mismatch");
    }
    Workspace ws;
    forward_all(*this, input, ws);
    Gradients g = zero_gradients(*this);
    accumulate_gradient(*this, target, ws, g, 1.0);
    return g;
}

std::vector<double> one_hot_target(int label, int num_classes) {
    std::vector<double> t(static_cast<std::size_t>(num_classes), kTargetLow);
    t[static_cast<std::size_t>(label)] = kTargetHigh;
    return t;
}

std::pair<Mlp, TrainReport> train(const Mlp& start, const TrainData& data, const TrainSpec& spec,
                                  const std::function<void(int, const Mlp&)>& snapshot) {
    spec.validate();
    if (data.inputs.empty()) throw ConfigError("train: empty data set");
    if (data.targets.empty()) {
        if (data.inputs.size() != data.labels.size()) {
            throw ConfigError("train: inputs and labels differ in length");
        }
        if (data.num_classes != start.config().output_len) {
            throw ConfigError("train: class count does not match output layer");
        }
        for (int lab : data.labels) {
            if (lab < 0 || lab >= data.num_classes) throw ConfigError("train: label out of range");
        }
    }

    Mlp net = start;
    const int n = static_cast<int>(data.inputs.size());
    const int k = net.config().output_len;
    // MSE means over examples and output units alike; the descent
    // direction is the gradient of exactly that quantity.
    const double inv_nk = 1.0 / (static_cast<double>(n) * k);

    std::vector<std::vector<double>> targets;
    if (!data.targets.empty()) {
        if (data.targets.size() != data.inputs.size()) {
            throw ConfigError("train: explicit targets do not match inputs");
        }
        for (const auto& t : data.targets) {
            if (static_cast<int>(t.size()) != k) {
                throw ConfigError("train: target length does not match output layer");
            }
        }
        targets = data.targets;
    } else {
        targets.reserve(data.labels.size());
        for (int lab : data.labels) targets.push_back(one_hot_target(lab, data.num_classes));
    }

    const bool momentum_on =
        spec.method == TrainMethod::GDMBP || spec.method == TrainMethod::GDMALRBP;
    const bool adaptive =
        spec.method == TrainMethod::GDALBP || spec.method == TrainMethod::GDMALRBP;

    auto batch_mse = [&](const Mlp& m) {
        // Parallel per-example errors, reduced in index order.
        std::vector<double> errs(static_cast<std::size_t>(n), 0.0);
        parallel_for(n, spec.jobs, [&](int i) {
            thread_local Workspace ws;
            forward_all(m, data.inputs[static_cast<std::size_t>(i)], ws);
            const auto& y = ws.acts.back();
            const auto& t = targets[static_cast<std::size_t>(i)];
            double e = 0.0;
            for (std::size_t j = 0; j < y.size(); ++j) {
                const double d = y[j] - t[j];
                e += d * d;
            }
            errs[static_cast<std::size_t>(i)] = e;
        });
        double total = 0.0;
        for (double e : errs) total += e;
        return total * inv_nk;
    };

    // Per-example gradient slots reduced in fixed order keep the batch
    // gradient identical for any worker count.
    std::vector<Gradients> slots(static_cast<std::size_t>(n));
    auto batch_gradient = [&](const Mlp& m) {
        parallel_for(n, spec.jobs, [&](int i) {
            auto& slot = slots[static_cast<std::size_t>(i)];
            zero_in_place(slot, m);
            thread_local Workspace ws;
            forward_all(m, data.inputs[static_cast<std::size_t>(i)], ws);
            accumulate_gradient(m, targets[static_cast<std::size_t>(i)], ws, slot, 1.0);
        });
        Gradients sum = zero_gradients(m);
        const auto& ops = kernels::active();
        for (int i = 0; i < n; ++i) {
            const auto& slot = slots[static_cast<std::size_t>(i)];
            for (int l = 0; l < m.num_layers(); ++l) {
                ops.axpy_f64(inv_nk, slot.weights[l].data(), sum.weights[l].data(),
                             slot.weights[l].size());
                ops.axpy_f64(inv_nk, slot.biases[l].data(), sum.biases[l].data(),
                             slot.biases[l].size());
            }
        }
        return sum;
    };

    TrainReport report;
    report.mse_per_epoch.reserve(static_cast<std::size_t>(spec.epochs));

    Gradients velocity = zero_gradients(net);
    double lr = spec.learning_rate;
    double prev_mse = batch_mse(net);

    for (int epoch = 1; epoch <= spec.epochs; ++epoch) {
        const Gradients grad = batch_gradient(net);

        // Classical heavy-ball update: velocity accumulates the gradient
        // history, so a persistent direction gains up to 1/(1 - momentum)
        // in effective step length.
        const double grad_scale = lr;
        Mlp candidate = net;
        Gradients new_velocity = velocity;
        for (int l = 0; l < net.num_layers(); ++l) {
            auto& wv = new_velocity.weights[l];
            auto& bv = new_velocity.biases[l];
            for (std::size_t i = 0; i < wv.size(); ++i) {
                wv[i] = (momentum_on ? spec.momentum * wv[i] : 0.0) - grad_scale * grad.weights[l][i];
                candidate.weights()[l][i] += wv[i];
            }
            for (std::size_t i = 0; i < bv.size(); ++i) {
                bv[i] = (momentum_on ? spec.momentum * bv[i] : 0.0) - grad_scale * grad.biases[l][i];
                candidate.biases()[l][i] += bv[i];
            }
        }

        const double new_mse = batch_mse(candidate);
        if (!std::isfinite(new_mse)) {
            throw DivergenceError(epoch, "training diverged to a non-finite MSE");
        }

        if (adaptive && new_mse > spec.err_ratio_cap * prev_mse) {
            // Step rejected: keep the old weights, drop momentum history,
            // shrink the rate.
            velocity = zero_gradients(net);
            lr *= spec.lr_decrease;
            report.mse_per_epoch.push_back(prev_mse);
        } else {
            if (adaptive && new_mse < prev_mse) lr *= spec.lr_increase;
            net = std::move(candidate);
            velocity = std::move(new_velocity);
            prev_mse = new_mse;
            report.mse_per_epoch.push_back(new_mse);
        }
        if (snapshot) snapshot(epoch, net);
    }

    report.final_mse = report.mse_per_epoch.back();
    report.epochs_run = spec.epochs;
    return {std::move(net), std::move(report)};
}

void Mlp::save(const std::filesystem::path& path, const std::vector<std::string>& labels) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "glyphseg-mlp v1\n";
    out << cfg_.input_len;
    for (int h : cfg_.hidden_lens) out << " " << h;
    out << " " << cfg_.output_len << " sigmoid\n";
    char buf[32];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (int l = 0; l < num_layers(); ++l) {
        bool first = true;
        for (double w : weights_[l]) {
            if (!first) out << " ";
            first = false;
            emit(w);
        }
        for (double b : biases_[l]) {
            out << " ";
            emit(b);
        }
        out << "\n";
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << "label " << i << " " << labels[i] << "\n";
    }
    if (!out) throw Error("write failed: " + path.string());
}

std::pair<Mlp, std::vector<std::string>> Mlp::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "glyphseg-mlp v1") {
        throw FormatError(path.string(), 0, "missing glyphseg-mlp v1 header");
    }
    if (!std::getline(in, line)) throw FormatError(path.string(), 0, "missing config line");
    std::istringstream cfg_line(line);
    std::vector<int> sizes;
    int v;
    while (cfg_line >> v) sizes.push_back(v);
    std::string activation;
    cfg_line.clear();
    cfg_line >> activation;
    if (activation != "sigmoid") {
        throw FormatError(path.string(), 0, "unsupported activation: " + activation);
    }
    if (sizes.size() < 3) throw FormatError(path.string(), 0, "config line needs >= 3 sizes");

    Mlp net;
    net.cfg_.input_len = sizes.front();
    net.cfg_.output_len = sizes.back();
    net.cfg_.hidden_lens.assign(sizes.begin() + 1, sizes.end() - 1);
    net.cfg_.validate();
    const int layers = static_cast<int>(net.cfg_.hidden_lens.size()) + 1;
    net.weights_.resize(layers);
    net.biases_.resize(layers);
    for (int l = 0; l < layers; ++l) {
        if (!std::getline(in, line)) {
            throw FormatError(path.string(), 0, "missing layer " + std::to_string(l));
        }
        std::istringstream ls(line);
        const std::size_t wn = static_cast<std::size_t>(net.fan_out(l)) * net.fan_in(l);
        net.weights_[l].resize(wn);
        for (auto& w : net.weights_[l]) {
            if (!(ls >> w)) throw FormatError(path.string(), 0, "short weight row in layer " +
                                                                    std::to_string(l));
        }
        net.biases_[l].resize(static_cast<std::size_t>(net.fan_out(l)));
        for (auto& b : net.biases_[l]) {
            if (!(ls >> b)) throw FormatError(path.string(), 0, "short bias row in layer " +
                                                                    std::to_string(l));
        }
    }
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, name;
        int idx;
        if (!(ls >> tag >> idx >> name) || tag != "label") {
            throw FormatError(path.string(), 0, "bad label line: " + line);
        }
        if (idx != static_cast<int>(labels.size())) {
            throw FormatError(path.string(), 0, "label indices must be consecutive");
        }
        labels.push_back(name);
    }
    return {std::move(net), std::move(labels)};
}

} // namespace glyphseg
