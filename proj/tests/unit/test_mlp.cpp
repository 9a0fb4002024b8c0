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

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "glyphseg/mlp.hpp"
#include "glyphseg/rng.hpp"

using namespace glyphseg;

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Squared error of the network on one example, for finite differencing.
double example_error(const Mlp& net, const std::vector<double>& in,
                     const std::vector<double>& target) {
    const auto out = net.forward(in);
    double e = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double d = out[k] - target[k];
        e += d * d;
    }
    return e;
}

} // namespace

TEST_CASE("init: deterministic per seed, wiggly across seeds, bounded") {
    const MlpConfig cfg{4, {5}, 3};
    const Mlp a = Mlp::init(cfg, 11);
    const Mlp b = Mlp::init(cfg, 11);
    const Mlp c = Mlp::init(cfg, 12);
    CHECK(a.weights() == b.weights());
    CHECK(a.biases() == b.biases());
    CHECK(a.weights() != c.weights());
    for (int l = 0; l < a.num_layers(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(a.fan_in(l)));
        for (double w : a.weights()[l]) CHECK(std::abs(w) <= bound);
        for (double bias : a.biases()[l]) CHECK(bias == 0.0);
    }
}

TEST_CASE("forward: zero weights give 0.5 everywhere") {
    const MlpConfig cfg{3, {4}, 2};
    Mlp net = Mlp::init(cfg, 1);
    for (auto& layer : net.weights()) std::fill(layer.begin(), layer.end(), 0.0);
    const auto out = net.forward(std::vector<double>{0.3, -0.7, 1.0});
    for (double y : out) CHECK(y == doctest::Approx(0.5));
}

TEST_CASE("forward: matches a pencil-and-paper 2-2-1 computation") {
    MlpConfig cfg{2, {2}, 1};
    Mlp net = Mlp::init(cfg, 1);
    net.weights()[0] = {0.5, -0.25, 0.1, 0.8}; // rows: hidden units
    net.biases()[0] = {0.05, -0.1};
    net.weights()[1] = {1.5, -2.0};
    net.biases()[1] = {0.3};
    const std::vector<double> in{0.6, -0.2};
    const double h0 = sigmoid(0.5 * 0.6 + -0.25 * -0.2 + 0.05);
    const double h1 = sigmoid(0.1 * 0.6 + 0.8 * -0.2 + -0.1);
    const double y = sigmoid(1.5 * h0 - 2.0 * h1 + 0.3);
    const auto out = net.forward(in);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == doctest::Approx(y).epsilon(1e-12));
}

TEST_CASE("forward: outputs live strictly inside (0, 1)") {
    const MlpConfig cfg{6, {8, 4}, 5};
    const Mlp net = Mlp::init(cfg, 3);
    Rng rng(55);
    std::vector<double> in(6);
    for (auto& x : in) x = rng.uniform_real(-3.0, 3.0);
    for (double y : net.forward(in)) {
        CHECK(y > 0.0);
        CHECK(y < 1.0);
    }
}

TEST_CASE("forward rejects a wrong input length") {
    const Mlp net = Mlp::init({3, {2}, 1}, 1);
    CHECK_THROWS_AS(net.forward(std::vector<double>{1.0, 2.0}), ShapeError);
}

TEST_CASE("classify: argmax with ties to the lowest index") {
    const MlpConfig cfg{2, {2}, 3};
    Mlp net = Mlp::init(cfg, 1);
    for (auto& layer : net.weights()) std::fill(layer.begin(), layer.end(), 0.0);
    for (auto& layer : net.biases()) std::fill(layer.begin(), layer.end(), 0.0);
    // All outputs equal 0.5: the tie resolves to label 0.
    const auto [label, confidence] = net.classify(std::vector<double>{0.0, 0.0});
    CHECK(label == 0);
    CHECK(confidence == doctest::Approx(0.5));
    // Bias one output up: it wins.
    net.biases()[1][2] = 1.0;
    CHECK(net.classify(std::vector<double>{0.0, 0.0}).first == 2);
}

TEST_CASE("gradient: matches central finite differences on random nets") {
    Rng rng(56);
    for (int trial = 0; trial < 5; ++trial) {
        const int in_len = rng.uniform_int(2, 5);
        const int hidden = rng.uniform_int(2, 6);
        const int out_len = rng.uniform_int(1, 4);
        const MlpConfig cfg{in_len, {hidden}, out_len};
        Mlp net = Mlp::init(cfg, static_cast<std::uint64_t>(trial) + 100);

        std::vector<double> in(static_cast<std::size_t>(in_len));
        for (auto& x : in) x = rng.uniform_real(-1.0, 1.0);
        std::vector<double> target(static_cast<std::size_t>(out_len));
        for (auto& t : target) t = rng.uniform_real(0.1, 0.9);

        const Gradients g = net.gradient(in, target);
        const double h = 1e-5;
        for (int l = 0; l < net.num_layers(); ++l) {
            for (std::size_t i = 0; i < net.weights()[l].size(); ++i) {
                const double keep = net.weights()[l][i];
                net.weights()[l][i] = keep + h;
                const double ep = example_error(net, in, target);
                net.weights()[l][i] = keep - h;
                const double em = example_error(net, in, target);
                net.weights()[l][i] = keep;
                const double fd = (ep - em) / (2.0 * h);
                const double denom = std::max({std::abs(fd), std::abs(g.weights[l][i]), 1e-8});
                CHECK(std::abs(fd - g.weights[l][i]) / denom < 1e-4);
            }
            for (std::size_t i = 0; i < net.biases()[l].size(); ++i) {
                const double keep = net.biases()[l][i];
                net.biases()[l][i] = keep + h;
                const double ep = example_error(net, in, target);
                net.biases()[l][i] = keep - h;
                const double em = example_error(net, in, target);
                net.biases()[l][i] = keep;
                const double fd = (ep - em) / (2.0 * h);
                const double denom = std::max({std::abs(fd), std::abs(g.biases[l][i]), 1e-8});
                CHECK(std::abs(fd - g.biases[l][i]) / denom < 1e-4);
            }
        }
    }
}

TEST_CASE("gradient: target equal to the output kills the output deltas") {
    const MlpConfig cfg{2, {2}, 2};
    Mlp net = Mlp::init(cfg, 7);
    const std::vector<double> in{0.4, -0.9};
    const auto out = net.forward(in);
    const Gradients g = net.gradient(in, out);
    for (int l = 0; l < net.num_layers(); ++l) {
        for (double v : g.weights[l]) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
        for (double v : g.biases[l]) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    }
}

namespace {

TrainData xor_data() {
    TrainData d;
    d.inputs = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    d.labels = {0, 1, 1, 0};
    d.num_classes = 2;
    return d;
}

} // namespace

TEST_CASE("train: learning rate zero leaves the weights alone") {
    const MlpConfig cfg{2, {3}, 2};
    const Mlp net = Mlp::init(cfg, 5);
    TrainSpec spec;
    spec.method = TrainMethod::GDBP;
    spec.learning_rate = 1e-300; // effectively zero while staying positive
    spec.epochs = 5;
    const auto [trained, report] = train(net, xor_data(), spec);
    for (int l = 0; l < net.num_layers(); ++l) {
        for (std::size_t i = 0; i < net.weights()[l].size(); ++i) {
            CHECK(trained.weights()[l][i] == doctest::Approx(net.weights()[l][i]).epsilon(1e-12));
        }
    }
    for (std::size_t e = 1; e < report.mse_per_epoch.size(); ++e) {
        CHECK(report.mse_per_epoch[e] == doctest::Approx(report.mse_per_epoch[0]).epsilon(1e-9));
    }
}

TEST_CASE("train: determinism for a fixed seed and spec") {
    const MlpConfig cfg{2, {4}, 2};
    TrainSpec spec;
    spec.method = TrainMethod::GDMALRBP;
    spec.epochs = 50;
    spec.seed = 9;
    const Mlp net = Mlp::init(cfg, 9);
    const auto [a, ra] = train(net, xor_data(), spec);
    const auto [b, rb] = train(net, xor_data(), spec);
    CHECK(a.weights() == b.weights());
    CHECK(ra.mse_per_epoch == rb.mse_per_epoch);
    // Worker count must not change the result.
    TrainSpec parallel = spec;
    parallel.jobs = 3;
    const auto [c, rc] = train(net, xor_data(), parallel);
    CHECK(a.weights() == c.weights());
    CHECK(ra.mse_per_epoch == rc.mse_per_epoch);
}

TEST_CASE("train: xor converges under plain gradient descent (4 of 5 seeds)") {
    // 2-4-1 net with a single soft output: high for odd parity.
    TrainData xor1;
    xor1.inputs = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    xor1.targets = {{0.1}, {0.9}, {0.9}, {0.1}};
    xor1.num_classes = 1;
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        TrainSpec spec;
        spec.method = TrainMethod::GDBP;
        spec.learning_rate = 0.4;
        spec.epochs = 4000;
        spec.seed = seed;
        const MlpConfig cfg{2, {4}, 1};
        const auto [net, report] = train(Mlp::init(cfg, seed), xor1, spec);
        if (report.final_mse < 0.05) ++solved;
    }
    CHECK(solved >= 4);
}

TEST_CASE("train: adaptive learning rate never lets stored MSE spike") {
    TrainSpec spec;
    spec.method = TrainMethod::GDALBP;
    spec.learning_rate = 2.0; // aggressive on purpose
    spec.epochs = 200;
    const MlpConfig cfg{2, {4}, 2};
    const auto [net, report] = train(Mlp::init(cfg, 3), xor_data(), spec);
    for (std::size_t e = 1; e < report.mse_per_epoch.size(); ++e) {
        CHECK(report.mse_per_epoch[e] <=
              spec.err_ratio_cap * report.mse_per_epoch[e - 1] + 1e-12);
    }
}

TEST_CASE("train: empty data is a configuration error") {
    TrainData empty;
    empty.num_classes = 2;
    const Mlp net = Mlp::init({2, {2}, 2}, 1);
    CHECK_THROWS_AS(train(net, empty, {}), ConfigError);
}

TEST_CASE("model save/load round trip preserves behavior bit-for-bit") {
    const MlpConfig cfg{4, {6, 3}, 2};
    const Mlp net = Mlp::init(cfg, 77);
    const auto path = std::filesystem::temp_directory_path() / "glyphseg_model.txt";
    net.save(path, {"zero", "one"});
    const auto [loaded, labels] = Mlp::load(path);
    CHECK(labels == std::vector<std::string>{"zero", "one"});
    CHECK(loaded.weights() == net.weights());
    CHECK(loaded.biases() == net.biases());
    CHECK(loaded.config().hidden_lens == cfg.hidden_lens);
}

TEST_CASE("default hidden sizing follows the 1.5x rule") {
    const MlpConfig cfg = MlpConfig::with_default_hidden(100, 10, 2);
    REQUIRE(cfg.hidden_lens.size() == 2);
    CHECK(cfg.hidden_lens[0] == 150);
    CHECK(cfg.hidden_lens[1] == 75);
}
