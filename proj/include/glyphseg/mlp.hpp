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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glyphseg/error.hpp"

namespace glyphseg {

struct MlpConfig {
    int input_len = 0;
    std::vector<int> hidden_lens; // 1..4 layers
    int output_len = 0;

    void validate() const;

    /// Default sizing: first hidden layer 1.5x the input, each further
    /// hidden layer half the previous one.
    static MlpConfig with_default_hidden(int input_len, int output_len, int hidden_layers = 1);
};

enum class TrainMethod { GDBP, GDMBP, GDALBP, GDMALRBP };

const char* to_string(TrainMethod m);
TrainMethod parse_train_method(const std::string& name);

struct TrainSpec {
    TrainMethod method = TrainMethod::GDMALRBP;
    double learning_rate = 0.4;
    double momentum = 0.9;      // GDMBP, GDMALRBP
    double lr_increase = 1.05;  // adaptive methods
    double lr_decrease = 0.7;
    double err_ratio_cap = 1.04;
    int epochs = 2000;          // 1..10000
    std::uint64_t seed = 1;
    int jobs = 1;               // gradient workers; result independent of value

    void validate() const;
};

struct TrainReport {
    std::vector<double> mse_per_epoch;
    double final_mse = 0.0;
    int epochs_run = 0;
};

/// Per-parameter gradient of one example's squared error, laid out like
/// the network weights.
struct Gradients {
    std::vector<std::vector<double>> weights; // per layer, fan_out x fan_in row-major
    std::vector<std::vector<double>> biases;  // per layer, fan_out
};

/// Labeled training set; inputs are flat vectors of input_len values.
/// When `targets` is empty, targets are one-hot vectors built from
/// `labels`; otherwise they are used as given (regression-style tasks).
struct TrainData {
    std::vector<std::vector<double>> inputs;
    std::vector<int> labels;
    std::vector<std::vector<double>> targets;
    int num_classes = 0;
};

/// Fully connected feed-forward network, sigmoid on every layer.
class Mlp {
public:
    Mlp() = default;

    /// Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases zero,
    /// deterministic per seed.
    static Mlp init(const MlpConfig& config, std::uint64_t seed);

    const MlpConfig& config() const { return cfg_; }
    int num_layers() const { return static_cast<int>(weights_.size()); }

    std::vector<double> forward(std::span<const double> input) const;

    /// (argmax label, max output). Ties break to the lowest index.
    std::pair<int, double> classify(std::span<const double> input) const;

    /// Analytic gradient of the squared error sum_k (y_k - t_k)^2 for one
    /// example.
    Gradients gradient(std::span<const double> input, std::span<const double> target) const;

    std::vector<std::vector<double>>& weights() { return weights_; }
    const std::vector<std::vector<double>>& weights() const { return weights_; }
    std::vector<std::vector<double>>& biases() { return biases_; }
    const std::vector<std::vector<double>>& biases() const { return biases_; }

    /// Layer fan-in/fan-out as chained from the config.
    int fan_in(int layer) const;
    int fan_out(int layer) const;

    void save(const std::filesystem::path& path, const std::vector<std::string>& labels) const;
    static std::pair<Mlp, std::vector<std::string>> load(const std::filesystem::path& path);

private:
    friend std::pair<Mlp, TrainReport> train(const Mlp&, const TrainData&, const TrainSpec&,
                                             const std::function<void(int, const Mlp&)>&);

    MlpConfig cfg_;
    std::vector<std::vector<double>> weights_;
    std::vector<std::vector<double>> biases_;
};

/// Full-batch gradient descent on the mean squared error with the method
/// selected by spec. The snapshot hook, when set, observes the network
/// after every epoch (used for session-grid checkpoints).
std::pair<Mlp, TrainReport> train(const Mlp& net, const TrainData& data, const TrainSpec& spec,
                                  const std::function<void(int, const Mlp&)>& snapshot = {});

/// One-hot target vector with soft extremes (0.9 / 0.1) so sigmoid outputs
/// can actually reach them.
std::vector<double> one_hot_target(int label, int num_classes);

} // namespace glyphseg
