// SPDX-License-Identifier: Apache-2.0
//
// ceaad - cross-entropy diagnosis of blocked antennas in mmWave MIMO arrays
// Copyright (C) 2026 ceaad contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Seeded Monte Carlo experiment runner. A sweep is a pure function of its
// config: every random stream is derived from (master_seed, trial_index,
// stage tag), so adding methods or rerunning with more threads never
// changes the generated data or the emitted numbers.

#ifndef CEAAD_HARNESS_HPP
#define CEAAD_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ceaad/baselines.hpp"
#include "ceaad/blockage.hpp"
#include "ceaad/ce_core.hpp"
#include "ceaad/channel.hpp"
#include "ceaad/joint_ce.hpp"
#include "ceaad/sounding.hpp"

namespace ceaad
{
    // Normalized mean square error ||estimate - truth||^2 / ||truth||^2
    // (Frobenius for matrices). Throws ZeroTruth when ||truth|| = 0.
    double nmse(const CVec &estimate, const CVec &truth);
    double nmse(const CMat &estimate, const CMat &truth);

    enum class Scenario
    {
        tx_only,
        joint
    };

    enum class SweepVariable
    {
        measurements,
        snr_db
    };

    // Known method names: "ce-aad", "plain-ce", "omp", "oracle".
    const std::vector<std::string> &known_methods();

    struct ExperimentConfig
    {
        Scenario scenario = Scenario::tx_only;
        UpaGeometry upa{10, 10, 0.5, 0.5}; // tx_only scenario
        UlaGeometry ula_tx{10, 0.5};       // joint scenario
        UlaGeometry ula_rx{10, 0.5};
        int paths = 10;
        double blockage_probability = 0.1;
        BlockageMode mode = BlockageMode::partial;
        ClusterOptions cluster; // tx_only cluster shaping
        SweepVariable sweep_variable = SweepVariable::measurements;
        std::vector<double> sweep_values;
        int measurements = 50; // fixed K when sweeping SNR
        double snr_db = 5.0;   // fixed SNR when sweeping K
        bool noiseless = false;
        std::vector<std::string> methods{"ce-aad"};
        int trials = 100;
        std::uint64_t master_seed = 1;
        CeConfig solver;
        // Off by default: measured wall times are environment noise, and the
        // emitted tables are specified to be byte-reproducible functions of
        // the config. Opt in via CEAAD_TIMING=1 or this flag.
        bool collect_timing = false;

        void validate() const; // throws Error / InvalidProbability

        Index grid_rows() const { return scenario == Scenario::tx_only ? upa.nx : ula_rx.n; }
        Index grid_cols() const { return scenario == Scenario::tx_only ? upa.ny : ula_tx.n; }
    };

    // Parses the snake_case JSON mirror of ExperimentConfig.
    ExperimentConfig config_from_json(const nlohmann::json &j);

    // Loads a config file; CEAAD_MASTER_SEED in the environment, when set,
    // overrides the file's master_seed (CI rerun hook).
    ExperimentConfig load_config(const std::string &path);

    struct TrialRecord
    {
        int sweep_index = 0;
        double sweep_value = 0.0;
        int trial = 0;
        std::string method;
        double nmse_value = 0.0;
        bool failed = false;
        std::string error;
        std::uint64_t data_hash = 0; // fingerprint of the (H, b, F, y) tuple
        double wall_ms = 0.0;
    };

    struct ResultRow
    {
        std::string method;
        std::string sweep_name;
        double sweep_value = 0.0;
        double mean_nmse = 0.0;
        double median_nmse = 0.0;
        double std_nmse = 0.0;
        int trials = 0;   // trials aggregated (successful)
        int failures = 0; // trials excluded
        double wall_ms = 0.0;
    };

    struct SweepResult
    {
        std::string sweep_name;
        std::vector<ResultRow> rows;        // sorted by (method, sweep value)
        std::vector<TrialRecord> records;   // per-trial log, fixed order
    };

    // Generated inputs shared by every method within one trial.
    struct TxTrialData
    {
        ChannelRealization channel;
        BlockagePattern pattern;
        CMat F;
        double noise_var = 0.0;
        CVec y;
    };

    struct JointTrialData
    {
        JointChannelRealization channel;
        JointBlockagePattern pattern;
        JointSounding sounding;
        double noise_var = 0.0;
        CVec y;
    };

    TxTrialData gen_tx_trial_data(const ExperimentConfig &config, Index k_measurements,
                                  double noise_var, int trial_index);
    JointTrialData gen_joint_trial_data(const ExperimentConfig &config, Index k_measurements,
                                        double noise_var, int trial_index);

    // Runs every configured method on one trial's shared data; one record
    // per method, in config order. Method errors are recorded, not thrown.
    std::vector<TrialRecord> run_trial(const ExperimentConfig &config, int sweep_index,
                                       double sweep_value, int trial_index);

    // Full sweep, trials optionally fanned out over `threads` workers.
    // Aggregation runs in fixed trial order after all records are collected,
    // so the result is identical for any thread count.
    SweepResult run_sweep(const ExperimentConfig &config, int threads = 1);

    enum class EmitFormat
    {
        csv,
        json,
        gnuplot_dat
    };

    EmitFormat emit_format_from_name(const std::string &name);

    // CSV columns: method,sweep_name,sweep_value,mean_nmse,median_nmse,
    // std_nmse,trials,failures,wall_ms. Numbers use the shortest decimal
    // that round-trips.
    void emit(const SweepResult &result, EmitFormat format, std::ostream &out);
    void emit_file(const SweepResult &result, EmitFormat format, const std::string &path);

    // Deterministic pairwise summation over a fixed-order range.
    double pairwise_sum(std::span<const double> values);

    std::uint64_t fnv1a64_bytes(const void *data, std::size_t size);
} // namespace ceaad

#endif
