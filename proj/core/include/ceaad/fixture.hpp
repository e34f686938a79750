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
// Self-contained JSON fixtures: a channel realization, optional ground-truth
// blockage, the probing matrices and the measurement vector, so a diagnosis
// can be rerun on externally supplied data. Complex numbers are stored as
// [re, im] pairs; blockage (tau, psi) values as decimal strings with 17
// significant digits so they round-trip exactly.

#ifndef CEAAD_FIXTURE_HPP
#define CEAAD_FIXTURE_HPP

#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "ceaad/harness.hpp"

namespace ceaad
{
    struct TxFixture
    {
        std::uint64_t seed = 0;
        UpaGeometry geometry;
        std::optional<PathSet> paths;
        CMat H;
        std::optional<BlockagePattern> truth;
        CMat F;
        double noise_var = 0.0;
        CVec y;
    };

    struct JointFixture
    {
        std::uint64_t seed = 0;
        UlaGeometry tx;
        UlaGeometry rx;
        std::optional<JointPathSet> paths;
        CMat H;
        std::optional<JointBlockagePattern> truth;
        JointSounding sounding;
        double noise_var = 0.0;
        CVec y;
    };

    using Fixture = std::variant<TxFixture, JointFixture>;

    // Generates a fixture exactly as one harness trial would (trial index 0,
    // master seed = config.master_seed), embedding the ground truth.
    TxFixture make_tx_fixture(const ExperimentConfig &config, Index k_measurements,
                              double noise_var);
    JointFixture make_joint_fixture(const ExperimentConfig &config, Index k_measurements,
                                    double noise_var);

    nlohmann::json fixture_to_json(const TxFixture &fixture);
    nlohmann::json fixture_to_json(const JointFixture &fixture);
    Fixture fixture_from_json(const nlohmann::json &j);

    void save_fixture(const Fixture &fixture, const std::string &path);
    Fixture load_fixture(const std::string &path); // throws ParseError

    // Diagnosis reports rendered for the CLI.
    nlohmann::json report_to_json(const DiagnosisReport &report);
    nlohmann::json report_to_json(const JointDiagnosisReport &report);

    // 17-significant-digit decimal string, round-trip exact for doubles.
    std::string decimal17(double v);
} // namespace ceaad

#endif
