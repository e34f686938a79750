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

#include "ceaad/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

namespace ceaad
{
    using nlohmann::json;

    std::string decimal17(double v)
    {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    namespace
    {
        json complex_json(const cplx &z)
        {
            return json::array({z.real(), z.imag()});
        }

        cplx complex_from(const json &j, const std::string &where)
        {
            if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
                throw ParseError("fixture: " + where + " must be a [re, im] pair");
            return {j[0].get<double>(), j[1].get<double>()};
        }

        json cvec_json(const CVec &v)
        {
            json out = json::array();
            for (Index i = 0; i < v.size(); i++)
                out.push_back(complex_json(v(i)));
            return out;
        }

        CVec cvec_from(const json &j, const std::string &where)
        {
            if (!j.is_array())
                throw ParseError("fixture: " + where + " must be an array");
            CVec v(static_cast<Index>(j.size()));
            for (size_t i = 0; i < j.size(); i++)
                v(static_cast<Index>(i)) = complex_from(j[i], where + "[" + std::to_string(i) + "]");
            if (!all_finite(v))
                throw ParseError("fixture: " + where + " contains non-finite entries");
            return v;
        }

        json cmat_json(const CMat &m)
        {
            return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", cvec_json(vec(m))}};
        }

        CMat cmat_from(const json &j, const std::string &where)
        {
            if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
                !j.contains("entries"))
                throw ParseError("fixture: " + where + " must carry rows, cols, entries");
            const auto rows = j["rows"].get<Index>();
            const auto cols = j["cols"].get<Index>();
            const CVec entries = cvec_from(j["entries"], where + ".entries");
            if (rows < 1 || cols < 1 || entries.size() != rows * cols)
                throw ParseError("fixture: " + where + " entry count does not match rows*cols");
            return ivec(entries, rows, cols);
        }

        json rvec_json(const RVec &v)
        {
            json out = json::array();
            for (Index i = 0; i < v.size(); i++)
                out.push_back(v(i));
            return out;
        }

        RVec rvec_from(const json &j, const std::string &where)
        {
            if (!j.is_array())
                throw ParseError("fixture: " + where + " must be an array");
            RVec v(static_cast<Index>(j.size()));
            for (size_t i = 0; i < j.size(); i++)
            {
                if (!j[i].is_number())
                    throw ParseError("fixture: " + where + "[" + std::to_string(i) +
                                     "] must be a number");
                v(static_cast<Index>(i)) = j[i].get<double>();
            }
            return v;
        }

        double decimal_from(const json &j, const std::string &where)
        {
            if (!j.is_string())
                throw ParseError("fixture: " + where + " must be a decimal string");
            const std::string s = j.get<std::string>();
            char *end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
                throw ParseError("fixture: " + where + " is not a finite decimal: '" + s + "'");
            return v;
        }

        json side_json(const std::vector<BlockedAntenna> &params)
        {
            json indices = json::array(), tau = json::array(), psi = json::array();
            for (const auto &p : params)
            {
                indices.push_back(p.index);
                tau.push_back(decimal17(p.tau));
                psi.push_back(decimal17(p.psi));
            }
            return {{"indices", indices}, {"tau", tau}, {"psi", psi}};
        }

        // Rebuilds coefficients, support and params of one side from JSON.
        void side_from(const json &j, const std::string &where, Index n, BlockageMode mode,
                       CVec &b, std::vector<Index> &support, std::vector<BlockedAntenna> &params)
        {
            b = CVec::Ones(n);
            const json &indices = j.contains("indices") ? j["indices"] : json::array();
            const json &tau = j.contains("tau") ? j["tau"] : json::array();
            const json &psi = j.contains("psi") ? j["psi"] : json::array();
            if (indices.size() != tau.size() || indices.size() != psi.size())
                throw ParseError("fixture: " + where + " indices/tau/psi lengths differ");
            for (size_t i = 0; i < indices.size(); i++)
            {
                const auto idx = indices[i].get<Index>();
                if (idx < 0 || idx >= n)
                    throw ParseError("fixture: " + where + ".indices[" + std::to_string(i) +
                                     "] out of range");
                BlockedAntenna a;
                a.index = idx;
                a.tau = decimal_from(tau[i], where + ".tau[" + std::to_string(i) + "]");
                a.psi = decimal_from(psi[i], where + ".psi[" + std::to_string(i) + "]");
                b(idx) = std::polar(a.tau, a.psi);
                support.push_back(idx);
                params.push_back(a);
            }
            if (mode == BlockageMode::complete)
                for (Index idx : support)
                    b(idx) = 0.0;
        }

        std::string mode_name(BlockageMode mode)
        {
            return mode == BlockageMode::partial ? "partial" : "complete";
        }

        BlockageMode mode_from(const json &j, const std::string &where)
        {
            if (!j.is_string())
                throw ParseError("fixture: " + where + " must be 'partial' or 'complete'");
            const std::string s = j.get<std::string>();
            if (s == "partial")
                return BlockageMode::partial;
            if (s == "complete")
                return BlockageMode::complete;
            throw ParseError("fixture: " + where + " must be 'partial' or 'complete'");
        }

        json support_json(const std::vector<Index> &support)
        {
            json out = json::array();
            for (Index i : support)
                out.push_back(i);
            return out;
        }
    } // namespace

    TxFixture make_tx_fixture(const ExperimentConfig &config, Index k_measurements,
                              double noise_var)
    {
        const TxTrialData data = gen_tx_trial_data(config, k_measurements, noise_var, 0);
        TxFixture f;
        f.seed = config.master_seed;
        f.geometry = config.upa;
        f.paths = data.channel.paths;
        f.H = data.channel.H;
        f.truth = data.pattern;
        f.F = data.F;
        f.noise_var = noise_var;
        f.y = data.y;
        return f;
    }

    JointFixture make_joint_fixture(const ExperimentConfig &config, Index k_measurements,
                                    double noise_var)
    {
        const JointTrialData data = gen_joint_trial_data(config, k_measurements, noise_var, 0);
        JointFixture f;
        f.seed = config.master_seed;
        f.tx = config.ula_tx;
        f.rx = config.ula_rx;
        f.paths = data.channel.paths;
        f.H = data.channel.H;
        f.truth = data.pattern;
        f.sounding = data.sounding;
        f.noise_var = noise_var;
        f.y = data.y;
        return f;
    }

    json fixture_to_json(const TxFixture &fixture)
    {
        json j{{"format", "ceaad-fixture"},
               {"version", 1},
               {"scenario", "tx_only"},
               {"seed", fixture.seed},
               {"geometry",
                {{"nx", fixture.geometry.nx},
                 {"ny", fixture.geometry.ny},
                 {"dx", fixture.geometry.dx},
                 {"dy", fixture.geometry.dy}}},
               {"channel", cmat_json(fixture.H)},
               {"sounding",
                {{"noise_var", fixture.noise_var}, {"precoder", cmat_json(fixture.F)}}},
               {"measurements", cvec_json(fixture.y)}};
        if (fixture.paths)
            j["paths"] = {{"gains", cvec_json(fixture.paths->gains)},
                          {"elevation", rvec_json(fixture.paths->elevation)},
                          {"azimuth", rvec_json(fixture.paths->azimuth)}};
        if (fixture.truth)
        {
            json b = side_json(fixture.truth->params);
            b["mode"] = mode_name(fixture.truth->mode);
            j["blockage"] = std::move(b);
        }
        return j;
    }

    json fixture_to_json(const JointFixture &fixture)
    {
        json j{{"format", "ceaad-fixture"},
               {"version", 1},
               {"scenario", "joint"},
               {"seed", fixture.seed},
               {"geometry",
                {{"n_tx", fixture.tx.n}, {"n_rx", fixture.rx.n}, {"spacing", fixture.tx.d}}},
               {"channel", cmat_json(fixture.H)},
               {"sounding",
                {{"noise_var", fixture.noise_var},
                 {"precoder", cmat_json(fixture.sounding.F)},
                 {"combiner", cmat_json(fixture.sounding.W)}}},
               {"measurements", cvec_json(fixture.y)}};
        if (fixture.paths)
            j["paths"] = {{"gains", cvec_json(fixture.paths->gains)},
                          {"arrival", rvec_json(fixture.paths->arrival)},
                          {"departure", rvec_json(fixture.paths->departure)}};
        if (fixture.truth)
            j["blockage"] = {{"mode", mode_name(fixture.truth->mode)},
                             {"tx", side_json(fixture.truth->tx_params)},
                             {"rx", side_json(fixture.truth->rx_params)}};
        return j;
    }

    Fixture fixture_from_json(const json &j)
    {
        if (j.value("format", "") != "ceaad-fixture")
            throw ParseError("fixture: missing or unknown 'format' marker");
        if (j.value("version", 0) != 1)
            throw ParseError("fixture: unsupported version");
        const std::string scenario = j.value("scenario", "");
        const json &geometry = j.contains("geometry") ? j["geometry"] : json::object();
        const json &sounding = j.contains("sounding") ? j["sounding"] : json::object();
        if (!sounding.contains("noise_var") || !sounding["noise_var"].is_number())
            throw ParseError("fixture: sounding.noise_var missing or not a number");
        if (!j.contains("measurements"))
            throw ParseError("fixture: missing measurements");

        if (scenario == "tx_only")
        {
            TxFixture f;
            f.seed = j.value("seed", std::uint64_t{0});
            f.geometry.nx = geometry.value("nx", Index{0});
            f.geometry.ny = geometry.value("ny", Index{0});
            f.geometry.dx = geometry.value("dx", 0.5);
            f.geometry.dy = geometry.value("dy", 0.5);
            f.H = cmat_from(j.contains("channel") ? j["channel"] : json{}, "channel");
            if (f.geometry.nx != f.H.rows() || f.geometry.ny != f.H.cols())
                throw ParseError("fixture: geometry does not match channel dimensions");
            f.noise_var = sounding["noise_var"].get<double>();
            f.F = cmat_from(sounding.contains("precoder") ? sounding["precoder"] : json{},
                            "sounding.precoder");
            f.y = cvec_from(j["measurements"], "measurements");
            if (f.F.cols() != f.H.size())
                throw ParseError("fixture: precoder columns do not match antenna count");
            if (f.y.size() != f.F.rows())
                throw ParseError("fixture: measurement count does not match precoder rows");
            if (j.contains("paths"))
            {
                PathSet p;
                p.gains = cvec_from(j["paths"]["gains"], "paths.gains");
                p.elevation = rvec_from(j["paths"]["elevation"], "paths.elevation");
                p.azimuth = rvec_from(j["paths"]["azimuth"], "paths.azimuth");
                f.paths = std::move(p);
            }
            if (j.contains("blockage"))
            {
                BlockagePattern truth;
                truth.mode = mode_from(j["blockage"].contains("mode") ? j["blockage"]["mode"]
                                                                      : json{},
                                       "blockage.mode");
                side_from(j["blockage"], "blockage", f.H.size(), truth.mode, truth.b,
                          truth.support, truth.params);
                f.truth = std::move(truth);
            }
            return f;
        }
        if (scenario == "joint")
        {
            JointFixture f;
            f.seed = j.value("seed", std::uint64_t{0});
            const double spacing = geometry.value("spacing", 0.5);
            f.tx = {geometry.value("n_tx", Index{0}), spacing};
            f.rx = {geometry.value("n_rx", Index{0}), spacing};
            f.H = cmat_from(j.contains("channel") ? j["channel"] : json{}, "channel");
            if (f.rx.n != f.H.rows() || f.tx.n != f.H.cols())
                throw ParseError("fixture: geometry does not match channel dimensions");
            f.noise_var = sounding["noise_var"].get<double>();
            f.sounding.F = cmat_from(sounding.contains("precoder") ? sounding["precoder"] : json{},
                                     "sounding.precoder");
            f.sounding.W = cmat_from(sounding.contains("combiner") ? sounding["combiner"] : json{},
                                     "sounding.combiner");
            if (f.sounding.F.cols() != f.tx.n || f.sounding.W.cols() != f.rx.n ||
                f.sounding.F.rows() != f.sounding.W.rows())
                throw ParseError("fixture: sounding dimensions do not match geometry");
            f.sounding.U.resize(f.sounding.F.rows(), f.rx.n * f.tx.n);
            for (Index k = 0; k < f.sounding.F.rows(); k++)
                f.sounding.U.row(k) = kron_row(f.sounding.F.row(k).transpose(),
                                               f.sounding.W.row(k).transpose())
                                          .transpose();
            f.y = cvec_from(j["measurements"], "measurements");
            if (f.y.size() != f.sounding.F.rows())
                throw ParseError("fixture: measurement count does not match sounding rows");
            if (j.contains("paths"))
            {
                JointPathSet p;
                p.gains = cvec_from(j["paths"]["gains"], "paths.gains");
                p.arrival = rvec_from(j["paths"]["arrival"], "paths.arrival");
                p.departure = rvec_from(j["paths"]["departure"], "paths.departure");
                f.paths = std::move(p);
            }
            if (j.contains("blockage"))
            {
                const json &bl = j["blockage"];
                JointBlockagePattern truth;
                truth.mode =
                    mode_from(bl.contains("mode") ? bl["mode"] : json{}, "blockage.mode");
                side_from(bl.contains("tx") ? bl["tx"] : json::object(), "blockage.tx", f.tx.n,
                          truth.mode, truth.b_tx, truth.tx_support, truth.tx_params);
                side_from(bl.contains("rx") ? bl["rx"] : json::object(), "blockage.rx", f.rx.n,
                          truth.mode, truth.b_rx, truth.rx_support, truth.rx_params);
                truth.B = truth.b_rx * truth.b_tx.transpose();
                for (Index n = 0; n < f.tx.n; n++)
                    for (Index m = 0; m < f.rx.n; m++)
                        if (std::find(truth.tx_support.begin(), truth.tx_support.end(), n) !=
                                truth.tx_support.end() ||
                            std::find(truth.rx_support.begin(), truth.rx_support.end(), m) !=
                                truth.rx_support.end())
                            truth.support.push_back(n * f.rx.n + m);
                f.truth = std::move(truth);
            }
            return f;
        }
        throw ParseError("fixture: scenario must be 'tx_only' or 'joint'");
    }

    void save_fixture(const Fixture &fixture, const std::string &path)
    {
        const json j = std::visit([](const auto &f) { return fixture_to_json(f); }, fixture);
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw Error("cannot open output file: " + path);
        out << j.dump(2) << '\n';
        if (!out)
            throw Error("write failed: " + path);
    }

    Fixture load_fixture(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open fixture file: " + path);
        json j;
        try
        {
            j = json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw ParseError("fixture " + path + ": " + e.what());
        }
        return fixture_from_json(j);
    }

    json report_to_json(const DiagnosisReport &report)
    {
        json params = json::array();
        for (const auto &p : report.params)
            params.push_back({{"index", p.index}, {"tau", p.tau}, {"psi", p.psi}});
        return {{"support", support_json(report.support)},
                {"params", params},
                {"best_objective", report.best_objective},
                {"ls_regularized", report.ls_regularized},
                {"iteration_best_objective", report.trace.best_zeta},
                {"b_hat", cvec_json(report.b_hat)},
                {"q_hat", cvec_json(report.q_hat)}};
    }

    json report_to_json(const JointDiagnosisReport &report)
    {
        json params = json::array();
        for (const auto &p : report.cell_params)
            params.push_back({{"index", p.index}, {"tau", p.tau}, {"psi", p.psi}});
        return {{"support", support_json(report.support)},
                {"tx_support", support_json(report.tx_support)},
                {"rx_support", support_json(report.rx_support)},
                {"cell_params", params},
                {"best_objective", report.best_objective},
                {"ls_regularized", report.ls_regularized},
                {"iteration_best_objective", report.trace.best_zeta},
                {"B_hat", cmat_json(report.B_hat)},
                {"q_hat", cvec_json(report.q_hat)}};
    }
} // namespace ceaad
