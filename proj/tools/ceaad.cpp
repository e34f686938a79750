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
// Command line front end. Exit codes: 0 success, 2 usage or input error,
// 3 runtime/solver error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ceaad/fixture.hpp"
#include "ceaad/harness.hpp"

namespace
{
    using nlohmann::json;
    using namespace ceaad;

    constexpr int exit_ok = 0;
    constexpr int exit_input = 2;
    constexpr int exit_runtime = 3;

    struct GlobalFlags
    {
        std::optional<std::uint64_t> seed;
        int threads = 1;
        bool quiet = false;
    };

    void write_output(const json &j, const std::string &out_path)
    {
        if (out_path.empty())
        {
            std::cout << j.dump(2) << '\n';
            return;
        }
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw Error("cannot open output file: " + out_path);
        out << j.dump(2) << '\n';
        if (!out)
            throw Error("write failed: " + out_path);
    }

    struct DiagnoseArgs
    {
        std::string measurements_path;
        std::string channel_path;
        std::string method = "ce-aad";
        std::string mode; // empty: follow the fixture truth, else flag wins
        CeConfig solver;
        std::string out_path;
    };

    json diagnose_tx(const DiagnoseArgs &args, const TxFixture &meas, const TxFixture &chan,
                     std::uint64_t seed)
    {
        if (meas.F.cols() != chan.H.size())
            throw DimensionMismatch("measurement fixture probes " + std::to_string(meas.F.cols()) +
                                    " antennas, channel fixture has " +
                                    std::to_string(chan.H.size()));
        const CVec h = vec(chan.H);
        Rng rng = Rng::derive(seed, 0, "solver/" + args.method);

        json out;
        CVec b_hat;
        if (args.method == "ce-aad" || args.method == "plain-ce")
        {
            CeConfig solver = args.solver;
            if (args.method == "plain-ce")
                solver.block_rows = solver.block_cols = 1;
            const DiagnosisReport report = run_ce_aad(meas.y, meas.F, h, chan.geometry.nx,
                                                      chan.geometry.ny, solver, rng);
            out = report_to_json(report);
            b_hat = report.b_hat;
        }
        else if (args.method == "omp")
        {
            const auto r = omp(meas.y, meas.F, (meas.F.cols() + 3) / 4,
                               std::sqrt(static_cast<double>(meas.F.rows()) * meas.noise_var));
            b_hat = reconstruct_b(r.q_hat, h, r.support);
            json support = json::array(), params = json::array();
            for (Index i : r.support)
                support.push_back(i);
            for (const auto &p : extract_params(r.q_hat, h, r.support))
                params.push_back({{"index", p.index}, {"tau", p.tau}, {"psi", p.psi}});
            out = {{"support", support}, {"params", params}};
        }
        else if (args.method == "oracle")
        {
            if (!chan.truth)
                throw ParseError("oracle diagnosis requires a fixture with embedded ground truth");
            const CVec q = oracle_ls(meas.y, meas.F, chan.truth->support);
            b_hat = reconstruct_b(q, h, chan.truth->support);
            json support = json::array(), params = json::array();
            for (Index i : chan.truth->support)
                support.push_back(i);
            for (const auto &p : extract_params(q, h, chan.truth->support))
                params.push_back({{"index", p.index}, {"tau", p.tau}, {"psi", p.psi}});
            out = {{"support", support}, {"params", params}};
        }
        else
            throw ParseError("unknown method '" + args.method + "'");

        out["method"] = args.method;
        out["scenario"] = "tx_only";
        if (chan.truth)
            out["nmse"] = nmse(b_hat, chan.truth->b);
        return out;
    }

    json diagnose_joint(const DiagnoseArgs &args, const JointFixture &meas,
                        const JointFixture &chan, std::uint64_t seed)
    {
        if (meas.sounding.F.cols() != chan.tx.n || meas.sounding.W.cols() != chan.rx.n)
            throw DimensionMismatch("measurement fixture sounding does not match channel fixture "
                                    "geometry");
        const CVec h = vec(chan.H);
        Rng rng = Rng::derive(seed, 0, "solver/" + args.method);

        json out;
        CMat b_hat;
        if (args.method == "ce-aad")
        {
            const JointDiagnosisReport report =
                run_joint_ce_aad(meas.y, meas.sounding.U, h, chan.rx.n, chan.tx.n, args.solver,
                                 rng);
            out = report_to_json(report);
            b_hat = report.B_hat;
        }
        else if (args.method == "plain-ce")
        {
            CeConfig solver = args.solver;
            const DiagnosisReport report =
                plain_ce(meas.y, meas.sounding.U, h, chan.rx.n, chan.tx.n, solver, rng);
            out = report_to_json(report);
            b_hat = ivec(report.b_hat, chan.rx.n, chan.tx.n);
        }
        else if (args.method == "omp")
        {
            const auto r = omp(meas.y, meas.sounding.U, (meas.sounding.U.cols() + 3) / 4,
                               std::sqrt(static_cast<double>(meas.y.size()) * meas.noise_var));
            b_hat = ivec(reconstruct_b(r.q_hat, h, r.support), chan.rx.n, chan.tx.n);
            json support = json::array();
            for (Index i : r.support)
                support.push_back(i);
            out = {{"support", support}};
        }
        else if (args.method == "oracle")
        {
            if (!chan.truth)
                throw ParseError("oracle diagnosis requires a fixture with embedded ground truth");
            const CVec q = oracle_ls(meas.y, meas.sounding.U, chan.truth->support);
            b_hat = ivec(reconstruct_b(q, h, chan.truth->support), chan.rx.n, chan.tx.n);
            json support = json::array();
            for (Index i : chan.truth->support)
                support.push_back(i);
            out = {{"support", support}};
        }
        else
            throw ParseError("unknown method '" + args.method + "'");

        out["method"] = args.method;
        out["scenario"] = "joint";
        if (chan.truth)
            out["nmse"] = nmse(b_hat, chan.truth->B);
        return out;
    }

    int cmd_diagnose(const GlobalFlags &global, DiagnoseArgs args)
    {
        Fixture meas, chan;
        try
        {
            meas = load_fixture(args.measurements_path);
            chan = load_fixture(args.channel_path);
            if (meas.index() != chan.index())
                throw ParseError("measurement and channel fixtures use different scenarios");
            if (!args.mode.empty())
                args.solver.mode =
                    args.mode == "complete" ? BlockageMode::complete : BlockageMode::partial;
            else
            {
                // Follow the embedded truth's mode when present.
                if (const auto *tx = std::get_if<TxFixture>(&chan); tx != nullptr && tx->truth)
                    args.solver.mode = tx->truth->mode;
                if (const auto *jt = std::get_if<JointFixture>(&chan); jt != nullptr && jt->truth)
                    args.solver.mode = jt->truth->mode;
            }
            args.solver.validate();
        }
        catch (const Error &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_input;
        }

        try
        {
            const std::uint64_t seed =
                global.seed.value_or(std::visit([](const auto &f) { return f.seed; }, chan));
            const json out =
                std::holds_alternative<TxFixture>(meas)
                    ? diagnose_tx(args, std::get<TxFixture>(meas), std::get<TxFixture>(chan), seed)
                    : diagnose_joint(args, std::get<JointFixture>(meas),
                                     std::get<JointFixture>(chan), seed);
            write_output(out, args.out_path);
        }
        catch (const ParseError &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_input;
        }
        catch (const DimensionMismatch &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_input;
        }
        catch (const std::exception &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_runtime;
        }
        return exit_ok;
    }

    int cmd_sweep(const GlobalFlags &global, const std::string &config_path,
                  const std::string &out_path, const std::string &format_name)
    {
        ExperimentConfig config;
        EmitFormat format;
        try
        {
            config = load_config(config_path);
            if (global.seed)
                config.master_seed = *global.seed;
            format = emit_format_from_name(format_name);
        }
        catch (const Error &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_input;
        }

        try
        {
            const auto start = std::chrono::steady_clock::now();
            const SweepResult result = run_sweep(config, global.threads);
            emit_file(result, format, out_path);
            if (!global.quiet)
            {
                const double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
                std::cerr << "sweep: " << result.rows.size() << " rows -> " << out_path << " ("
                          << secs << " s)\n";
            }
        }
        catch (const std::exception &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_runtime;
        }
        return exit_ok;
    }

    struct GenFixtureArgs
    {
        std::string scenario = "tx_only";
        Index nx = 10, ny = 10;
        double dx = 0.5, dy = 0.5;
        Index n_tx = 10, n_rx = 10;
        double spacing = 0.5;
        int paths = 10;
        double p_b = 0.1;
        std::string mode = "partial";
        Index cluster_rows = 0, cluster_cols = 0;
        Index align_rows = 1, align_cols = 1;
        int measurements = 50;
        double snr_db = 5.0;
        bool noiseless = false;
        std::uint64_t seed = 1;
        std::string out_path;
    };

    int cmd_gen_fixture(const GenFixtureArgs &args)
    {
        try
        {
            ExperimentConfig config;
            config.master_seed = args.seed;
            config.paths = args.paths;
            config.blockage_probability = args.p_b;
            if (args.mode != "partial" && args.mode != "complete")
                throw ParseError("mode must be 'partial' or 'complete'");
            config.mode = args.mode == "complete" ? BlockageMode::complete : BlockageMode::partial;
            if (args.paths < 1 || args.measurements < 1)
                throw ParseError("paths and measurements must be >= 1");
            const double noise_var = args.noiseless ? 0.0 : noise_var_from_snr(args.snr_db);

            Fixture fixture;
            if (args.scenario == "tx_only")
            {
                config.scenario = Scenario::tx_only;
                config.upa = {args.nx, args.ny, args.dx, args.dy};
                if ((args.cluster_rows > 0) != (args.cluster_cols > 0))
                    throw ParseError("give both --cluster-rows and --cluster-cols or neither");
                if (args.cluster_rows > 0)
                    config.cluster.shape = {args.cluster_rows, args.cluster_cols};
                config.cluster.align_rows = args.align_rows;
                config.cluster.align_cols = args.align_cols;
                fixture = make_tx_fixture(config, args.measurements, noise_var);
            }
            else if (args.scenario == "joint")
            {
                config.scenario = Scenario::joint;
                config.ula_tx = {args.n_tx, args.spacing};
                config.ula_rx = {args.n_rx, args.spacing};
                fixture = make_joint_fixture(config, args.measurements, noise_var);
            }
            else
                throw ParseError("scenario must be 'tx_only' or 'joint'");

            save_fixture(fixture, args.out_path);
        }
        catch (const ParseError &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_input;
        }
        catch (const InvalidProbability &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_input;
        }
        catch (const Error &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_input;
        }
        catch (const std::exception &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_runtime;
        }
        return exit_ok;
    }

    int cmd_plot_data(const std::string &results_path, const std::string &out_path)
    {
        SweepResult result;
        try
        {
            std::ifstream in(results_path);
            if (!in)
                throw ParseError("cannot open results file: " + results_path);
            json j;
            try
            {
                j = json::parse(in);
            }
            catch (const json::parse_error &e)
            {
                throw ParseError(std::string("results: ") + e.what());
            }
            if (!j.contains("rows") || !j["rows"].is_array())
                throw ParseError("results: missing 'rows' array");
            result.sweep_name = j.value("sweep_name", "sweep");
            for (const auto &r : j["rows"])
                result.rows.push_back({r.value("method", std::string{}),
                                       r.value("sweep_name", result.sweep_name),
                                       r.value("sweep_value", 0.0), r.value("mean_nmse", 0.0),
                                       r.value("median_nmse", 0.0), r.value("std_nmse", 0.0),
                                       r.value("trials", 0), r.value("failures", 0),
                                       r.value("wall_ms", 0.0)});
        }
        catch (const Error &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_input;
        }

        try
        {
            emit_file(result, EmitFormat::gnuplot_dat, out_path);
        }
        catch (const std::exception &e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return exit_runtime;
        }
        return exit_ok;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"blocked-antenna diagnosis for mmWave MIMO arrays"};
    app.require_subcommand(1);

    GlobalFlags global;
    std::uint64_t seed_flag = 0;
    auto *seed_opt = app.add_option("--seed", seed_flag, "Override the fixture/config seed");
    app.add_option("--threads", global.threads, "Worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    app.add_flag("--quiet", global.quiet, "Suppress progress output");

    DiagnoseArgs diag;
    auto *diagnose = app.add_subcommand("diagnose", "Diagnose blocked antennas from fixtures");
    diagnose->fallthrough();
    diagnose->add_option("measurements", diag.measurements_path,
                         "Fixture carrying sounding matrices and measurements")
        ->required();
    diagnose->add_option("channel", diag.channel_path,
                         "Fixture carrying the channel (may be the same file)")
        ->required();
    diagnose->add_option("--method", diag.method, "ce-aad | plain-ce | omp | oracle");
    diagnose->add_option("--mode", diag.mode, "partial | complete (default: fixture truth)")
        ->check(CLI::IsMember({"partial", "complete"}));
    diagnose->add_option("--candidates", diag.solver.n_candidates, "Candidates per iteration");
    diagnose->add_option("--elites", diag.solver.n_elites, "Elite count");
    diagnose->add_option("--iterations", diag.solver.n_iterations, "Iteration count");
    diagnose->add_option("--epsilon", diag.solver.epsilon, "Sparsity penalty weight");
    diagnose->add_option("--block-rows", diag.solver.block_rows, "Block rows");
    diagnose->add_option("--block-cols", diag.solver.block_cols, "Block cols");
    diagnose->add_option("--smoothing", diag.solver.smoothing_alpha, "Probability smoothing");
    diagnose->add_option("--out", diag.out_path, "Write the report here instead of stdout");

    std::string sweep_config, sweep_out, sweep_format = "csv";
    auto *sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep from a config file");
    sweep->fallthrough();
    sweep->add_option("config", sweep_config, "Experiment config (JSON)")->required();
    sweep->add_option("--out", sweep_out, "Output file")->required();
    sweep->add_option("--format", sweep_format, "csv | json | gnuplot-dat");

    GenFixtureArgs gen;
    auto *gen_fixture = app.add_subcommand("gen-fixture", "Generate a self-contained fixture");
    gen_fixture->fallthrough();
    gen_fixture->add_option("--scenario", gen.scenario, "tx_only | joint");
    gen_fixture->add_option("--nx", gen.nx, "Planar array rows");
    gen_fixture->add_option("--ny", gen.ny, "Planar array cols");
    gen_fixture->add_option("--dx", gen.dx, "Row spacing (wavelengths)");
    gen_fixture->add_option("--dy", gen.dy, "Col spacing (wavelengths)");
    gen_fixture->add_option("--n-tx", gen.n_tx, "Transmit ULA size (joint)");
    gen_fixture->add_option("--n-rx", gen.n_rx, "Receive ULA size (joint)");
    gen_fixture->add_option("--spacing", gen.spacing, "ULA spacing (wavelengths)");
    gen_fixture->add_option("--paths", gen.paths, "Multipath count");
    gen_fixture->add_option("--p-b", gen.p_b, "Blockage probability");
    gen_fixture->add_option("--mode", gen.mode, "partial | complete");
    gen_fixture->add_option("--cluster-rows", gen.cluster_rows, "Force cluster rows");
    gen_fixture->add_option("--cluster-cols", gen.cluster_cols, "Force cluster cols");
    gen_fixture->add_option("--align-rows", gen.align_rows, "Cluster row alignment");
    gen_fixture->add_option("--align-cols", gen.align_cols, "Cluster col alignment");
    gen_fixture->add_option("--measurements", gen.measurements, "Measurement count K");
    gen_fixture->add_option("--snr", gen.snr_db, "SNR in dB");
    gen_fixture->add_flag("--noiseless", gen.noiseless, "Zero measurement noise");
    gen_fixture->add_option("--out", gen.out_path, "Output fixture path")->required();

    std::string plot_in, plot_out;
    auto *plot = app.add_subcommand("plot-data", "Convert sweep JSON results to gnuplot blocks");
    plot->fallthrough();
    plot->add_option("results", plot_in, "Sweep results (JSON)")->required();
    plot->add_option("--out", plot_out, "Output .dat path")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    if (seed_opt->count() > 0)
        global.seed = seed_flag;
    if (gen_fixture->parsed())
        gen.seed = global.seed.value_or(gen.seed);

    if (diagnose->parsed())
        return cmd_diagnose(global, diag);
    if (sweep->parsed())
        return cmd_sweep(global, sweep_config, sweep_out, sweep_format);
    if (gen_fixture->parsed())
        return cmd_gen_fixture(gen);
    if (plot->parsed())
        return cmd_plot_data(plot_in, plot_out);
    return exit_input;
}
