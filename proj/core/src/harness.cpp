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

#include "ceaad/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

namespace ceaad
{
    using nlohmann::json;

    double nmse(const CVec &estimate, const CVec &truth)
    {
        if (estimate.size() != truth.size())
            throw DimensionMismatch("nmse: estimate and truth sizes differ");
        const double denom = truth.squaredNorm();
        if (denom == 0.0)
            throw ZeroTruth("nmse: reference has zero norm");
        return (estimate - truth).squaredNorm() / denom;
    }

    double nmse(const CMat &estimate, const CMat &truth)
    {
        if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
            throw DimensionMismatch("nmse: estimate and truth shapes differ");
        const double denom = truth.squaredNorm();
        if (denom == 0.0)
            throw ZeroTruth("nmse: reference has zero norm");
        return (estimate - truth).squaredNorm() / denom;
    }

    const std::vector<std::string> &known_methods()
    {
        static const std::vector<std::string> methods{"ce-aad", "plain-ce", "omp", "oracle"};
        return methods;
    }

    namespace
    {
        std::string joined_methods()
        {
            std::string s;
            for (const auto &m : known_methods())
                s += (s.empty() ? "" : ", ") + m;
            return s;
        }

        bool timing_env_enabled()
        {
            const char *v = std::getenv("CEAAD_TIMING");
            return v != nullptr && v[0] != '\0' && v[0] != '0';
        }

        Index integral_sweep_value(double v)
        {
            const auto k = static_cast<Index>(std::llround(v));
            if (static_cast<double>(k) != v || k < 1)
                throw Error("measurement count " + std::to_string(v) +
                            " is not a positive integer");
            return k;
        }
    } // namespace

    void ExperimentConfig::validate() const
    {
        if (!(blockage_probability >= 0.0 && blockage_probability <= 1.0))
            throw InvalidProbability("blockage_probability outside [0, 1]");
        if (paths < 1)
            throw Error("paths must be >= 1");
        if (trials < 1)
            throw Error("trials must be >= 1");
        if (measurements < 1)
            throw Error("measurements must be >= 1");
        if (scenario == Scenario::tx_only)
        {
            if (upa.nx < 1 || upa.ny < 1 || upa.dx <= 0.0 || upa.dy <= 0.0)
                throw Error("invalid planar array geometry");
        }
        else
        {
            if (ula_tx.n < 1 || ula_rx.n < 1 || ula_tx.d <= 0.0 || ula_rx.d <= 0.0)
                throw Error("invalid linear array geometry");
        }
        if (sweep_values.empty())
            throw Error("sweep_values must be non-empty");
        for (size_t i = 0; i + 1 < sweep_values.size(); i++)
            if (!(sweep_values[i] < sweep_values[i + 1]))
                throw Error("sweep_values must be strictly increasing");
        if (sweep_variable == SweepVariable::measurements)
            for (double v : sweep_values)
                integral_sweep_value(v);
        if (noiseless && sweep_variable == SweepVariable::snr_db)
            throw Error("noiseless conflicts with an SNR sweep");
        if (methods.empty())
            throw Error("methods must be non-empty");
        for (const auto &m : methods)
            if (std::find(known_methods().begin(), known_methods().end(), m) ==
                known_methods().end())
                throw Error("unknown method '" + m + "' (valid: " + joined_methods() + ")");
        solver.validate();
    }

    // --- config parsing -------------------------------------------------

    namespace
    {
        [[noreturn]] void missing(const char *key)
        {
            throw ParseError(std::string("config: missing field '") + key + "'");
        }

        const json &require(const json &j, const char *key)
        {
            auto it = j.find(key);
            if (it == j.end())
                missing(key);
            return *it;
        }

        double as_number(const json &j, const char *key)
        {
            if (!j.is_number())
                throw ParseError(std::string("config: field '") + key + "' must be a number");
            return j.get<double>();
        }

        BlockageMode mode_from_string(const std::string &s)
        {
            if (s == "partial")
                return BlockageMode::partial;
            if (s == "complete")
                return BlockageMode::complete;
            throw ParseError("config: mode must be 'partial' or 'complete', got '" + s + "'");
        }
    } // namespace

    ExperimentConfig config_from_json(const json &j)
    {
        ExperimentConfig c;
        const std::string scenario = require(j, "scenario").get<std::string>();
        if (scenario == "tx_only")
            c.scenario = Scenario::tx_only;
        else if (scenario == "joint")
            c.scenario = Scenario::joint;
        else
            throw ParseError("config: scenario must be 'tx_only' or 'joint', got '" + scenario +
                             "'");

        if (c.scenario == Scenario::tx_only)
        {
            c.upa.nx = j.value("nx", 10);
            c.upa.ny = j.value("ny", 10);
            c.upa.dx = j.value("dx", 0.5);
            c.upa.dy = j.value("dy", 0.5);
        }
        else
        {
            c.ula_tx = {j.value("n_tx", Index{10}), j.value("spacing", 0.5)};
            c.ula_rx = {j.value("n_rx", Index{10}), j.value("spacing", 0.5)};
        }

        c.paths = j.value("paths", 10);
        c.blockage_probability = as_number(require(j, "blockage_probability"),
                                           "blockage_probability");
        c.mode = mode_from_string(j.value("mode", "partial"));

        if (auto it = j.find("cluster"); it != j.end() && !it->is_null())
        {
            const json &cl = *it;
            if (cl.contains("rows") != cl.contains("cols"))
                throw ParseError("config: cluster must give both rows and cols or neither");
            if (cl.contains("rows"))
                c.cluster.shape = {cl["rows"].get<Index>(), cl["cols"].get<Index>()};
            c.cluster.align_rows = cl.value("align_rows", Index{1});
            c.cluster.align_cols = cl.value("align_cols", Index{1});
        }

        const std::string sweep = require(j, "sweep_variable").get<std::string>();
        if (sweep == "measurements")
            c.sweep_variable = SweepVariable::measurements;
        else if (sweep == "snr_db")
            c.sweep_variable = SweepVariable::snr_db;
        else
            throw ParseError("config: sweep_variable must be 'measurements' or 'snr_db'");
        c.sweep_values = require(j, "sweep_values").get<std::vector<double>>();

        c.measurements = j.value("measurements", 50);
        if (auto it = j.find("snr_db"); it != j.end())
        {
            if (it->is_null())
                c.noiseless = true;
            else
                c.snr_db = as_number(*it, "snr_db");
        }
        if (j.value("noiseless", false))
            c.noiseless = true;

        c.methods = require(j, "methods").get<std::vector<std::string>>();
        c.trials = j.value("trials", 100);
        c.master_seed = j.value("master_seed", std::uint64_t{1});
        c.collect_timing = j.value("collect_timing", false);

        if (auto it = j.find("solver"); it != j.end())
        {
            const json &s = *it;
            c.solver.n_candidates = s.value("n_candidates", 400);
            c.solver.n_elites = s.value("n_elites", 50);
            c.solver.n_iterations = s.value("n_iterations", 20);
            c.solver.epsilon = s.value("epsilon", 0.6);
            c.solver.block_rows = s.value("block_rows", Index{2});
            c.solver.block_cols = s.value("block_cols", Index{2});
            c.solver.smoothing_alpha = s.value("smoothing_alpha", 1.0);
        }
        c.solver.mode = c.mode;

        c.validate();
        return c;
    }

    ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open config file: " + path);
        json j;
        try
        {
            j = json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw ParseError("config " + path + ": " + e.what());
        }
        ExperimentConfig c = config_from_json(j);
        if (const char *env = std::getenv("CEAAD_MASTER_SEED"); env != nullptr && *env != '\0')
        {
            std::uint64_t seed = 0;
            const auto res = std::from_chars(env, env + std::char_traits<char>::length(env), seed);
            if (res.ec != std::errc{} || *res.ptr != '\0')
                throw ParseError("CEAAD_MASTER_SEED is not an unsigned integer");
            c.master_seed = seed;
        }
        return c;
    }

    // --- trial execution ------------------------------------------------

    std::uint64_t fnv1a64_bytes(const void *data, std::size_t size)
    {
        const auto *p = static_cast<const unsigned char *>(data);
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t i = 0; i < size; i++)
            h = (h ^ p[i]) * 1099511628211ull;
        return h;
    }

    namespace
    {
        std::uint64_t combine_hash(std::uint64_t a, std::uint64_t b)
        {
            return mix64(a ^ (b + 0x9E3779B97F4A7C15ull));
        }

        std::uint64_t hash_cmat(const CMat &m)
        {
            return fnv1a64_bytes(m.data(), sizeof(cplx) * static_cast<std::size_t>(m.size()));
        }

        std::uint64_t hash_cvec(const CVec &v)
        {
            return fnv1a64_bytes(v.data(), sizeof(cplx) * static_cast<std::size_t>(v.size()));
        }

        Index omp_atom_cap(Index n_unknowns)
        {
            return (n_unknowns + 3) / 4; // ceil(n/4)
        }
    } // namespace

    TxTrialData gen_tx_trial_data(const ExperimentConfig &config, Index k_measurements,
                                  double noise_var, int trial_index)
    {
        const auto trial = static_cast<std::uint64_t>(trial_index);
        TxTrialData data;
        Rng rng_channel = Rng::derive(config.master_seed, trial, "channel");
        data.channel = gen_upa_channel(config.upa, config.paths, rng_channel);
        Rng rng_blockage = Rng::derive(config.master_seed, trial, "blockage");
        data.pattern = gen_blockage(config.upa, config.blockage_probability, config.mode,
                                    rng_blockage, config.cluster);
        Rng rng_sounding = Rng::derive(config.master_seed, trial, "sounding");
        data.F = gen_precoder(k_measurements, config.upa.elements(), rng_sounding);
        data.noise_var = noise_var;
        Rng rng_noise = Rng::derive(config.master_seed, trial, "noise");
        data.y = measure_tx(data.channel.H, data.pattern, data.F, noise_var, rng_noise);
        return data;
    }

    JointTrialData gen_joint_trial_data(const ExperimentConfig &config, Index k_measurements,
                                        double noise_var, int trial_index)
    {
        const auto trial = static_cast<std::uint64_t>(trial_index);
        JointTrialData data;
        Rng rng_channel = Rng::derive(config.master_seed, trial, "channel");
        data.channel = gen_ula_channel(config.ula_rx, config.ula_tx, config.paths, rng_channel);
        Rng rng_blockage = Rng::derive(config.master_seed, trial, "blockage");
        data.pattern = gen_joint_blockage(config.ula_tx, config.ula_rx,
                                          config.blockage_probability, config.mode, rng_blockage);
        Rng rng_sounding = Rng::derive(config.master_seed, trial, "sounding");
        data.sounding = gen_joint_sounding(k_measurements, config.ula_tx.n, config.ula_rx.n,
                                           rng_sounding);
        data.noise_var = noise_var;
        Rng rng_noise = Rng::derive(config.master_seed, trial, "noise");
        data.y = measure_joint(data.channel.H, data.pattern, data.sounding, noise_var, rng_noise);
        return data;
    }

    namespace
    {
        struct ResolvedPoint
        {
            Index k = 0;
            double noise_var = 0.0;
        };

        ResolvedPoint resolve_point(const ExperimentConfig &config, double sweep_value)
        {
            if (config.sweep_variable == SweepVariable::measurements)
                return {integral_sweep_value(sweep_value),
                        config.noiseless ? 0.0 : noise_var_from_snr(config.snr_db)};
            return {static_cast<Index>(config.measurements), noise_var_from_snr(sweep_value)};
        }

        double run_tx_method(const ExperimentConfig &config, const std::string &method,
                             const TxTrialData &data, int trial_index)
        {
            const CVec h = vec(data.channel.H);
            const Index rows = config.upa.nx, cols = config.upa.ny;
            CeConfig solver = config.solver;
            solver.mode = config.mode;
            Rng rng = Rng::derive(config.master_seed, static_cast<std::uint64_t>(trial_index),
                                  "solver/" + method);

            CVec b_hat;
            if (method == "ce-aad")
                b_hat = run_ce_aad(data.y, data.F, h, rows, cols, solver, rng).b_hat;
            else if (method == "plain-ce")
                b_hat = plain_ce(data.y, data.F, h, rows, cols, solver, rng).b_hat;
            else if (method == "omp")
            {
                const auto r = omp(data.y, data.F, omp_atom_cap(data.F.cols()),
                                   std::sqrt(static_cast<double>(data.F.rows())) *
                                       std::sqrt(data.noise_var));
                b_hat = reconstruct_b(r.q_hat, h, r.support);
            }
            else if (method == "oracle")
            {
                const CVec q = oracle_ls(data.y, data.F, data.pattern.support);
                b_hat = reconstruct_b(q, h, data.pattern.support);
            }
            else
                throw Error("unknown method '" + method + "'");
            return nmse(b_hat, data.pattern.b);
        }

        double run_joint_method(const ExperimentConfig &config, const std::string &method,
                                const JointTrialData &data, int trial_index)
        {
            const CVec h = vec(data.channel.H);
            const Index n_rx = config.ula_rx.n, n_tx = config.ula_tx.n;
            CeConfig solver = config.solver;
            solver.mode = config.mode;
            Rng rng = Rng::derive(config.master_seed, static_cast<std::uint64_t>(trial_index),
                                  "solver/" + method);

            CMat b_hat;
            if (method == "ce-aad")
                b_hat = run_joint_ce_aad(data.y, data.sounding.U, h, n_rx, n_tx, solver, rng).B_hat;
            else if (method == "plain-ce")
                b_hat = ivec(plain_ce(data.y, data.sounding.U, h, n_rx, n_tx, solver, rng).b_hat,
                             n_rx, n_tx);
            else if (method == "omp")
            {
                const auto r = omp(data.y, data.sounding.U, omp_atom_cap(data.sounding.U.cols()),
                                   std::sqrt(static_cast<double>(data.y.size())) *
                                       std::sqrt(data.noise_var));
                b_hat = ivec(reconstruct_b(r.q_hat, h, r.support), n_rx, n_tx);
            }
            else if (method == "oracle")
            {
                const CVec q = oracle_ls(data.y, data.sounding.U, data.pattern.support);
                b_hat = ivec(reconstruct_b(q, h, data.pattern.support), n_rx, n_tx);
            }
            else
                throw Error("unknown method '" + method + "'");
            return nmse(b_hat, data.pattern.B);
        }
    } // namespace

    std::vector<TrialRecord> run_trial(const ExperimentConfig &config, int sweep_index,
                                       double sweep_value, int trial_index)
    {
        std::vector<TrialRecord> records(config.methods.size());
        for (size_t i = 0; i < config.methods.size(); i++)
        {
            records[i].sweep_index = sweep_index;
            records[i].sweep_value = sweep_value;
            records[i].trial = trial_index;
            records[i].method = config.methods[i];
        }

        const ResolvedPoint point = resolve_point(config, sweep_value);

        TxTrialData tx_data;
        JointTrialData joint_data;
        std::uint64_t hash = 0;
        try
        {
            if (config.scenario == Scenario::tx_only)
            {
                tx_data = gen_tx_trial_data(config, point.k, point.noise_var, trial_index);
                hash = combine_hash(hash_cmat(tx_data.channel.H), hash_cvec(tx_data.pattern.b));
                hash = combine_hash(hash, hash_cmat(tx_data.F));
                hash = combine_hash(hash, hash_cvec(tx_data.y));
            }
            else
            {
                joint_data = gen_joint_trial_data(config, point.k, point.noise_var, trial_index);
                hash = combine_hash(hash_cmat(joint_data.channel.H), hash_cmat(joint_data.pattern.B));
                hash = combine_hash(hash, hash_cmat(joint_data.sounding.F));
                hash = combine_hash(hash, hash_cmat(joint_data.sounding.W));
                hash = combine_hash(hash, hash_cvec(joint_data.y));
            }
        }
        catch (const std::exception &e)
        {
            for (auto &r : records)
            {
                r.failed = true;
                r.error = e.what();
            }
            return records;
        }

        for (size_t i = 0; i < config.methods.size(); i++)
        {
            TrialRecord &rec = records[i];
            rec.data_hash = hash;
            const auto start = std::chrono::steady_clock::now();
            try
            {
                rec.nmse_value = config.scenario == Scenario::tx_only
                                     ? run_tx_method(config, rec.method, tx_data, trial_index)
                                     : run_joint_method(config, rec.method, joint_data,
                                                        trial_index);
            }
            catch (const std::exception &e)
            {
                rec.failed = true;
                rec.error = e.what();
            }
            if (config.collect_timing)
                rec.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
        }
        return records;
    }

    // --- sweep ------------------------------------------------------------

    double pairwise_sum(std::span<const double> values)
    {
        if (values.size() <= 8)
        {
            double s = 0.0;
            for (double v : values)
                s += v;
            return s;
        }
        const size_t half = values.size() / 2;
        return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
    }

    namespace
    {
        struct Stats
        {
            double mean, median, stddev;
        };

        Stats aggregate(std::vector<double> values)
        {
            const auto n = static_cast<double>(values.size());
            if (values.empty())
            {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                return {nan, nan, nan};
            }
            const double mean = pairwise_sum(values) / n;
            std::vector<double> dev2(values.size());
            for (size_t i = 0; i < values.size(); i++)
                dev2[i] = (values[i] - mean) * (values[i] - mean);
            const double stddev =
                values.size() < 2 ? 0.0 : std::sqrt(pairwise_sum(dev2) / (n - 1.0));
            std::sort(values.begin(), values.end());
            const size_t mid = values.size() / 2;
            const double median = values.size() % 2 == 1
                                      ? values[mid]
                                      : 0.5 * (values[mid - 1] + values[mid]);
            return {mean, median, stddev};
        }
    } // namespace

    SweepResult run_sweep(const ExperimentConfig &config_in, int threads)
    {
        ExperimentConfig config = config_in;
        config.validate();
        config.collect_timing = config.collect_timing || timing_env_enabled();

        const int n_sweep = static_cast<int>(config.sweep_values.size());
        const int n_jobs = n_sweep * config.trials;
        std::vector<std::vector<TrialRecord>> job_records(n_jobs);

        auto run_job = [&](int job)
        {
            const int s = job / config.trials;
            const int t = job % config.trials;
            job_records[job] = run_trial(config, s, config.sweep_values[s], t);
        };

        const int workers = std::max(1, std::min(threads, n_jobs));
        if (workers == 1)
        {
            for (int job = 0; job < n_jobs; job++)
                run_job(job);
        }
        else
        {
            std::atomic<int> next{0};
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; w++)
                pool.emplace_back(
                    [&]
                    {
                        for (int job = next.fetch_add(1); job < n_jobs; job = next.fetch_add(1))
                            run_job(job);
                    });
            for (auto &th : pool)
                th.join();
        }

        SweepResult result;
        result.sweep_name =
            config.sweep_variable == SweepVariable::measurements ? "measurements" : "snr_db";
        result.records.reserve(static_cast<size_t>(n_jobs) * config.methods.size());
        for (auto &job : job_records)
            for (auto &rec : job)
                result.records.push_back(std::move(rec));

        for (const auto &method : config.methods)
        {
            for (int s = 0; s < n_sweep; s++)
            {
                std::vector<double> values;
                values.reserve(config.trials);
                int failures = 0;
                double wall = 0.0;
                for (int t = 0; t < config.trials; t++)
                {
                    // records are laid out job-major, methods inner
                    const auto &recs = result.records;
                    const size_t base =
                        (static_cast<size_t>(s) * config.trials + t) * config.methods.size();
                    for (size_t i = 0; i < config.methods.size(); i++)
                    {
                        const TrialRecord &rec = recs[base + i];
                        if (rec.method != method)
                            continue;
                        if (rec.failed)
                            failures++;
                        else
                            values.push_back(rec.nmse_value);
                        wall += rec.wall_ms;
                    }
                }
                const Stats st = aggregate(values);
                result.rows.push_back({method, result.sweep_name, config.sweep_values[s], st.mean,
                                       st.median, st.stddev, static_cast<int>(values.size()),
                                       failures, wall});
            }
        }
        std::sort(result.rows.begin(), result.rows.end(),
                  [](const ResultRow &a, const ResultRow &b)
                  {
                      if (a.method != b.method)
                          return a.method < b.method;
                      return a.sweep_value < b.sweep_value;
                  });
        return result;
    }

    // --- emission -----------------------------------------------------------

    namespace
    {
        std::string shortest(double v)
        {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof(buf), v);
            return {buf, res.ptr};
        }
    } // namespace

    EmitFormat emit_format_from_name(const std::string &name)
    {
        if (name == "csv")
            return EmitFormat::csv;
        if (name == "json")
            return EmitFormat::json;
        if (name == "gnuplot-dat")
            return EmitFormat::gnuplot_dat;
        throw ParseError("unknown output format '" + name +
                         "' (valid: csv, json, gnuplot-dat)");
    }

    void emit(const SweepResult &result, EmitFormat format, std::ostream &out)
    {
        switch (format)
        {
        case EmitFormat::csv:
        {
            out << "method,sweep_name,sweep_value,mean_nmse,median_nmse,std_nmse,trials,"
                   "failures,wall_ms\n";
            for (const auto &r : result.rows)
                out << r.method << ',' << r.sweep_name << ',' << shortest(r.sweep_value) << ','
                    << shortest(r.mean_nmse) << ',' << shortest(r.median_nmse) << ','
                    << shortest(r.std_nmse) << ',' << r.trials << ',' << r.failures << ','
                    << shortest(r.wall_ms) << '\n';
            break;
        }
        case EmitFormat::json:
        {
            json rows = json::array();
            for (const auto &r : result.rows)
                rows.push_back({{"method", r.method},
                                {"sweep_name", r.sweep_name},
                                {"sweep_value", r.sweep_value},
                                {"mean_nmse", r.mean_nmse},
                                {"median_nmse", r.median_nmse},
                                {"std_nmse", r.std_nmse},
                                {"trials", r.trials},
                                {"failures", r.failures},
                                {"wall_ms", r.wall_ms}});
            out << json{{"sweep_name", result.sweep_name}, {"rows", rows}}.dump(2) << '\n';
            break;
        }
        case EmitFormat::gnuplot_dat:
        {
            bool first = true;
            std::string current;
            for (const auto &r : result.rows)
            {
                if (first || r.method != current)
                {
                    if (!first)
                        out << "\n\n";
                    out << "# method: " << r.method << '\n'
                        << "# sweep_value mean_nmse median_nmse std_nmse trials failures\n";
                    current = r.method;
                    first = false;
                }
                out << shortest(r.sweep_value) << ' ' << shortest(r.mean_nmse) << ' '
                    << shortest(r.median_nmse) << ' ' << shortest(r.std_nmse) << ' ' << r.trials
                    << ' ' << r.failures << '\n';
            }
            break;
        }
        }
    }

    void emit_file(const SweepResult &result, EmitFormat format, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw Error("cannot open output file: " + path);
        emit(result, format, out);
        out.flush();
        if (!out)
            throw Error("write failed: " + path);
    }
} // namespace ceaad
