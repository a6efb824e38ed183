// Copyright 2026 The ftcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftcap/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ftcap/bounds.hpp"
#include "ftcap/capacity.hpp"
#include "ftcap/channel_io.hpp"
#include "ftcap/distill.hpp"
#include "ftcap/errors.hpp"
#include "ftcap/parallel.hpp"
#include "ftcap/steane.hpp"

#ifndef FTCAP_VERSION
#define FTCAP_VERSION "0.0.0"
#endif

namespace ftcap {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

namespace {

struct Rendered {
    std::string text;
    int exit_code = kExitOk;
};

struct Common {
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out;
    std::string manifest;
};

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t env_seed() {
    const char* s = std::getenv("FTCAP_SEED");
    if (s == nullptr || *s == '\0') return 1;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0') throw ValidationError("FTCAP_SEED is not an unsigned integer");
    return v;
}

std::string num(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

json capacity_json(const CapacityResult& r) {
    return {{"value", r.value},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"gradient_norm", r.gradient_norm},
            {"start_seed", r.seed},
            {"optimal_input", matrix_json(r.optimal_input.matrix())}};
}

json evaluation_json(const Evaluation& e) {
    return {{"value", e.value}, {"saturated", e.saturated}, {"terms", e.terms}};
}

int qubits_of(int dim, const char* what) {
    int j = 0;
    while ((1 << j) < dim) ++j;
    if ((1 << j) != dim) throw ValidationError(std::string("channel ") + what + " dimension is not a power of 2");
    return j;
}

std::string csv_echo(const json& params) {
    std::string line = "#";
    for (const auto& [k, v] : params.items()) line += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    return line + "\n";
}

// Parameters shared by bounds and threshold.
struct BoundOptions {
    std::string channel;
    double c = 10.0;
    double p0 = 1e-2;
    int l = 1;
    int j1 = 0;
    int j2 = 0;
    std::string variant = "theorem";
};

void add_bound_options(CLI::App* sub, BoundOptions& o) {
    sub->add_option("channel", o.channel, "channel JSON file or builtin name")->required();
    sub->add_option("--c", o.c, "interface constant")->capture_default_str();
    sub->add_option("--p0", o.p0, "code threshold")->capture_default_str();
    sub->add_option("--l", o.l, "concatenation level")->capture_default_str();
    sub->add_option("--j1", o.j1, "channel input qubits (default: from the channel)");
    sub->add_option("--j2", o.j2, "channel output qubits (default: from the channel)");
    sub->add_option("--variant", o.variant, "f1 variant")->check(CLI::IsMember({"theorem", "proof"}))
        ->capture_default_str();
}

struct ChannelCapacities {
    BoundParams params;
    double cea = 0.0;
    double classical = 0.0;
    bool converged = true;
    json echo;
};

ChannelCapacities prepare_bounds(const BoundOptions& o, std::uint64_t seed) {
    const QuantumChannel ch = resolve_channel(o.channel);
    ChannelCapacities r;
    r.params.c = o.c;
    r.params.p0 = o.p0;
    r.params.l = o.l;
    const int j1 = qubits_of(ch.dim_in(), "input"), j2 = qubits_of(ch.dim_out(), "output");
    if ((o.j1 != 0 && o.j1 != j1) || (o.j2 != 0 && o.j2 != j2))
        throw ValidationError("--j1/--j2 do not match the channel dimensions");
    r.params.j1 = j1;
    r.params.j2 = j2;
    AscentOptions opts;
    opts.seed = seed;
    const auto cea = ea_capacity(ch, opts);
    const auto chi = classical_capacity_lb(ch, 0, 1e-9, seed);
    r.cea = cea.value;
    r.classical = chi.value;
    r.converged = cea.converged && chi.converged;
    r.echo = {{"channel", o.channel}, {"c", o.c},       {"p0", o.p0},          {"l", o.l},
              {"j1", j1},            {"j2", j2},        {"variant", o.variant}, {"seed", seed}};
    return r;
}

json bound_row(double p, const ChannelCapacities& cc, F1Variant variant) {
    BoundParams params = cc.params;
    params.p = p;
    const double f1v = f1(p, params, variant);
    const Evaluation f2v = f2(p, params);
    const double penalty = ft_penalty(p, params, cc.cea, cc.classical, variant);
    const double lb = ft_ea_capacity_lb(params, cc.cea, cc.classical, variant);
    return {{"p", p},
            {"f1", f1v},
            {"f2", evaluation_json(f2v)},
            {"penalty", penalty},
            {"lower_bound", lb},
            {"clamped", penalty >= cc.cea},
            {"alpha", alpha(p, params.c, cc.classical)},
            {"r_ea_required", r_ea_required(p, params.c)}};
}

std::vector<std::string> strip_output_flags(const std::vector<std::string>& args) {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--out" || a == "--manifest") {
            ++i;
            continue;
        }
        if (a.rfind("--out=", 0) == 0 || a.rfind("--manifest=", 0) == 0) continue;
        kept.push_back(a);
    }
    return kept;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                          bool side_effects) {
    CommandResult result;
    CLI::App app{"Fault-tolerant entanglement-assisted capacity workbench", "ftcap"};
    app.require_subcommand(1);
    app.set_version_flag("--version", FTCAP_VERSION);

    Common common;
    std::function<Rendered()> action;
    std::string command;
    bool seeded = false;

    auto add_common = [&](CLI::App* sub, bool with_seed) {
        if (with_seed) sub->add_option("--seed", common.seed, "seed (default: $FTCAP_SEED or 1)");
        sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", common.out, "output file (default: stdout)");
        sub->add_option("--manifest", common.manifest, "manifest path (default: <out>.manifest.json)");
    };

    // capacity ------------------------------------------------------------
    std::string cap_channel;
    double cap_tol = 1e-9;
    int cap_iter = 5000;
    int cap_restarts = 5;
    auto* cap = app.add_subcommand("capacity", "entanglement-assisted capacity of a channel");
    cap->add_option("channel", cap_channel, "channel JSON file or builtin name")->required();
    cap->add_option("--tol", cap_tol)->capture_default_str();
    cap->add_option("--max-iter", cap_iter)->capture_default_str();
    cap->add_option("--restarts", cap_restarts)->capture_default_str();
    add_common(cap, true);
    cap->callback([&] {
        command = "capacity";
        seeded = true;
        action = [&] {
            const QuantumChannel ch = resolve_channel(cap_channel);
            AscentOptions opts;
            opts.tol = cap_tol;
            opts.max_iter = cap_iter;
            opts.restarts = cap_restarts;
            opts.seed = common.seed;
            const auto r = ea_capacity(ch, opts);
            json j = {{"command", "capacity"},
                      {"params",
                       {{"channel", cap_channel},
                        {"tol", cap_tol},
                        {"max_iter", cap_iter},
                        {"restarts", cap_restarts},
                        {"seed", common.seed}}},
                      {"result", capacity_json(r)}};
            return Rendered{j.dump(2) + "\n", r.converged ? kExitOk : kExitNoConvergence};
        };
    });

    // bounds --------------------------------------------------------------
    BoundOptions bopt;
    double b_p = 0.0;
    std::vector<double> b_plist;
    auto* bnd = app.add_subcommand("bounds", "fault-tolerant capacity lower bound and its penalty terms");
    add_bound_options(bnd, bopt);
    auto* p_opt = bnd->add_option("--p", b_p, "gate error probability");
    bnd->add_option("--p-list", b_plist, "comma-separated sweep (CSV output)")->delimiter(',')->excludes(p_opt);
    add_common(bnd, true);
    bnd->callback([&] {
        command = "bounds";
        seeded = true;
        action = [&] {
            const auto variant = parse_f1_variant(bopt.variant);
            const auto cc = prepare_bounds(bopt, common.seed);
            const int code = cc.converged ? kExitOk : kExitNoConvergence;
            if (b_plist.empty()) {
                json j = {{"command", "bounds"},
                          {"params", cc.echo},
                          {"cea", cc.cea},
                          {"classical_capacity", cc.classical},
                          {"domain_cap", domain_cap(cc.params)},
                          {"result", bound_row(b_p, cc, variant)}};
                return Rendered{j.dump(2) + "\n", code};
            }
            std::string csv = csv_echo(cc.echo);
            csv += "# cea=" + num(cc.cea) + " classical_capacity=" + num(cc.classical) + "\n";
            csv += "p,f1,f2,f2_saturated,penalty,lower_bound,clamped\n";
            for (double p : b_plist) {
                const json r = bound_row(p, cc, variant);
                csv += num(p) + "," + num(r["f1"]) + "," + num(r["f2"]["value"]) + "," +
                       (r["f2"]["saturated"].get<bool>() ? "1" : "0") + "," + num(r["penalty"]) + "," +
                       num(r["lower_bound"]) + "," + (r["clamped"].get<bool>() ? "1" : "0") + "\n";
            }
            return Rendered{csv, code};
        };
    });

    // threshold -----------------------------------------------------------
    BoundOptions topt;
    double t_eps = 0.1;
    auto* thr = app.add_subcommand("threshold", "largest p with penalty at most epsilon");
    add_bound_options(thr, topt);
    thr->add_option("--epsilon", t_eps, "penalty budget")->required();
    add_common(thr, true);
    thr->callback([&] {
        command = "threshold";
        seeded = true;
        action = [&] {
            const auto variant = parse_f1_variant(topt.variant);
            const auto cc = prepare_bounds(topt, common.seed);
            const auto r = threshold_find(t_eps, cc.params, cc.cea, cc.classical, variant);
            json params = cc.echo;
            params["epsilon"] = t_eps;
            json j = {{"command", "threshold"},
                      {"params", params},
                      {"cea", cc.cea},
                      {"classical_capacity", cc.classical},
                      {"result",
                       {{"p_th", r.p_th},
                        {"cap", r.cap},
                        {"capped", r.capped},
                        {"vacuous", r.vacuous},
                        {"monotone", r.monotone},
                        {"evaluations", r.evaluations}}}};
            return Rendered{j.dump(2) + "\n", cc.converged ? kExitOk : kExitNoConvergence};
        };
    });

    // steane --------------------------------------------------------------
    std::string s_exp = "logical";
    std::vector<double> s_plist{3e-4, 1e-3, 3e-3};
    std::int64_t s_trials = 1000000;
    double s_p0 = 1e-2;
    auto* ste = app.add_subcommand("steane", "Steane-code Monte Carlo experiments");
    ste->add_option("--experiment", s_exp, "logical | encode | decode | enumerate | counts")
        ->check(CLI::IsMember({"logical", "encode", "decode", "enumerate", "counts"}))
        ->capture_default_str();
    ste->add_option("--p-list", s_plist, "comma-separated gate error probabilities")->delimiter(',');
    ste->add_option("--trials", s_trials)->capture_default_str();
    ste->add_option("--p0", s_p0, "code threshold (interface precondition p <= p0/2, c = p0 max|Loc|)")
        ->capture_default_str();
    add_common(ste, true);
    ste->callback([&] {
        command = "steane";
        seeded = true;
        action = [&] {
            json echo = {{"experiment", s_exp}, {"trials", s_trials}, {"seed", common.seed}, {"p0", s_p0}};
            std::string csv = csv_echo(echo);
            if (s_exp == "enumerate") {
                const auto r = single_fault_enumeration();
                csv += "sites,cases,exceptions,max_weight\n";
                csv += std::to_string(r.sites) + "," + std::to_string(r.cases) + "," + std::to_string(r.exceptions) +
                       "," + std::to_string(r.max_weight) + "\n";
                return Rendered{csv};
            }
            const auto counts = interface_location_counts();
            if (s_exp == "counts") {
                csv += "ec,encode,decode,p0,c\n";
                csv += std::to_string(SteaneEc().location_count()) + "," + std::to_string(counts.encode) + "," +
                       std::to_string(counts.decode) + "," + num(s_p0) + "," + num(counts.c(s_p0)) + "\n";
                return Rendered{csv};
            }
            const bool logical = s_exp == "logical";
            csv += logical ? "experiment,p,trials,failures,rate,stderr\n"
                           : "experiment,p,trials,failures,rate,stderr,c,bound_2cp\n";
            std::vector<double> ps, rates;
            for (double p : s_plist) {
                const McEstimate e = logical ? mc_logical_error_rate(1, p, s_trials, common.seed, common.threads)
                                             : mc_interface_failure(parse_direction(s_exp), p, s_trials, common.seed,
                                                                    s_p0, common.threads);
                csv += s_exp + "," + num(p) + "," + std::to_string(e.trials) + "," + std::to_string(e.failures) + "," +
                       num(e.rate) + "," + num(e.stderr_);
                if (!logical) csv += "," + num(counts.c(s_p0)) + "," + num(2.0 * counts.c(s_p0) * p);
                csv += "\n";
                if (e.rate > 0 && p > 0) {
                    ps.push_back(p);
                    rates.push_back(e.rate);
                }
            }
            if (ps.size() >= 2) csv += "# loglog_slope=" + num(loglog_slope(ps, rates)) + "\n";
            return Rendered{csv};
        };
    });

    // distill -------------------------------------------------------------
    std::vector<double> d_q, d_delta;
    double d_p = -1.0, d_c = 10.0;
    std::vector<std::int64_t> d_k{10000};
    std::string d_policy;
    std::int64_t d_trials = 10000;
    auto* dis = app.add_subcommand("distill", "hashing distillation: typicality Monte Carlo against eps_dist");
    auto* q_opt = dis->add_option("--q", d_q, "comma-separated noise parameters")->delimiter(',');
    auto* dp_opt = dis->add_option("--p", d_p, "gate error; q = 4cp")->excludes(q_opt);
    dis->add_option("--c", d_c, "interface constant for --p")->capture_default_str();
    dis->add_option("--k", d_k, "comma-separated pair counts")->delimiter(',');
    dis->add_option("--delta", d_delta, "comma-separated typicality widths")->delimiter(',');
    dis->add_option("--delta-policy", d_policy, "fixed (use --delta) or argmin (grid minimiser of eps_dist)")
        ->check(CLI::IsMember({"fixed", "argmin"}));
    dis->add_option("--trials", d_trials)->capture_default_str();
    add_common(dis, true);
    dis->callback([&] {
        command = "distill";
        seeded = true;
        action = [&] {
            std::vector<double> qs = d_q;
            if (dp_opt->count() > 0) qs = {effective_pair_state(d_p, d_c).probs[1] * 3.0};
            if (qs.empty()) throw ValidationError("distill: give --q or --p");
            std::string policy = d_policy.empty() ? (d_delta.empty() ? "argmin" : "fixed") : d_policy;
            if (policy == "fixed" && d_delta.empty()) throw ValidationError("distill: --delta required");
            json echo = {{"policy", policy}, {"trials", d_trials}, {"seed", common.seed}};
            if (dp_opt->count() > 0) echo["p"] = d_p, echo["c"] = d_c;
            std::string csv = csv_echo(echo);
            csv += "q,k,delta,m,trials,p_atypical,stderr,eps_dist_bound,collision_bound,yield\n";
            std::uint64_t row = 0;
            for (double q : qs)
                for (std::int64_t k : d_k) {
                    const std::vector<double> deltas =
                        policy == "argmin" ? std::vector<double>{delta_argmin(q, k)} : d_delta;
                    for (double d : deltas) {
                        const auto run = DistillRun::make(k, q, d, splitmix64(common.seed + row++));
                        const auto r = hashing_sim(run, d_trials, common.threads);
                        const std::string bound = q > 0.0 ? num(eps_dist(q, k, d)) : "0";
                        csv += num(q) + "," + std::to_string(k) + "," + num(d) + "," + std::to_string(run.m) + "," +
                               std::to_string(r.trials) + "," + num(r.p_atypical) + "," + num(r.stderr_) + "," +
                               bound + "," + num(r.p_collision_bound) + "," + num(yield_fraction(q).value) + "\n";
                    }
                }
            return Rendered{csv};
        };
    });

    // postselect ----------------------------------------------------------
    int ps_n = 1, ps_draws = 50;
    double ps_p = 0.05, ps_dt = 0.3;
    auto* pst = app.add_subcommand("postselect", "Choi negative-part check of the postselection inequality");
    pst->add_option("--n", ps_n, "channel uses (1 or 2)")->check(CLI::IsMember({1, 2}))->capture_default_str();
    pst->add_option("--p", ps_p)->capture_default_str();
    pst->add_option("--delta-tilde", ps_dt)->capture_default_str();
    pst->add_option("--draws", ps_draws)->capture_default_str();
    add_common(pst, true);
    pst->callback([&] {
        command = "postselect";
        seeded = true;
        action = [&] {
            const auto reports = postselect_random_draws(ps_n, ps_p, ps_dt, ps_draws, common.seed);
            json draws = json::array();
            bool all = true;
            for (const auto& r : reports) {
                draws.push_back({{"negative_part", r.negative_part},
                                 {"bound", r.bound},
                                 {"scale", r.scale},
                                 {"holds", r.holds}});
                all = all && r.holds;
            }
            json j = {{"command", "postselect"},
                      {"params", {{"n", ps_n}, {"p", ps_p}, {"delta_tilde", ps_dt}, {"draws", ps_draws},
                                  {"seed", common.seed}}},
                      {"all_hold", all},
                      {"draws", draws}};
            return Rendered{j.dump(2) + "\n"};
        };
    });

    // replay --------------------------------------------------------------
    std::string manifest_path;
    auto* rep = app.add_subcommand("replay", "re-run a manifest and compare output digests");
    rep->add_option("manifest", manifest_path)->required()->check(CLI::ExistingFile);
    rep->callback([&] {
        command = "replay";
        action = [&] {
            std::ifstream in(manifest_path);
            json m;
            try {
                m = json::parse(in);
            } catch (const json::exception& e) {
                throw ValidationError(std::string("manifest: ") + e.what());
            }
            if (!m.contains("args") || !m.contains("output_sha256"))
                throw ValidationError("manifest: missing args or output_sha256");
            const auto recorded = m["args"].get<std::vector<std::string>>();
            if (!recorded.empty() && recorded.front() == "replay") throw ValidationError("manifest: nested replay");
            std::ostringstream sink;
            const CommandResult again = run_command(recorded, sink, err, false);
            const std::string actual = sha256_hex(again.output);
            const bool match = actual == m["output_sha256"].get<std::string>();
            json j = {{"command", "replay"},
                      {"replayed", m.value("command", "")},
                      {"match", match},
                      {"expected_sha256", m["output_sha256"]},
                      {"actual_sha256", actual},
                      {"exit_code", again.exit_code}};
            return Rendered{j.dump(2) + "\n", match ? kExitOk : kExitFailure};
        };
    });

    const std::string started = utc_now();
    try {
        std::vector<std::string> argv_store{"ftcap"};
        argv_store.insert(argv_store.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : argv_store) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::Success& e) {
            // --help / --version
            result.exit_code = app.exit(e, out, err);
            return result;
        } catch (const CLI::ParseError& e) {
            app.exit(e, out, err);
            result.exit_code = kExitValidation;
            return result;
        }

        std::vector<std::string> recorded = strip_output_flags(args);
        if (seeded) {
            CLI::App* sub = app.get_subcommands().front();
            if (sub->count("--seed") == 0) {
                common.seed = env_seed();
                recorded.push_back("--seed");
                recorded.push_back(std::to_string(common.seed));
            }
        }

        const Rendered r = action();
        result.exit_code = r.exit_code;
        result.output = r.text;
        if (!side_effects) return result;

        if (common.out.empty()) {
            out << r.text;
        } else {
            std::ofstream f(common.out, std::ios::binary);
            if (!f) throw ValidationError("cannot write " + common.out);
            f << r.text;
        }
        if (command == "replay") return result;

        result.manifest = {{"tool", "ftcap"},
                           {"version", FTCAP_VERSION},
                           {"command", command},
                           {"args", recorded},
                           {"seed", common.seed},
                           {"threads", common.threads},
                           {"started", started},
                           {"finished", utc_now()},
                           {"output", common.out.empty() ? "stdout" : common.out},
                           {"output_sha256", sha256_hex(r.text)},
                           {"exit_code", r.exit_code}};
        std::string path = common.manifest;
        if (path.empty()) path = common.out.empty() ? "ftcap-" + command + ".manifest.json" : common.out + ".manifest.json";
        std::ofstream mf(path);
        if (!mf) throw ValidationError("cannot write manifest " + path);
        mf << result.manifest.dump(2) << "\n";
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = kExitValidation;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = kExitValidation;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        result.exit_code = kExitDomain;
    } catch (const PreconditionError& e) {
        err << "domain error: " << e.what() << "\n";
        result.exit_code = kExitDomain;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        result.exit_code = kExitFailure;
    }
    return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_command(args, out, err, true).exit_code;
}

}  // namespace ftcap
