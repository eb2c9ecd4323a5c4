// SPDX-License-Identifier: Apache-2.0
//
// wavecopy: wavefront copying through programmable wireless environments
// Copyright (C) 2026 The wavecopy authors
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

// Command-line front end. Exit codes:
//   0 success, 1 unexpected failure, 2 usage error, 3 validation,
//   4 I/O or on-disk format, 5 no route, 6 infeasible disjoint routing.

#include "wavecopy/controller.hpp"
#include "wavecopy/error.hpp"
#include "wavecopy/io.hpp"
#include "wavecopy/metrics.hpp"
#include "wavecopy/net.hpp"
#include "wavecopy/png.hpp"
#include "wavecopy/scenario.hpp"
#include "wavecopy/sdm.hpp"
#include "wavecopy/transport.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace wcopy;

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kValidation = 3, kIo = 4, kNoRoute = 5, kInfeasible = 6 };

int exit_code_for(Errc c)
{
    switch (c) {
    case Errc::NoRoute:
        return kNoRoute;
    case Errc::Infeasible:
        return kInfeasible;
    case Errc::Io:
    case Errc::CorruptManifest:
    case Errc::SizeMismatch:
    case Errc::ConnectionLost:
    case Errc::BadMagic:
    case Errc::BadChecksum:
    case Errc::Truncated:
        return kIo;
    default:
        return kValidation;
    }
}

void emit(const Json& j, const std::string& out)
{
    const std::string text = j.dump(2) + "\n";
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_text_file(out, text);
}

RoomScene scene_or_canonical(const std::string& path)
{
    return path.empty() ? make_two_room_scene() : load_scene(path);
}

// "host:port" or just "port"
std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& s)
{
    const auto colon = s.rfind(':');
    const std::string host = colon == std::string::npos ? "127.0.0.1" : s.substr(0, colon);
    const std::string port = colon == std::string::npos ? s : s.substr(colon + 1);
    try {
        const unsigned long p = std::stoul(port);
        if (p > 65535)
            throw std::out_of_range("port");
        return {host, static_cast<std::uint16_t>(p)};
    } catch (const std::exception&) {
        fail(Errc::Validation, "bad endpoint '" + s + "'");
    }
}

Vec3 parse_vec(const std::string& s)
{
    Vec3 v;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',')
        fail(Errc::Validation, "expected x,y,z but got '" + s + "'");
    return v;
}

std::vector<CopyCommand> parse_pairs(const std::vector<std::string>& pairs)
{
    std::vector<CopyCommand> out;
    for (const auto& p : pairs) {
        const auto colon = p.find(':');
        if (colon == std::string::npos)
            fail(Errc::Validation, "expected src:dst but got '" + p + "'");
        out.push_back(CopyCommand{p.substr(0, colon), p.substr(colon + 1), "g" + std::to_string(out.size())});
    }
    return out;
}

std::vector<TileCallback> load_callbacks(const std::string& path)
{
    return tile_callbacks_from_json(Json::parse(read_text_file(path)));
}

// Config file keys mirror ScenarioConfig; explicit flags win.
ScenarioConfig load_config(const std::string& path)
{
    ScenarioConfig c;
    if (path.empty())
        return c;
    const Json j = Json::parse(read_text_file(path));
    c.scene_path = j.value("scene", c.scene_path);
    c.seed = j.value("seed", c.seed);
    c.dataset_size = j.value("n", c.dataset_size);
    c.split_fraction = j.value("split_fraction", c.split_fraction);
    c.max_hops = j.value("max_hops", c.max_hops);
    c.quantize = j.value("quantize", c.quantize);
    c.out_dir = j.value("out", c.out_dir);
    return c;
}

// Seeds are never defaulted: one must come from the flag or the config file.
bool config_has_seed(const std::string& path)
{
    return !path.empty() && Json::parse(read_text_file(path)).contains("seed");
}

PropagationConfig propagation(int threads)
{
    PropagationConfig cfg = default_propagation();
    cfg.threads = threads;
    return cfg;
}

std::vector<WireFrame> frames_to_send(const std::string& dataset_dir, size_t count, std::uint64_t seed)
{
    std::vector<WireFrame> frames;
    WavefrontSampler sampler;
    if (!dataset_dir.empty()) {
        const Dataset ds = read_dataset(dataset_dir, false);
        for (size_t i = 0; i < ds.records.size() && (count == 0 || i < count); ++i)
            frames.push_back(sampler.sample(ds.records[i].reading));
        return frames;
    }
    SplitMix64 rng(seed);
    for (size_t i = 0; i < count; ++i) {
        RfReading r{10, 10, std::vector<Complex>(100)};
        for (auto& s : r.data)
            s = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
        frames.push_back(sampler.sample(r));
    }
    return frames;
}

double median_of(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    return summarize(v).median;
}

Json session_json(const SessionStats& s)
{
    return Json{{"frames_sent", s.frames_sent},
                {"frames_received", s.reader.frames},
                {"corrupted", s.reader.corrupted},
                {"lost", s.reader.lost},
                {"out_of_order", s.reader.out_of_order},
                {"skipped_bytes", s.reader.skipped_bytes},
                {"partial_discarded", s.partial_discarded},
                {"encode_us_median", median_of(s.encode_us)},
                {"decode_us_median", median_of(s.decode_us)}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"wavecopy: RF wavefront copying through programmable wireless environments"};
    app.require_subcommand(1);
    std::function<int()> action;
    int threads = 0;
    app.add_option("--threads", threads, "worker threads for field solves (0 = hardware)");

    // scene
    auto* scene_cmd = app.add_subcommand("scene", "scene files");
    scene_cmd->require_subcommand(1);
    std::string scene_path, out;
    auto* sv = scene_cmd->add_subcommand("validate", "check a scene file");
    sv->add_option("scene", scene_path)->required();
    sv->callback([&] {
        action = [&] {
            const RoomScene s = load_scene(scene_path);
            std::cout << "ok: " << s.walls.size() << " walls, " << s.tiles.size() << " tiles, " << s.objects.size()
                      << " objects, " << s.arrays.size() << " arrays\n";
            return kOk;
        };
    });
    std::string which = "two-room";
    auto* se = scene_cmd->add_subcommand("canonical", "write a built-in scene");
    se->add_option("--which", which)->check(CLI::IsMember({"two-room", "training"}));
    se->add_option("--out", out);
    se->callback([&] {
        action = [&] {
            const RoomScene s = which == "training" ? make_training_scene() : make_two_room_scene();
            emit(scene_to_json(s), out);
            return kOk;
        };
    });

    // dataset
    auto* ds_cmd = app.add_subcommand("dataset", "training dataset");
    ds_cmd->require_subcommand(1);
    std::string config_path, data_dir;
    std::optional<std::uint64_t> seed;
    std::optional<size_t> n;
    std::optional<double> frac;
    auto* dg = ds_cmd->add_subcommand("generate", "simulate readings and photos");
    dg->add_option("--config", config_path, "JSON config; flags override");
    dg->add_option("--scene", scene_path, "scene file (default: built-in training room)");
    dg->add_option("--n", n);
    dg->add_option("--seed", seed);
    dg->add_option("--split", frac, "train fraction");
    dg->add_option("--out", data_dir);
    dg->callback([&] {
        action = [&] {
            ScenarioConfig sc = load_config(config_path);
            if (!scene_path.empty())
                sc.scene_path = scene_path;
            if (n)
                sc.dataset_size = *n;
            if (seed)
                sc.seed = *seed;
            else if (!config_has_seed(config_path))
                fail(Errc::Validation, "--seed is required (flag or config key)");
            if (frac)
                sc.split_fraction = *frac;
            if (!data_dir.empty())
                sc.out_dir = data_dir;
            const RoomScene s = sc.scene_path.empty() ? make_training_scene() : load_scene(sc.scene_path);
            const auto sum = run_training_data(s, propagation(threads), sc);
            std::cout << "records " << sum.manifest.count << ", train " << sum.train << ", test " << sum.test
                      << ", scene " << sum.manifest.scene_hash << " -> " << sc.out_dir << "\n";
            return kOk;
        };
    });
    auto* dsplit = ds_cmd->add_subcommand("split", "re-split an existing dataset");
    dsplit->add_option("--dir", data_dir)->required();
    dsplit->add_option("--frac", frac)->required();
    dsplit->add_option("--seed", seed)->required();
    dsplit->callback([&] {
        action = [&] {
            const DatasetManifest m = split_dataset(read_manifest(data_dir), *frac, *seed);
            write_manifest(m, data_dir);
            std::cout << "train " << split_indices(m, "train").size() << ", test " << split_indices(m, "test").size()
                      << "\n";
            return kOk;
        };
    });

    // copy
    int max_hops = kDefaultMaxHops;
    auto* cp = app.add_subcommand("copy", "copy the object's wavefront between rooms");
    cp->add_option("--config", config_path);
    cp->add_option("--scene", scene_path, "scene with a copy section (default: built-in two-room)");
    cp->add_option("--seed", seed, "object pose seed");
    cp->add_option("--max-hops", max_hops);
    cp->add_option("--out", out);
    cp->callback([&] {
        action = [&] {
            ScenarioConfig sc = load_config(config_path);
            if (!scene_path.empty())
                sc.scene_path = scene_path;
            if (seed)
                sc.seed = *seed;
            else if (!config_has_seed(config_path))
                fail(Errc::Validation, "--seed is required (flag or config key)");
            if (cp->count("--max-hops"))
                sc.max_hops = max_hops;
            const CopyReport r = run_copy(scene_or_canonical(sc.scene_path), propagation(threads), sc.seed, sc.max_hops);
            Json j = copy_report_to_json(r);
            j["seed"] = sc.seed;
            j["quantize"] = sc.quantize;
            j["fidelity"] = sc.quantize ? r.fidelity_quantized : r.fidelity_continuous;
            emit(j, out);
            return kOk;
        };
    });

    // transport
    std::string endpoint;
    size_t count = 0;
    double rate = 0.0;
    auto* srv = app.add_subcommand("serve", "receive wavefront frames from one sender");
    srv->add_option("--listen", endpoint, "[host:]port")->required();
    srv->add_option("--out", out, "write session stats JSON here");
    srv->add_option("--save", data_dir, "append received readings to this file as raw frames");
    srv->callback([&] {
        action = [&] {
            const auto [host, port] = parse_endpoint(endpoint);
            TcpListener listener(port, host);
            std::cerr << "listening on " << host << ":" << listener.port() << "\n";
            TcpStream s = listener.accept();
            std::ofstream save;
            if (!data_dir.empty()) {
                save.open(data_dir, std::ios::binary);
                if (!save)
                    fail(Errc::Io, "cannot write " + data_dir);
            }
            const SessionStats st = receive_frames(s, [&](const WireFrame& f) {
                if (save) {
                    const auto bytes = encode_frame(f);
                    save.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
                }
            });
            emit(session_json(st), out);
            return kOk;
        };
    });
    auto* snd = app.add_subcommand("send", "stream wavefront frames to a server");
    snd->add_option("--connect", endpoint, "[host:]port")->required();
    snd->add_option("--rate", rate, "frames per second (0 = as fast as possible)");
    snd->add_option("--dataset", data_dir, "send readings from this dataset");
    snd->add_option("--count", count, "frames to send (random frames need --seed)");
    snd->add_option("--seed", seed);
    snd->add_option("--out", out);
    snd->callback([&] {
        action = [&] {
            if (data_dir.empty() && !seed)
                fail(Errc::Validation, "--seed is required for random frames");
            const auto frames = frames_to_send(data_dir, data_dir.empty() && count == 0 ? 100 : count, seed.value_or(0));
            const auto [host, port] = parse_endpoint(endpoint);
            TcpStream s = TcpStream::connect(host, port);
            emit(session_json(send_frames(s, frames, true, rate)), out);
            return kOk;
        };
    });

    // metrics and evaluation
    std::string real_dir, fake_dir;
    auto* mc = app.add_subcommand("metrics", "image metrics");
    mc->require_subcommand(1);
    auto* cmp = mc->add_subcommand("compare", "PSNR/SSIM between two image directories");
    cmp->add_option("--real-dir", real_dir)->required();
    cmp->add_option("--fake-dir", fake_dir)->required();
    cmp->add_option("--out", out);
    cmp->callback([&] {
        action = [&] {
            const auto scores = compare_dirs(real_dir, fake_dir);
            std::vector<double> p, s;
            std::ostringstream csv;
            csv << "row,name,psnr_db,ssim\n";
            csv.precision(10);
            for (const auto& sc : scores) {
                csv << "pair," << sc.name << ',';
                if (std::isinf(sc.psnr))
                    csv << "inf";
                else
                    csv << sc.psnr;
                csv << ',' << sc.ssim << '\n';
                p.push_back(sc.psnr);
                s.push_back(sc.ssim);
            }
            const bool all_inf = std::all_of(p.begin(), p.end(), [](double v) { return std::isinf(v); });
            csv << "median,,";
            if (all_inf)
                csv << "inf";
            else
                csv << summarize(p).median;
            csv << ',' << summarize(s).median << '\n';
            if (out.empty())
                std::cout << csv.str();
            else
                write_text_file(out, csv.str());
            return kOk;
        };
    });
    std::string stats_out;
    auto* ev = app.add_subcommand("evaluate", "score generated photos against the test split");
    ev->add_option("--data", data_dir)->required();
    ev->add_option("--fake", fake_dir)->required();
    ev->add_option("--seed", seed, "seed for the shuffled-pairing baseline")->required();
    ev->add_option("--out", out, "CSV report");
    ev->add_option("--stats", stats_out, "boxplot statistics JSON");
    ev->callback([&] {
        action = [&] {
            const EvaluationReport r = run_evaluate(data_dir, fake_dir, *seed);
            const std::string csv = evaluation_csv(r);
            if (out.empty())
                std::cout << csv;
            else
                write_text_file(out, csv);
            const Json stats{{"records", r.indices.size()},
                             {"psnr", summary_to_json(r.psnr)},
                             {"ssim", summary_to_json(r.ssim)},
                             {"baseline_psnr", summary_to_json(r.baseline_psnr)},
                             {"baseline_ssim", summary_to_json(r.baseline_ssim)}};
            if (!stats_out.empty())
                emit(stats, stats_out);
            return kOk;
        };
    });
    bool with_network = false;
    double threshold = kMotionSicknessThresholdMs;
    auto* bud = app.add_subcommand("budget", "motion-to-photon latency budget");
    bud->add_flag("--network", with_network, "include a network transfer stage");
    bud->add_option("--threshold", threshold, "ms");
    bud->callback([&] {
        action = [&] {
            const LatencyBudget b = LatencyBudget::motion_to_photon(with_network);
            const LatencyVerdict v = latency_budget(b, threshold);
            Json comps = Json::array();
            for (const auto& c : b.components)
                comps.push_back(Json{{"name", c.name}, {"min_ms", c.min_ms}, {"max_ms", c.max_ms}});
            emit(Json{{"components", comps},
                      {"min_total_ms", v.min_total_ms},
                      {"max_total_ms", v.max_total_ms},
                      {"threshold_ms", threshold},
                      {"best_case_ok", v.best_case_ok},
                      {"guaranteed_ok", v.guaranteed_ok}},
                 "");
            return kOk;
        };
    });

    // controller commands, mirrored onto the socket protocol
    std::string src, dst, callbacks_path, moved, position, array_id;
    std::vector<std::string> pairs;
    bool continuous = false;
    auto run_requests = [&](const std::vector<Json>& requests) {
        Controller ctl(scene_or_canonical(scene_path), propagation(threads), max_hops);
        Json last;
        for (const auto& req : requests) {
            last = ctl.handle(req);
            if (!last.value("ok", false)) {
                const std::string code = last["error"].value("code", std::string{"Validation"});
                std::cerr << "error: " << code << ": " << last["error"].value("message", std::string{}) << "\n";
                for (int c = 0; c <= static_cast<int>(Errc::Validation); ++c)
                    if (errc_name(static_cast<Errc>(c)) == code)
                        return exit_code_for(static_cast<Errc>(c));
                return static_cast<int>(kValidation);
            }
        }
        emit(last["result"], out);
        return static_cast<int>(kOk);
    };
    auto req = [](const std::string& cmd, Json args) {
        return Json{{"v", kProtocolVersion}, {"cmd", cmd}, {"args", std::move(args)}};
    };
    auto commands_json = [&] {
        Json cmds = Json::array();
        for (const auto& c : parse_pairs(pairs))
            cmds.push_back(Json{{"src", c.src}, {"dst", c.dst}, {"group", c.group}});
        return cmds;
    };
    auto add_scene_opts = [&](CLI::App* c) {
        c->add_option("--scene", scene_path, "scene file (default: built-in two-room)");
        c->add_option("--max-hops", max_hops);
        c->add_option("--out", out);
    };

    auto* bg = app.add_subcommand("build-graph", "print the tile graph");
    add_scene_opts(bg);
    bg->callback([&] { action = [&] { return run_requests({req("build-graph", Json::object())}); }; });

    auto* rt = app.add_subcommand("route", "shortest air-route between two nodes");
    add_scene_opts(rt);
    rt->add_option("--src", src)->required();
    rt->add_option("--dst", dst)->required();
    rt->callback([&] { action = [&] { return run_requests({req("route", Json{{"src", src}, {"dst", dst}})}); }; });

    auto* rd = app.add_subcommand("route-disjoint", "tile-disjoint routes for several commands");
    add_scene_opts(rd);
    rd->add_option("--pair", pairs, "src:dst, repeatable")->required();
    rd->callback([&] {
        action = [&] { return run_requests({req("route-disjoint", Json{{"commands", commands_json()}})}); };
    });

    auto* dp = app.add_subcommand("deploy", "compile routes or callbacks into tile states");
    add_scene_opts(dp);
    dp->add_option("--callbacks", callbacks_path, "JSON list of {tile, callback}");
    dp->add_option("--pair", pairs, "route and compile src:dst instead of --callbacks");
    dp->add_flag("--continuous", continuous, "write continuous phases instead of codebook states");
    dp->callback([&] {
        action = [&] {
            std::vector<TileCallback> cbs;
            if (!callbacks_path.empty()) {
                cbs = load_callbacks(callbacks_path);
            } else {
                if (pairs.empty())
                    fail(Errc::Validation, "deploy needs --callbacks or --pair");
                const RoomScene s = scene_or_canonical(scene_path);
                const PweGraph g = build_graph(s);
                for (const auto& r : route_disjoint(g, parse_pairs(pairs), max_hops)) {
                    auto part = compile_route(r, g);
                    cbs.insert(cbs.end(), part.begin(), part.end());
                }
            }
            const RoomScene s = scene_or_canonical(scene_path);
            emit(Json{{"callbacks", tile_callbacks_to_json(cbs)},
                      {"scene", scene_to_json(deploy(s, cbs, default_propagation().k, continuous))}},
                 out);
            return static_cast<int>(kOk);
        };
    });

    auto* pr = app.add_subcommand("predict", "predicted channel of a deployment");
    add_scene_opts(pr);
    pr->add_option("--callbacks", callbacks_path)->required();
    pr->add_option("--array", array_id, "probe at this array (default: copy destination)");
    pr->callback([&] {
        action = [&] {
            Json args{{"callbacks", Json::parse(read_text_file(callbacks_path))}};
            if (!array_id.empty())
                args["array"] = array_id;
            return run_requests({req("predict", args)});
        };
    });

    auto* rr = app.add_subcommand("reroute", "repair routes after a node moves");
    add_scene_opts(rr);
    rr->add_option("--pair", pairs, "src:dst, repeatable")->required();
    rr->add_option("--moved", moved)->required();
    rr->add_option("--position", position, "x,y,z")->required();
    rr->callback([&] {
        action = [&] {
            return run_requests({req("route-disjoint", Json{{"commands", commands_json()}}),
                                 req("reroute", Json{{"moved", moved}, {"position", vec_to_json(parse_vec(position))}})});
        };
    });

    auto* ctl_cmd = app.add_subcommand("controller", "controller service");
    ctl_cmd->require_subcommand(1);
    std::optional<size_t> max_clients;
    auto* cs = ctl_cmd->add_subcommand("serve", "line-delimited JSON protocol over TCP");
    cs->add_option("--scene", scene_path);
    cs->add_option("--listen", endpoint, "[host:]port")->required();
    cs->add_option("--max-hops", max_hops);
    cs->add_option("--max-clients", max_clients, "exit after serving this many clients");
    cs->callback([&] {
        action = [&] {
            const auto [host, port] = parse_endpoint(endpoint);
            Controller ctl(scene_or_canonical(scene_path), propagation(threads), max_hops);
            TcpListener listener(port, host);
            std::cerr << "controller listening on " << host << ":" << listener.port() << "\n";
            ctl.serve(listener, max_clients);
            return static_cast<int>(kOk);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    try {
        return action ? action() : kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const Json::exception& e) {
        std::cerr << "error: Validation: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
