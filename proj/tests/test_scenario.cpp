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

#include "support.hpp"

#include "wavecopy/dataset.hpp"
#include "wavecopy/error.hpp"
#include "wavecopy/io.hpp"
#include "wavecopy/png.hpp"
#include "wavecopy/scenario.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

using namespace wcopy;
using namespace wcopy::testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Runs the CLI with `args`, stdout and stderr redirected to `log`; returns the exit code.
int cli(const std::string& args, const fs::path& log = "/dev/null")
{
    const std::string cmd = std::string("\"") + WAVECOPY_CLI + "\" " + args + " >\"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

/// A 1000-record manifest split 900/100 with noise photos for the test side only, plus a
/// fake directory holding exact copies.
fs::path synthetic_eval_dataset(const fs::path& root)
{
    DatasetManifest m;
    m.count = 1000;
    m.rotations.resize(1000);
    m = split_dataset(m, 0.9, 8);
    fs::create_directories(root / "data" / "photos");
    fs::create_directories(root / "fake");
    write_manifest(m, (root / "data").string());
    for (size_t i : split_indices(m, "test")) {
        const auto img = noisy_pair(i, 1, 64, 64).first;
        write_png((root / "data" / "photos" / photo_name(i, 'L')).string(), img);
        write_png((root / "fake" / photo_name(i, 'L')).string(), img);
    }
    return root;
}

} // namespace

TEST_CASE("run_training_data: small run writes a split dataset")
{
    const auto dir = scratch_dir("train_smoke");
    ScenarioConfig sc;
    sc.dataset_size = 3;
    sc.seed = 12;
    sc.split_fraction = 0.67;
    sc.out_dir = dir.string();
    const auto summary = run_training_data(make_training_scene(), default_propagation(), sc);
    CHECK(summary.manifest.count == 3);
    CHECK(fs::file_size(dir / "readings.bin") == 3 * 1600);
    CHECK(split_indices(summary.manifest, "train").size() == 2);
    CHECK(split_indices(summary.manifest, "test").size() == 1);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(fs::exists(dir / "photos" / photo_name(i, 'L')));
        CHECK(fs::exists(dir / "photos" / photo_name(i, 'R')));
    }
}

TEST_CASE("run_copy: canonical two-room copy meets the frozen bounds")
{
    const auto r = run_copy(make_two_room_scene(), default_propagation(), 1);
    CHECK(r.route.nodes == std::vector<std::string>{"object", "T1", "T2", "rx2"});
    REQUIRE(r.callbacks.size() == 2);
    MESSAGE("fidelity continuous " << r.fidelity_continuous << ", 2-bit " << r.fidelity_quantized);
    CHECK(r.fidelity_continuous >= 0.9);
    CHECK(r.fidelity_quantized >= 0.7);

    const Json j = copy_report_to_json(r);
    for (const char* key : {"route", "hops", "fidelity_quantized", "fidelity_continuous"})
        CHECK(j.contains(key));
    CHECK(j.at("hops") == 3);
}

TEST_CASE("run_copy: continuous phases do at least as well as 2-bit")
{
    const auto r = run_copy(make_two_room_scene(), default_propagation(), 1);
    CHECK(r.fidelity_continuous >= r.fidelity_quantized);
}

TEST_CASE("run_copy: a scene without tiles has no route")
{
    RoomScene s = make_two_room_scene();
    s.tiles.clear();
    try {
        run_copy(s, default_propagation(), 1);
        FAIL("expected NoRoute");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoRoute);
    }
}

TEST_CASE("run_evaluate: identical photos over a 100-record test split")
{
    const auto root = synthetic_eval_dataset(scratch_dir("eval_identity"));
    const auto rep = run_evaluate((root / "data").string(), (root / "fake").string(), 3);
    REQUIRE(rep.scores.size() == 100);
    for (const auto& s : rep.scores) {
        CHECK(s.ssim == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::isinf(s.psnr));
    }
    CHECK(rep.psnr.excluded_inf == 100);
    CHECK(rep.baseline_ssim.median < rep.ssim.median);

    const auto rows = lines_of(evaluation_csv(rep));
    REQUIRE(rows.size() == 1 + 100 + 2);
    CHECK(rows[0] == "row,index,psnr_db,ssim,baseline_psnr_db,baseline_ssim");
    CHECK(rows[1].rfind("record,", 0) == 0);
    CHECK(rows[1].find(",inf,") != std::string::npos);
    CHECK(rows[101].rfind("median,", 0) == 0);
    CHECK(rows[102].rfind("iqr,", 0) == 0);
}

TEST_CASE("run_evaluate: missing or mismatched fakes")
{
    const auto root = synthetic_eval_dataset(scratch_dir("eval_missing"));
    const auto m = read_manifest((root / "data").string());
    const size_t victim = split_indices(m, "test").front();
    fs::remove(root / "fake" / photo_name(victim, 'L'));
    try {
        run_evaluate((root / "data").string(), (root / "fake").string(), 3);
        FAIL("expected IndexMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::IndexMismatch);
    }
    write_png((root / "fake" / photo_name(victim, 'L')).string(), ImageU8(32, 32));
    CHECK_THROWS_AS(run_evaluate((root / "data").string(), (root / "fake").string(), 3), Error);
}

TEST_CASE("cli: exit codes")
{
    const auto dir = scratch_dir("cli_codes");
    const auto log = dir / "log.txt";
    CHECK(cli("budget", log) == 0);
    CHECK(slurp(log).find("39") != std::string::npos);
    CHECK(cli("no-such-command") == 2);

    CHECK(cli("scene canonical --which two-room --out " + (dir / "two.json").string()) == 0);
    CHECK(cli("scene validate " + (dir / "two.json").string()) == 0);
    CHECK(cli("scene validate " + (dir / "absent.json").string()) == 4);

    Json broken = Json::parse(slurp(dir / "two.json"));
    broken["tiles"][1]["id"] = broken["tiles"][0]["id"];
    std::ofstream(dir / "broken.json") << broken.dump();
    CHECK(cli("scene validate " + (dir / "broken.json").string()) == 3);

    RoomScene bare = make_two_room_scene();
    bare.tiles.clear();
    save_scene(bare, (dir / "bare.json").string());
    CHECK(cli("copy --scene " + (dir / "bare.json").string() + " --seed 1") == 5);
    CHECK(cli("copy --scene " + (dir / "two.json").string()) == 3); // seed is mandatory
    std::ofstream(dir / "noseed.json") << R"({"max_hops": 4})";
    CHECK(cli("copy --config " + (dir / "noseed.json").string()) == 3);

    CHECK(cli("route --src object --dst ghost") == 3);
    CHECK(cli("route-disjoint --pair object:rx2 --pair rx1:rx2") == 6);
    CHECK(cli("route --src object --dst rx2", log) == 0);
    CHECK(Json::parse(slurp(log)).at("nodes") == Json::array({"object", "T1", "T2", "rx2"}));
}

TEST_CASE("cli: dataset generation is byte-reproducible")
{
    const auto dir = scratch_dir("cli_dataset");
    for (const char* sub : {"a", "b"})
        REQUIRE(cli("--threads 2 dataset generate --n 3 --seed 21 --split 0.67 --out " + (dir / sub).string()) == 0);
    for (const char* f : {"manifest.json", "readings.bin", "photos/0_L.png", "photos/2_R.png"})
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    CHECK(cli("dataset generate --n 3 --out " + (dir / "c").string()) == 3); // seed is mandatory
}

TEST_CASE("cli: metrics compare and evaluate")
{
    const auto root = synthetic_eval_dataset(scratch_dir("cli_eval"));
    const auto csv = root / "eval.csv";
    REQUIRE(cli("evaluate --data " + (root / "data").string() + " --fake " + (root / "fake").string() +
                " --seed 3 --out " + csv.string() + " --stats " + (root / "stats.json").string()) == 0);
    CHECK(lines_of(slurp(csv)).size() == 103);
    const Json stats = Json::parse(slurp(root / "stats.json"));
    CHECK(!stats.empty());

    const auto cmp = root / "cmp.csv";
    REQUIRE(cli("metrics compare --real-dir " + (root / "data" / "photos").string() + " --fake-dir " +
                (root / "fake").string() + " --out " + cmp.string()) == 0);
    const auto rows = lines_of(slurp(cmp));
    REQUIRE(rows.size() == 1 + 100 + 1);
    CHECK(rows[0] == "row,name,psnr_db,ssim");
}
