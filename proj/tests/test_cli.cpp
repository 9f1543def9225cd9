/*
 * Copyright 2026 The loqc-opt developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

#ifndef LOQC_CLI_PATH
#error "LOQC_CLI_PATH must point at the built binary"
#endif

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run(const std::string& args) {
    const std::string cmd = std::string(LOQC_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult res;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) res.output += buf.data();
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("loqc-cli-" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("gates-list names the built-in targets") {
    const CommandResult r = run("gates-list");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("cs") != std::string::npos);
    CHECK(r.output.find("toffoli-sign") != std::string::npos);
    CHECK(r.output.find("ns") != std::string::npos);
}

TEST_CASE("optimize writes a sorted results table and a verifiable matrix") {
    TempDir tmp;
    const CommandResult r = run("optimize --gate ns --restarts 6 --seed 5 --threads 2 --out-dir " +
                                tmp.path.string());
    INFO(r.output);
    CHECK(r.exit_code == 0);

    std::ifstream csv(tmp.file("results.csv"));
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "restart_id,fidelity,success,on_manifold,iterations");
    int rows = 0;
    double prev = -1.0;
    for (std::string line; std::getline(csv, line);) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const auto c3 = line.find(',', c2 + 1);
        const double s = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
        CHECK(s >= prev);
        prev = s;
        ++rows;
    }
    CHECK(rows == 6);

    // round trip: the recorded matrix verifies at its recorded objectives
    const CommandResult v = run("verify " + tmp.file("best_matrix.json"));
    INFO(v.output);
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("PASS") != std::string::npos);
    CHECK(v.output.find("F=1.000000000") != std::string::npos);
}

TEST_CASE("optimize rejects invalid documents with exit code 2") {
    const CommandResult r = run("optimize --gate cs --restarts 0");
    CHECK(r.exit_code == 2);
    const CommandResult bad_gate = run("optimize --gate unknown-gate --restarts 1");
    CHECK(bad_gate.exit_code == 2);
}

TEST_CASE("verify rejects unreadable files with exit code 2") {
    TempDir tmp;
    std::ofstream(tmp.file("corrupt.json")) << "not json at all";
    const CommandResult r = run("verify " + tmp.file("corrupt.json"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("verify fails the identity device against CS") {
    TempDir tmp;
    // bare nested-array matrix file, context given by flags
    std::ofstream out(tmp.file("id.json"));
    out << "[";
    for (int i = 0; i < 6; ++i) {
        out << (i ? "," : "") << "[";
        for (int j = 0; j < 6; ++j)
            out << (j ? "," : "") << "[" << (i == j ? 1 : 0) << ",0]";
        out << "]";
    }
    out << "]";
    out.close();

    const CommandResult r = run("verify " + tmp.file("id.json") + " --gate cs");
    INFO(r.output);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("FAIL") != std::string::npos);
    CHECK(r.output.find("F=0.250000000") != std::string::npos);
}

TEST_CASE("baseline-toffoli prints the composite reference and ratio") {
    const CommandResult r = run("baseline-toffoli --success 0.00340");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0.002743") != std::string::npos);
    CHECK(r.output.find("1.24") != std::string::npos);
}
