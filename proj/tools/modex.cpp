// Copyright 2026 The Modex Authors
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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "modex/Builtins.h"
#include "modex/Engine.h"
#include "modex/TextIO.h"
#include "modex/Verifier.h"

namespace {

using namespace modex;

constexpr int kExitModel = 0;
constexpr int kExitUnsat = 20;
constexpr int kExitResourceOut = 30;
constexpr int kExitUsage = 10;

struct LoadedSystem {
    SystemFile file;
    Structure instance;
    ModuleRegistry registry;
    Task task;
};

std::string dirOf(const std::string& path) {
    size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string() : path.substr(0, slash + 1);
}

LoadedSystem loadSystem(const std::string& systemPath, const std::string& instancePath) {
    LoadedSystem out;
    out.file = parseSystemFile(readFile(systemPath));
    out.instance = loadInstance(instancePath);
    std::string base = dirOf(systemPath);
    for (const auto& decl : out.file.modules) {
        std::string path = decl.paramPath;
        if (!path.empty() && path[0] != '/') path = base + path;
        out.registry.add(decl.id,
                         buildModule(decl.id, decl.kind, path, out.instance.domain()));
    }
    FlatSystem flat = flatten(*out.file.expr, out.registry.vocabularies());
    out.task = bindInstance(std::move(flat), out.instance);
    return out;
}

void printModel(const Structure& model) {
    std::cout << "MODEL\n";
    writeFacts(std::cout, model);
}

int runSolve(LoadedSystem& sys, const std::string& tracePath, const EngineConfig& cfg) {
    EngineTrace trace;
    std::ofstream traceFile;
    if (!tracePath.empty()) {
        traceFile.open(tracePath);
        if (!traceFile) throw ModexError("cannot open trace file '" + tracePath + "'");
        trace.attachSink(&traceFile);
    }

    SolveOutcome outcome = solve(sys.task, sys.registry, cfg, &trace);
    switch (outcome.kind) {
        case SolveOutcome::Kind::Model:
            printModel(outcome.model);
            return kExitModel;
        case SolveOutcome::Kind::Unsatisfiable:
            std::cout << "UNSAT\n";
            return kExitUnsat;
        case SolveOutcome::Kind::ResourceOut:
            std::cout << "RESOURCE-OUT " << outcome.resourceKind << "\n";
            return kExitResourceOut;
    }
    return 1;
}

int runVerify(LoadedSystem& sys, uint64_t cap) {
    Enumeration enumeration = enumerateSolutions(sys.task, sys.registry, cap);
    std::cout << "SOLUTIONS " << enumeration.solutions.size() << "\n";
    for (size_t i = 0; i < enumeration.solutions.size(); ++i) {
        std::cout << "MODEL " << (i + 1) << "\n";
        writeFacts(std::cout, enumeration.solutions[i]);
    }
    return 0;
}

int runCertify(LoadedSystem& sys, const std::string& moduleId, int probes, uint64_t seed) {
    const ModuleBinding* binding = nullptr;
    for (const auto& m : sys.task.flat.modules)
        if (m.id == moduleId) binding = &m;
    if (!binding) throw ModexError("module '" + moduleId + "' is not part of the system");

    // Pin the module-local symbols that the instance interprets.
    Vocabulary localSigma;
    for (const auto& s : binding->vocabulary.symbols())
        if (sys.task.sigma.has(binding->toCanonical.at(s.name))) localSigma.add(s);
    Structure localInstance(sys.instance.domain(), localSigma);
    for (const auto& s : localSigma.symbols())
        localInstance.setTuples(s.name,
                                sys.task.instance.tuples(binding->toCanonical.at(s.name)));

    CertifyReport report =
        certifyOracle(sys.registry.oracle(moduleId), localInstance, probes, seed);
    std::cout << "CERTIFY " << moduleId << " " << report.summary() << "\n";
    for (const auto& v : report.violations)
        std::cout << "violation " << toString(v.kind) << " " << v.detail << "\n";
    return report.ok() ? 0 : 20;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modex: model expansion for modular systems"};
    app.require_subcommand(1);

    std::string systemPath, instancePath, tracePath, reportMode = "after-decision";
    std::string heuristic = "lowest", moduleId;
    EngineConfig cfg;
    uint64_t cap = 1ull << 22;
    int probes = 10000;
    uint64_t certifySeed = 1;
    int lubyUnit = 0;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("system", systemPath, "system description file")->required();
        cmd->add_option("--instance", instancePath, "instance structure file")->required();
    };

    CLI::App* solveCmd = app.add_subcommand("solve", "solve a model expansion task");
    addCommon(solveCmd);
    solveCmd->add_option("--trace", tracePath, "write the engine trace to a file");
    solveCmd->add_option("--seed", cfg.solver.seed, "random seed (fixes all nondeterminism)");
    solveCmd->add_flag("--propagate", cfg.propagate, "enable feedback-chain propagation");
    solveCmd->add_option("--report-mode", reportMode, "after-decision | total")
        ->check(CLI::IsMember({"after-decision", "total"}));
    solveCmd->add_option("--dump-cnf", cfg.dumpCnfPath, "dump universe and clause set");
    solveCmd->add_flag("--collect-all-reasons", cfg.collectAllReasons,
                       "add one reason per rejecting module each round");
    solveCmd->add_option("--max-iters", cfg.maxIterations, "engine iteration budget");
    solveCmd->add_option("--time-cap-ms", cfg.wallClockMs, "wall clock budget (0 = off)");
    solveCmd->add_option("--advice-budget", cfg.adviceBudget, "advices per oracle per state");
    solveCmd->add_option("--heuristic", heuristic, "lowest | activity | random")
        ->check(CLI::IsMember({"lowest", "activity", "random"}));
    solveCmd->add_option("--luby", lubyUnit, "Luby unit for heuristic-reset restarts (0 = off)");

    CLI::App* verifyCmd = app.add_subcommand("verify", "enumerate all solutions by brute force");
    addCommon(verifyCmd);
    verifyCmd->add_option("--cap", cap, "maximum number of total expansions");

    CLI::App* certifyCmd = app.add_subcommand("certify", "check a module oracle's contract");
    addCommon(certifyCmd);
    certifyCmd->add_option("--module", moduleId, "module id to certify")->required();
    certifyCmd->add_option("--probes", probes, "number of sampled partial structures");
    certifyCmd->add_option("--seed", certifySeed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    // Input problems (unreadable files, bad syntax, ill-formed systems) are
    // usage errors; failures during the run itself are internal errors.
    LoadedSystem sys;
    try {
        sys = loadSystem(systemPath, instancePath);
    } catch (const ModexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (solveCmd->parsed()) {
            cfg.solver.reportMode = reportMode == "total"
                                        ? SolverConfig::ReportMode::OnlyTotal
                                        : SolverConfig::ReportMode::AfterEachDecision;
            cfg.solver.heuristic = heuristic == "activity" ? SolverConfig::Heuristic::Activity
                                   : heuristic == "random" ? SolverConfig::Heuristic::Random
                                                           : SolverConfig::Heuristic::LowestIndex;
            cfg.solver.lubyUnit = lubyUnit;
            return runSolve(sys, tracePath, cfg);
        }
        if (verifyCmd->parsed()) return runVerify(sys, cap);
        if (certifyCmd->parsed()) return runCertify(sys, moduleId, probes, certifySeed);
    } catch (const EnumerationTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceOut;
    } catch (const ModexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
