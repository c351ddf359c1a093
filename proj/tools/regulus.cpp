// Copyright 2026 The Regulus Authors
//
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

// regulus: batch front end for the four algorithm families.
//
//   regulus <zero|minnorm|leftmost|fejer> --problem FILE [--depth K]
//           [--out csv|json] [--verify] [-o FILE] [--certificate FILE] [--timing]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "regulus/runner.hpp"

namespace {

struct Args {
  std::string problem;
  std::optional<regulus::Nat> depth;
  std::string out;
  bool verify = false;
  std::string output;
  std::string certificate;
  bool timing = false;
};

void add_options(CLI::App* sub, Args& args, const std::string& alias) {
  auto* problem = sub->add_option("--problem" + (alias.empty() ? "" : "," + alias), args.problem,
                                  "problem definition file");
  problem->required()->check(CLI::ExistingFile);
  sub->add_option("--depth", args.depth, "largest k to compute (overrides [problem] depth)");
  sub->add_option("--out", args.out, "table format (overrides [problem] out)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--verify", args.verify, "re-check the run against independent oracles; exit 6 on divergence");
  sub->add_option("-o,--output", args.output, "table file (default: standard output)");
  sub->add_option("--certificate", args.certificate,
                  "certificate file (default: OUTPUT.cert.json, or PROBLEM-STEM.cert.json)");
  sub->add_flag("--timing", args.timing, "add a wall_ms column");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw regulus::Error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified solutions from moduli of regularity"};
  app.require_subcommand(1);
  Args args;
  const std::map<std::string, std::pair<regulus::ProblemKind, std::string>> commands = {
      {"zero", {regulus::ProblemKind::kZero, ""}},
      {"minnorm", {regulus::ProblemKind::kMinNorm, ""}},
      {"leftmost", {regulus::ProblemKind::kLeftmost, "--tree"}},
      {"fejer", {regulus::ProblemKind::kFejer, "--fixture"}},
  };
  std::map<std::string, CLI::App*> subs;
  subs["zero"] = app.add_subcommand("zero", "approximate a zero from a modulus of regularity");
  subs["minnorm"] = app.add_subcommand("minnorm", "approximate the zero of minimal norm");
  subs["leftmost"] = app.add_subcommand("leftmost", "leftmost infinite path of a binary tree");
  subs["fejer"] = app.add_subcommand("fejer", "rates for the monotone-sequence Fejer fixture");
  for (auto& [name, sub] : subs) add_options(sub, args, commands.at(name).second);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : regulus::kExitParse;
  }

  regulus::ProblemKind kind = regulus::ProblemKind::kZero;
  for (auto& [name, sub] : subs) {
    if (sub->parsed()) kind = commands.at(name).first;
  }

  try {
    const regulus::ProblemSpec spec = regulus::ProblemSpec::load(args.problem, kind);
    regulus::RunOptions options;
    options.depth = args.depth;
    options.verify = args.verify;
    options.timing = args.timing;
    if (!args.out.empty()) {
      options.format = args.out == "json" ? regulus::OutputFormat::kJson : regulus::OutputFormat::kCsv;
    }
    const regulus::RunResult result = regulus::run(spec, options);

    if (args.output.empty()) {
      std::cout << result.table;
    } else {
      write_file(args.output, result.table);
    }
    std::filesystem::path certificate = args.certificate;
    if (certificate.empty()) {
      certificate = args.output.empty() ? std::filesystem::path(args.problem).stem().string() + ".cert.json"
                                        : args.output + ".cert.json";
    }
    write_file(certificate, result.certificate);

    for (const std::string& line : result.divergences) std::cerr << "divergence: " << line << "\n";
    return result.exit_code();
  } catch (const std::exception& e) {
    std::cerr << regulus::error_report(e) << "\n";
    return regulus::exit_code_for(e);
  }
}
