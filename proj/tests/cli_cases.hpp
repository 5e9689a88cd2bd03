#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "csalg/cli.hpp"
#include "support.hpp"

namespace testsupport {

struct CliResult {
  int code = 0;
  std::string out, err;
};

// arguments of the form "@name" are replaced by data_path(name)
inline CliResult run_cli(std::vector<std::string> args) {
  for (auto& a : args)
    if (!a.empty() && a[0] == '@') a = data_path(a.substr(1));
  args.insert(args.begin(), "csalg");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = csalg::cli_main(int(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct GoldenCase {
  std::string file;
  std::vector<std::string> args;
};

inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {"bracket_n1.json", {"--json", "bracket", "@n2.csa", "G+", "G-", "--n", "1"}},
      {"bracket_lambda.json", {"--json", "bracket", "@n2.csa", "G+", "G-"}},
      {"bracket_n4.json", {"--json", "bracket", "@n4.csa", "G1", "Gbar2"}},
      {"alg_witt.json", {"--json", "alg", "@n2.csa", "--auto", "id", "--bracket", "L[2] L[-1]"}},
      {"alg_omega.json", {"--json", "alg", "@n2.csa", "--auto", "omega", "--bracket", "(G+ + G-)[1] (G+ - G-)[1/2]"}},
      {"pgl2_2.json", {"--json", "pgl2-classes", "2"}},
      {"pgl2_6.json", {"--json", "--conductor", "120", "pgl2-classes", "6"}},
      {"classify_omega.json", {"--json", "classify-n4", "--matrix", "0,1;-1,0"}},
      {"check_n2.json", {"--json", "check", "@n2.csa"}},
      {"check_n4.json", {"--json", "check", "@n4.csa"}},
      {"hom_omega.json", {"--json", "hom", "@n2.csa", "@omega.csm"}},
      {"hom_theta.json", {"--json", "hom", "@n2.csa", "@theta_half.csm"}},
      {"loop_omega.json", {"--json", "loop", "@n2.csa", "--auto", "omega", "--window", "1"}},
      {"loop_n4_order4.json", {"--json", "loop", "@n4.csa", "--auto", "n4:zeta^6,0;0,-zeta^6", "--window", "1"}},
      {"centroid_omega.json", {"--json", "centroid", "@n2.csa", "--auto", "omega", "--window", "3", "--interior", "1"}},
  };
  return cases;
}

}  // namespace testsupport
