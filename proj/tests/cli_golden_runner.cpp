// SPDX-License-Identifier: Apache-2.0
//
// Golden-file regression runner for the CLI. Each case reruns a committed
// command and byte-compares its stdout against the stored reference.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "[FAIL] cannot open " << path << "\n";
    std::exit(1);
  }
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void show_first_diff(const std::string& got, const std::string& want) {
  std::size_t n = std::min(got.size(), want.size());
  std::size_t at = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (got[i] != want[i]) {
      at = i;
      break;
    }
  }
  std::cerr << "  sizes: got " << got.size() << ", want " << want.size()
            << "; first difference at byte " << at << "\n";
  std::cerr << "  got:  " << got.substr(at >= 20 ? at - 20 : 0, 60) << "\n";
  std::cerr << "  want: " << want.substr(at >= 20 ? at - 20 : 0, 60) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: cli_golden_runner <cli-binary> <golden-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string dir = argv[2];

  struct Case {
    std::string args;
    std::string golden;
  };
  const std::vector<Case> cases = {
      {"energy --well gaussian --v0 1.9485572 --state 1 --method harmonic",
       "energy_harm_odd_critical.csv"},
      {"crossing --state 0", "crossing_state0.csv"},
      {"sweep --well gaussian --v0-min 0.5 --v0-max 8 --points 4 --states 0 "
       "--methods numerov",
       "sweep_numerov_state0.csv"},
  };

  int failures = 0;
  for (const auto& c : cases) {
    const std::string tmp = "cli_golden_out.tmp";
    const std::string cmd = "\"" + cli + "\" " + c.args + " > " + tmp;
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      std::cerr << "[FAIL] " << c.args << " exited with " << rc << "\n";
      ++failures;
      continue;
    }
    const std::string got = slurp(tmp);
    const std::string want = slurp(dir + "/" + c.golden);
    // Determinism: the same invocation must also be byte-stable across runs.
    const int rc2 = std::system(cmd.c_str());
    if (rc2 != 0) {
      std::cerr << "[FAIL] " << c.args << " rerun exited with " << rc2 << "\n";
      ++failures;
      continue;
    }
    const std::string again = slurp(tmp);
    std::remove(tmp.c_str());
    if (got != again) {
      std::cerr << "[FAIL] " << c.args << " is not deterministic\n";
      ++failures;
      continue;
    }
    if (got != want) {
      std::cerr << "[FAIL] " << c.args << " differs from " << c.golden << "\n";
      show_first_diff(got, want);
      ++failures;
      continue;
    }
    std::cout << "[PASS] " << c.args << "\n";
  }
  return failures == 0 ? 0 : 1;
}
