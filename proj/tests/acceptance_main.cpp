////////////////////////////////////////////////////////////////////////////////
// Acceptance harness: runs the eleven-point gate from acceptance.hpp and
// prints one pass/fail line per check.  Exit status 0 iff every check passed.
//
// Usage: ffmoduli_acceptance [seed]
////////////////////////////////////////////////////////////////////////////////

#include <cstdio>
#include <cstdlib>

#include <ffmoduli/acceptance.hpp>

int main(int argc, char** argv) {
  using namespace ffmoduli;
  AcceptanceOptions opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);

  std::printf("acceptance gate: 11 checks, seed %llu\n",
              (unsigned long long)(opt.seed));
  const std::vector<CriterionResult> rows = run_acceptance(opt);
  for (const CriterionResult& r : rows)
    std::printf("[%2d/11] %s  %-28s (%6.2f s)  %s\n", r.index,
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.c_str());

  const bool all = acceptance_all_pass(rows);
  std::printf("acceptance: %s\n", all ? "PASS (11/11)" : "FAIL");
  return all ? 0 : 1;
}
