// Runs the reproduction suite through the CLI twice and prints one line per
// acceptance criterion.
#include <sys/wait.h>

#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <string>

#include <fmt/format.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run reproduce() {
  Run r;
  const std::string cmd = std::string(PMOD_CLI_PATH) + " reproduce --seed 7 --no-meta 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[8192];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

int main() {
  const Run first = reproduce();
  const Run second = reproduce();
  bool all = true;

  const auto j = nlohmann::json::parse(first.out, nullptr, false);
  if (first.status != 0 || j.is_discarded() || !j.contains("criteria")) {
    for (int id = 1; id <= 9; ++id) fmt::print("FAIL criterion {}: reproduce run failed (exit {})\n", id, first.status);
    all = false;
  } else {
    for (int id = 1; id <= 9; ++id) {
      const nlohmann::json* c = nullptr;
      for (const auto& e : j["criteria"])
        if (e["id"] == id) c = &e;
      if (!c) {
        fmt::print("FAIL criterion {}: missing from the report\n", id);
        all = false;
        continue;
      }
      const bool ok = (*c)["passed"].get<bool>();
      all = all && ok;
      fmt::print("{} criterion {}: {} ({})\n", ok ? "PASS" : "FAIL", id,
                 (*c)["title"].get<std::string>(), (*c)["detail"].get<std::string>());
    }
  }

  const bool same = first.status == 0 && second.status == 0 && !first.out.empty() && first.out == second.out;
  all = all && same;
  fmt::print("{} criterion 10: byte-identical reports from two runs with seed 7 ({} bytes)\n",
             same ? "PASS" : "FAIL", first.out.size());
  std::cout.flush();
  return all ? 0 : 1;
}
