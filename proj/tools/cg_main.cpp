// Command line front end for the cantor-groups calculus.  Talks to the
// library exclusively through the C API in cg.h.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cg.h"

namespace {

struct Options {
  std::string oracle = "trivial";
  std::string action = "translation";
  bool json = false;
  std::uint64_t seed = 0;
  std::string script;
};

int run_one(cg_session* session, const std::string& command,
            const std::vector<std::string>& args, unsigned max, unsigned n) {
  char* out = nullptr;
  cg_status st = CG_ERR_BAD_ARGUMENT;
  auto arg = [&](std::size_t i) -> const char* {
    return i < args.size() ? args[i].c_str() : nullptr;
  };
  if (command == "eval")
    st = cg_eval(session, arg(0), &out);
  else if (command == "act")
    st = cg_act(session, arg(0), arg(1), &out);
  else if (command == "order")
    st = cg_order(session, arg(0), max, &out);
  else if (command == "center")
    st = cg_center(session, arg(0), &out);
  else if (command == "witness")
    st = cg_witness(session, arg(0), arg(1), &out);
  else if (command == "selftest")
    st = cg_selftest(session, args.empty() ? "all" : arg(0), n, &out);
  else {
    std::cerr << "error: unknown command: " << command << "\n";
    return 2;
  }

  if (out) {
    std::cout << out << "\n";
    cg_string_free(out);
  } else if (st != CG_OK) {
    const char* msg = cg_last_error(session);
    std::cerr << "error: " << (msg && *msg ? msg : "invalid arguments")
              << "\n";
  }
  return st == CG_OK ? 0 : 1;
}

// Script lines: <command> <rest>; for two-argument commands the arguments
// are separated by " ; ".  Blank lines and lines starting with # are
// skipped.
int run_script(cg_session* session, const std::string& path, unsigned max,
               unsigned n) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open script: " << path << "\n";
    return 2;
  }
  int rc = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line.substr(start));
    std::string command, rest;
    ls >> command;
    std::getline(ls, rest);
    std::size_t lead = rest.find_first_not_of(" \t");
    rest = lead == std::string::npos ? std::string{} : rest.substr(lead);
    std::vector<std::string> args;
    std::size_t sep = rest.find(" ; ");
    if (sep == std::string::npos) {
      if (!rest.empty()) args.push_back(rest);
    } else {
      args.push_back(rest.substr(0, sep));
      args.push_back(rest.substr(sep + 3));
    }
    if (run_one(session, command, args, max, n) != 0) rc = 1;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus of labelled and twisted prefix-substitution groups"};
  app.set_version_flag("--version", cg_version());

  Options opt;
  std::string command;
  std::vector<std::string> args;
  unsigned max = 64;
  unsigned n = 100;

  app.add_option("command", command,
                 "eval | act | order | center | witness | selftest")
      ->required(false);
  app.add_option("args", args, "command arguments");
  app.add_option("--oracle", opt.oracle,
                 "label group: trivial, z<N>, s3, f<N>, z^<N>, cayley:<file>");
  app.add_option("--action", opt.action,
                 "cube action: translation, trivial:<N>, regular:<oracle>");
  app.add_flag("--json", opt.json, "emit JSON reports");
  app.add_option("--seed", opt.seed, "seed for randomized commands");
  app.add_option("--script", opt.script, "run commands from a file");
  app.add_option("--max", max, "search bound for order");
  app.add_option("--n", n, "iterations per selftest property");

  CLI11_PARSE(app, argc, argv);

  if (command.empty() && opt.script.empty()) {
    std::cerr << app.help();
    return 2;
  }

  cg_session* session = nullptr;
  cg_status st = cg_session_new(opt.oracle.c_str(), opt.action.c_str(),
                                opt.json ? 1 : 0, opt.seed, &session);
  if (st != CG_OK) {
    std::cerr << "error: cannot create session (oracle '" << opt.oracle
              << "', action '" << opt.action << "')\n";
    return 2;
  }

  int rc = opt.script.empty() ? run_one(session, command, args, max, n)
                              : run_script(session, opt.script, max, n);
  cg_session_free(session);
  return rc;
}
