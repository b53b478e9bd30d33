#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dirpareto/dirpareto.h"

namespace {

struct Flags {
  std::string problem;
  std::string out = ".";
  std::string radius, levels, rays, seed, norm, tol;
  bool weak = false;
};

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

int emit(dp_session* session, dp_status st, dp_result* result, const std::string& stem,
         const std::string& out) {
  if (!result) {
    std::cerr << "error: " << dp_session_last_error(session) << "\n";
    return DP_EXIT_ERROR;
  }
  const int code = dp_result_exit_code(result);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  const std::filesystem::path dir(out);
  bool ok = write_file(dir / (stem + ".report.json"), dp_result_report(result));
  const std::string csv = dp_result_csv(result);
  const std::string svg = dp_result_svg(result);
  if (!csv.empty()) ok = write_file(dir / (stem + ".points.csv"), csv) && ok;
  if (!svg.empty()) ok = write_file(dir / (stem + ".svg"), svg) && ok;
  if (st != DP_OK) {
    std::cerr << "error: " << dp_session_last_error(session) << "\n";
  } else {
    std::cout << stem << ": " << dp_result_verdict(result) << "\n";
  }
  dp_result_destroy(result);
  if (!ok) {
    std::cerr << "error: cannot write reports to '" << out << "'\n";
    return DP_EXIT_ERROR;
  }
  return code;
}

bool configure(dp_session* s, const Flags& f) {
  const std::pair<const char*, const std::string*> opts[] = {
      {"radius", &f.radius}, {"levels", &f.levels}, {"rays", &f.rays},
      {"seed", &f.seed},     {"norm", &f.norm},     {"tol", &f.tol}};
  for (const auto& [key, value] : opts) {
    if (value->empty()) continue;
    if (dp_session_set_option(s, key, value->c_str()) != DP_OK) {
      std::cerr << "error: " << dp_session_last_error(s) << "\n";
      return false;
    }
  }
  if (f.weak) dp_session_set_option(s, "weak", "1");
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional Pareto minimality toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dp_version()));
  Flags flags;
  app.add_option("--out", flags.out, "Directory for report files")->capture_default_str();
  app.add_flag("--weak", flags.weak, "Use weak minimality");
  app.add_option("--radius", flags.radius, "Grid radius");
  app.add_option("--levels", flags.levels, "Grid levels");
  app.add_option("--rays", flags.rays, "Rays per level");
  app.add_option("--seed", flags.seed, "Lattice seed");
  app.add_option("--norm", flags.norm, "l2 or linf")->check(CLI::IsMember({"l2", "linf"}));
  app.add_option("--tol", flags.tol, "Certificate tolerance");

  std::vector<std::pair<std::string, CLI::App*>> commands;
  for (std::size_t i = 0; i < dp_command_count(); ++i) {
    const std::string name = dp_command_name(i);
    auto* sub = app.add_subcommand(name, "Run " + name + " on a problem file");
    sub->fallthrough();
    sub->add_option("--problem", flags.problem, "Problem file (JSON)")->required();
    commands.emplace_back(name, sub);
  }
  auto* examples = app.add_subcommand("examples", "Built-in example gallery");
  examples->fallthrough();
  examples->require_subcommand(1);
  auto* list = examples->add_subcommand("list", "List gallery examples");
  list->fallthrough();
  auto* run = examples->add_subcommand("run", "Run one gallery example");
  run->fallthrough();
  std::string example;
  run->add_option("name", example, "Example name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return DP_EXIT_ERROR;
  }

  dp_session* session = nullptr;
  if (dp_session_create(&session) != DP_OK) return DP_EXIT_ERROR;
  int code = DP_EXIT_ERROR;
  if (configure(session, flags)) {
    dp_result* result = nullptr;
    if (*list) {
      const dp_status st = dp_list_examples(session, &result);
      for (std::size_t i = 0; i < dp_example_count(); ++i) std::cout << dp_example_name(i) << "\n";
      if (result && !flags.out.empty() && flags.out != ".") {
        code = emit(session, st, result, "examples", flags.out);
      } else {
        if (result) dp_result_destroy(result);
        code = st == DP_OK ? DP_EXIT_OK : DP_EXIT_ERROR;
      }
    } else if (*run) {
      const dp_status st = dp_run_example(session, example.c_str(), &result);
      code = emit(session, st, result, example, flags.out);
    } else {
      for (const auto& [name, sub] : commands) {
        if (!*sub) continue;
        const dp_status st = dp_run_file(session, name.c_str(), flags.problem.c_str(), &result);
        code = emit(session, st, result, name, flags.out);
      }
    }
  }
  dp_session_destroy(session);
  return code;
}
