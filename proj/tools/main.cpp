#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sskg/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Primitive ideal space of self-similar k-graph algebras"};
  std::string command;
  std::string file;
  std::string bound;
  std::string dot_file;
  std::string angles;
  int depth = 6;
  app.add_option("command", command, "validate | tails | per | prim | hypotheses | closure | spec-order | repr-check")
      ->required()
      ->check(CLI::IsMember(sskg::command_names()));
  app.add_option("file", file, "graph document")->required();
  app.add_option("--bound", bound, "cycline enumeration bound d1,..,dk (default 4 in every color)");
  app.add_option("--depth", depth, "orbit truncation depth for repr-check")->check(CLI::NonNegativeNumber);
  app.add_option("--dot", dot_file, "write the specialization preorder as DOT");
  app.add_option("--angles", angles, "uniform character angles for repr-check (default 0,1/2,1/3)");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(file);
    if (!in) {
      std::cout << sskg::Json{{"error", {{"kind", "IOError"}, {"message", "cannot read " + file}}}}.dump(2) << "\n";
      return 2;
    }
    std::stringstream text;
    text << in.rdbuf();
    sskg::RunOptions opts;
    if (!bound.empty()) opts.bound = sskg::parse_bound(bound);
    if (!angles.empty()) opts.angles = sskg::parse_angles(angles);
    opts.depth = depth;
    std::string dot;
    const sskg::Json out =
        sskg::run_command(command, sskg::parse_document(text.str()), opts, dot_file.empty() ? nullptr : &dot);
    if (!dot_file.empty()) {
      if (command != "spec-order") {
        std::cerr << "--dot is only used by spec-order\n";
      } else {
        std::ofstream(dot_file) << dot;
      }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const sskg::Error& e) {
    std::cout << sskg::error_json(e).dump(2) << "\n";
    return 2;
  }
}
