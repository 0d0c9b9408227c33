#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "v2im/machine.hpp"

namespace v2im::cli {

class usage_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum exit_code : int { ok = 0, internal = 1, usage = 2, unsolved = 3 };

struct io {
  std::ostream& out;
  std::ostream& err;
};

struct run_flags {
  solver_params params;
  std::size_t restarts = 1;
  unsigned jobs = 1;
  std::string trace;
  std::size_t trace_stride = 10;
  bool trace_spins = false;
};

struct maxcut_args {
  std::string graph;
  run_flags run;
};

struct color_args {
  std::string graph;
  std::size_t colors = 0;
  double lambda = 1.0;
  std::string coupling = "degree";
  run_flags run;
};

struct latin_args {
  std::size_t size = 0;
  bool grid_only = false;
  run_flags run;
};

struct sudoku_args {
  std::string puzzle;
  std::string corpus;
  std::size_t count = 50;
  bool grid_only = false;
  run_flags run;
};

struct experiment_args {
  std::string name;
  std::string k = "2..10";
  std::size_t trials = 1000;
  std::size_t count = 100;
  std::size_t nodes = 12;
  run_flags run;
};

int cmd_maxcut(const maxcut_args& args, io streams);
int cmd_color(const color_args& args, io streams);
int cmd_latin(const latin_args& args, io streams);
int cmd_sudoku(const sudoku_args& args, io streams);
int cmd_experiment(const experiment_args& args, io streams);

// "5", "2..10" or "3,5,7".
std::vector<std::size_t> parse_k_list(const std::string& text);

}  // namespace v2im::cli
