#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "v2im/coloring.hpp"
#include "v2im/graph.hpp"

namespace v2im {

// Cells (r, c) -> r*N + c, unit edges along rows and columns.
weighted_graph rook_graph(std::size_t n);

// Rook graph on m^2 x m^2 plus the m x m box edges.
weighted_graph sudoku_graph(std::size_t m);

struct sudoku_puzzle {
  std::size_t m = 3;
  // Row-major, 0 for a blank.
  std::vector<int> cells;

  std::size_t side() const noexcept { return m * m; }
  std::size_t clue_count() const;
  void validate() const;
};

class conversion_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// 81 characters from 0-9 or '.'.
sudoku_puzzle parse_sudoku(std::string_view line);
std::string format_sudoku(const sudoku_puzzle& puzzle);

// One-hot pins for every clue, plus whatever the embedding already pins.
std::vector<pin> clues_to_pins(const sudoku_puzzle& puzzle, const ising_embedding& embedding);

struct square_grid {
  std::size_t n = 0;
  std::vector<int> cells;

  int at(std::size_t r, std::size_t c) const { return cells[r * n + c]; }
};

square_grid assignment_to_grid(const color_assignment& assignment, std::size_t n);
void write_grid(std::ostream& out, const square_grid& grid);
std::string grid_digits(const square_grid& grid);

bool validate_latin(const square_grid& grid);
bool validate_sudoku(const square_grid& grid, const sudoku_puzzle& puzzle);

struct corpus_entry {
  sudoku_puzzle quiz;
  // Empty when the corpus has no solution column.
  std::string solution;
};

// Two-column CSV "quizzes,solutions"; a header row is skipped. Reads at most
// `limit` rows (0 means all).
std::vector<corpus_entry> read_sudoku_corpus(std::istream& in, std::size_t limit = 0);

}  // namespace v2im
