#include "v2im/puzzles.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace v2im {

namespace {

bool is_permutation_of_labels(std::vector<int> values, std::size_t n) {
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != static_cast<int>(i + 1)) return false;
  }
  return values.size() == n;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
  return s.substr(b);
}

}  // namespace

weighted_graph rook_graph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("rook_graph: N must be at least 1");
  std::vector<edge> edges;
  edges.reserve(n * n * (n - 1));
  for (std::size_t a = 0; a < n * n; ++a) {
    for (std::size_t b = a + 1; b < n * n; ++b) {
      if (a / n == b / n || a % n == b % n) edges.push_back({a, b, 1.0});
    }
  }
  return weighted_graph(n * n, std::move(edges));
}

weighted_graph sudoku_graph(std::size_t m) {
  if (m == 0) throw std::invalid_argument("sudoku_graph: m must be at least 1");
  const std::size_t n = m * m;
  std::vector<edge> edges;
  for (std::size_t a = 0; a < n * n; ++a) {
    const std::size_t ra = a / n, ca = a % n;
    for (std::size_t b = a + 1; b < n * n; ++b) {
      const std::size_t rb = b / n, cb = b % n;
      const bool box = ra / m == rb / m && ca / m == cb / m;
      if (ra == rb || ca == cb || box) edges.push_back({a, b, 1.0});
    }
  }
  return weighted_graph(n * n, std::move(edges));
}

std::size_t sudoku_puzzle::clue_count() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](int v) { return v != 0; }));
}

void sudoku_puzzle::validate() const {
  if (m == 0) throw std::invalid_argument("sudoku puzzle: box size must be positive");
  if (cells.size() != side() * side()) {
    throw std::invalid_argument("sudoku puzzle: expected " + std::to_string(side() * side()) +
                                " cells, got " + std::to_string(cells.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < 0 || cells[i] > static_cast<int>(side())) {
      throw std::invalid_argument("sudoku puzzle: cell " + std::to_string(i) + " out of range");
    }
  }
}

sudoku_puzzle parse_sudoku(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  if (line.size() != 81) {
    throw parse_error(1, "sudoku line must have 81 characters, got " + std::to_string(line.size()));
  }
  sudoku_puzzle p;
  p.m = 3;
  p.cells.reserve(81);
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (ch == '.') {
      p.cells.push_back(0);
    } else if (ch >= '0' && ch <= '9') {
      p.cells.push_back(ch - '0');
    } else {
      throw parse_error(1, "invalid character '" + std::string(1, ch) + "' at position " + std::to_string(i));
    }
  }
  return p;
}

std::string format_sudoku(const sudoku_puzzle& puzzle) {
  std::string s;
  for (int v : puzzle.cells) s += v == 0 ? '0' : static_cast<char>('0' + v);
  return s;
}

std::vector<pin> clues_to_pins(const sudoku_puzzle& puzzle, const ising_embedding& embedding) {
  puzzle.validate();
  const std::size_t k = puzzle.side();
  if (embedding.colors != k || embedding.nodes != puzzle.cells.size()) {
    throw std::invalid_argument("clues_to_pins: embedding does not match the puzzle size");
  }
  std::vector<pin> pins = embedding.pinned;
  for (std::size_t i = 0; i < puzzle.cells.size(); ++i) {
    const int d = puzzle.cells[i];
    if (d == 0) continue;
    for (std::size_t c = 0; c < k; ++c) {
      pins.push_back({embedding.index(i, c), static_cast<int>(c) + 1 == d ? 1 : -1, 0.0});
    }
  }
  return pins;
}

square_grid assignment_to_grid(const color_assignment& assignment, std::size_t n) {
  if (assignment.size() != n * n) {
    throw conversion_error("assignment has " + std::to_string(assignment.size()) + " entries, expected " +
                           std::to_string(n * n));
  }
  square_grid grid;
  grid.n = n;
  grid.cells = assignment.colors;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const int v = grid.cells[i];
    if (v < 1 || v > static_cast<int>(n)) {
      throw conversion_error("cell (" + std::to_string(i / n) + ", " + std::to_string(i % n) +
                             ") has no valid color");
    }
  }
  return grid;
}

void write_grid(std::ostream& out, const square_grid& grid) {
  for (std::size_t r = 0; r < grid.n; ++r) {
    for (std::size_t c = 0; c < grid.n; ++c) {
      if (c) out << ' ';
      out << grid.at(r, c);
    }
    out << '\n';
  }
}

std::string grid_digits(const square_grid& grid) {
  std::ostringstream s;
  for (int v : grid.cells) s << v;
  return s.str();
}

bool validate_latin(const square_grid& grid) {
  const std::size_t n = grid.n;
  if (grid.cells.size() != n * n) return false;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<int> row(grid.cells.begin() + r * n, grid.cells.begin() + (r + 1) * n);
    if (!is_permutation_of_labels(std::move(row), n)) return false;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<int> col;
    for (std::size_t r = 0; r < n; ++r) col.push_back(grid.at(r, c));
    if (!is_permutation_of_labels(std::move(col), n)) return false;
  }
  return true;
}

bool validate_sudoku(const square_grid& grid, const sudoku_puzzle& puzzle) {
  const std::size_t m = puzzle.m;
  const std::size_t n = m * m;
  if (grid.n != n || puzzle.cells.size() != n * n) return false;
  if (!validate_latin(grid)) return false;
  for (std::size_t br = 0; br < m; ++br) {
    for (std::size_t bc = 0; bc < m; ++bc) {
      std::vector<int> box;
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) box.push_back(grid.at(br * m + r, bc * m + c));
      }
      if (!is_permutation_of_labels(std::move(box), n)) return false;
    }
  }
  for (std::size_t i = 0; i < puzzle.cells.size(); ++i) {
    if (puzzle.cells[i] != 0 && puzzle.cells[i] != grid.cells[i]) return false;
  }
  return true;
}

std::vector<corpus_entry> read_sudoku_corpus(std::istream& in, std::size_t limit) {
  std::vector<corpus_entry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    std::string quiz = trim(line.substr(0, comma));
    std::string solution = comma == std::string::npos ? std::string() : trim(line.substr(comma + 1));
    if (lineno == 1 && quiz.find_first_not_of("0123456789.") != std::string::npos) continue;
    corpus_entry e;
    try {
      e.quiz = parse_sudoku(quiz);
      if (!solution.empty()) {
        const auto sol = parse_sudoku(solution);
        if (sol.clue_count() != 81) throw parse_error(1, "solution has blanks");
      }
    } catch (const parse_error& err) {
      const std::string msg = err.what();
      throw parse_error(lineno, msg.substr(msg.find(':') + 2));
    }
    e.solution = std::move(solution);
    out.push_back(std::move(e));
    if (limit != 0 && out.size() >= limit) break;
  }
  return out;
}

}  // namespace v2im
