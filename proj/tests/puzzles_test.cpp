#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "v2im/puzzles.hpp"

using namespace v2im;

namespace {

using pair_set = std::set<std::pair<node_id, node_id>>;

pair_set edge_set(const weighted_graph& g) {
  pair_set out;
  for (const auto& e : g.edges()) out.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return out;
}

// Every pair of cells checked against the three constraint families.
pair_set enumerate_constraints(std::size_t m, bool boxes) {
  const std::size_t n = m * m;
  pair_set out;
  for (std::size_t a = 0; a < n * n; ++a) {
    for (std::size_t b = a + 1; b < n * n; ++b) {
      const std::size_t ra = a / n, ca = a % n, rb = b / n, cb = b % n;
      const bool row = ra == rb, col = ca == cb;
      const bool box = ra / m == rb / m && ca / m == cb / m;
      if (row || col || (boxes && box)) out.insert({a, b});
    }
  }
  return out;
}

const char* kFirstQuiz =
    "004300209005009001070060043006002087190007400050083000600000105003508690042910300";
const char* kFirstSolution =
    "864371259325849761971265843436192587198657432257483916689734125713528694542916378";

square_grid grid_of(const std::string& digits) {
  square_grid g{9, {}};
  for (char ch : digits) g.cells.push_back(ch - '0');
  return g;
}

}  // namespace

TEST(RookGraph, Counts) {
  auto one = rook_graph(1);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.edge_count(), 0u);
  auto two = rook_graph(2);
  EXPECT_EQ(two.size(), 4u);
  EXPECT_EQ(two.edge_count(), 4u);
  EXPECT_FALSE(two.has_edge(0, 3));
  auto eight = rook_graph(8);
  EXPECT_EQ(eight.size(), 64u);
  EXPECT_EQ(eight.edge_count(), 448u);
  for (node_id i = 0; i < 64; ++i) EXPECT_EQ(eight.adjacency(i).size(), 14u);
  EXPECT_THROW(rook_graph(0), std::invalid_argument);
}

TEST(SudokuGraph, MatchesPairEnumeration) {
  EXPECT_EQ(sudoku_graph(1).size(), 1u);
  EXPECT_EQ(sudoku_graph(1).edge_count(), 0u);
  auto two = sudoku_graph(2);
  EXPECT_EQ(two.size(), 16u);
  EXPECT_EQ(two.edge_count(), 56u);
  EXPECT_EQ(edge_set(two), enumerate_constraints(2, true));
  auto three = sudoku_graph(3);
  EXPECT_EQ(three.size(), 81u);
  EXPECT_EQ(three.edge_count(), 810u);
  EXPECT_EQ(edge_set(three), enumerate_constraints(3, true));
  for (node_id i = 0; i < 81; ++i) EXPECT_EQ(three.adjacency(i).size(), 20u);
  for (const auto& e : three.edges()) EXPECT_EQ(e.w, 1.0);
  EXPECT_THROW(sudoku_graph(0), std::invalid_argument);
}

TEST(SudokuGraph, ContainsRookGraph) {
  const auto rook = edge_set(rook_graph(9));
  const auto sudoku = edge_set(sudoku_graph(3));
  EXPECT_EQ(rook, enumerate_constraints(3, false));
  std::size_t extra = 0;
  for (const auto& p : sudoku) extra += rook.count(p) ? 0 : 1;
  for (const auto& p : rook) EXPECT_TRUE(sudoku.count(p));
  EXPECT_EQ(rook.size(), 648u);
  EXPECT_EQ(extra, 162u);
}

TEST(ParseSudoku, Examples) {
  auto empty = parse_sudoku(std::string(81, '0'));
  EXPECT_EQ(empty.clue_count(), 0u);
  EXPECT_THROW(parse_sudoku(std::string(80, '0')), parse_error);
  EXPECT_THROW(parse_sudoku(std::string(80, '0') + "x"), parse_error);
  auto dots = parse_sudoku("5" + std::string(80, '.'));
  EXPECT_EQ(dots.clue_count(), 1u);
  EXPECT_EQ(dots.cells[0], 5);
  auto quiz = parse_sudoku(kFirstQuiz);
  EXPECT_GE(quiz.clue_count(), 17u);
  EXPECT_EQ(format_sudoku(quiz), kFirstQuiz);
  EXPECT_EQ(parse_sudoku(std::string(kFirstQuiz) + "\r\n").cells, quiz.cells);
}

TEST(CluesToPins, EmptyPuzzlePinsOnlyApex) {
  auto emb = build_coloring_ising(sudoku_graph(3), 9);
  auto pins = clues_to_pins(parse_sudoku(std::string(81, '0')), emb);
  ASSERT_EQ(pins.size(), 1u);
  EXPECT_EQ(pins[0].index, 0u);
}

TEST(CluesToPins, SingleClue) {
  auto emb = build_coloring_ising(sudoku_graph(3), 9);
  auto pins = clues_to_pins(parse_sudoku("5" + std::string(80, '0')), emb);
  ASSERT_EQ(pins.size(), 10u);
  int positive = 0;
  for (std::size_t i = 1; i < pins.size(); ++i) {
    EXPECT_GE(pins[i].index, emb.index(0, 0));
    EXPECT_LE(pins[i].index, emb.index(0, 8));
    EXPECT_EQ(pins[i].x, 0.0);
    if (pins[i].sigma == 1) {
      ++positive;
      EXPECT_EQ(pins[i].index, emb.index(0, 4));
    }
  }
  EXPECT_EQ(positive, 1);
}

TEST(CluesToPins, FullGridRoundTrip) {
  auto emb = build_coloring_ising(sudoku_graph(3), 9);
  auto full = parse_sudoku(kFirstSolution);
  auto pins = clues_to_pins(full, emb);
  EXPECT_EQ(pins.size(), 1u + 81 * 9);
  add_pins(emb, pins);
  auto decoded = decode_colors(emb.pinned_state(), emb);
  EXPECT_EQ(decoded.colors, full.cells);
  EXPECT_TRUE(is_proper(sudoku_graph(3), decoded));

  auto quiz = parse_sudoku(kFirstQuiz);
  auto emb2 = build_coloring_ising(sudoku_graph(3), 9);
  add_pins(emb2, clues_to_pins(quiz, emb2));
  auto partial = decode_colors(emb2.pinned_state(), emb2);
  for (std::size_t i = 0; i < 81; ++i)
    if (quiz.cells[i] != 0) EXPECT_EQ(partial.colors[i], quiz.cells[i]);
}

TEST(CluesToPins, Errors) {
  auto emb = build_coloring_ising(rook_graph(4), 4);
  EXPECT_THROW(clues_to_pins(parse_sudoku(kFirstQuiz), emb), std::invalid_argument);
  auto bad = parse_sudoku(kFirstQuiz);
  bad.cells[0] = 12;
  auto emb9 = build_coloring_ising(sudoku_graph(3), 9);
  EXPECT_THROW(clues_to_pins(bad, emb9), std::invalid_argument);
}

TEST(AssignmentToGrid, Examples) {
  auto g = assignment_to_grid({{1, 2, 2, 1}}, 2);
  EXPECT_EQ(g.n, 2u);
  EXPECT_EQ(g.at(0, 1), 2);
  EXPECT_EQ(g.at(1, 1), 1);
  try {
    assignment_to_grid({{1, 2, color_assignment::invalid, 1}}, 2);
    FAIL();
  } catch (const conversion_error& e) {
    EXPECT_NE(std::string(e.what()).find("(1, 0)"), std::string::npos);
  }
  EXPECT_THROW(assignment_to_grid({{1, 2, 2}}, 2), conversion_error);
}

TEST(AssignmentToGrid, RookColoringIsLatin) {
  // (r + c) mod 8 colors the 8x8 rook graph properly.
  color_assignment a;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) a.colors.push_back((r + c) % 8 + 1);
  ASSERT_TRUE(is_proper(rook_graph(8), a));
  EXPECT_TRUE(validate_latin(assignment_to_grid(a, 8)));
}

TEST(Validate, LatinExamples) {
  EXPECT_TRUE(validate_latin({2, {1, 2, 2, 1}}));
  EXPECT_FALSE(validate_latin({2, {1, 1, 2, 2}}));
  EXPECT_FALSE(validate_latin({2, {1, 2, 1, 2}}));
  EXPECT_FALSE(validate_latin({2, {1, 3, 3, 1}}));
  EXPECT_TRUE(validate_latin({1, {1}}));
}

TEST(Validate, SudokuExamples) {
  auto solved = grid_of(kFirstSolution);
  EXPECT_TRUE(validate_sudoku(solved, parse_sudoku(kFirstQuiz)));
  EXPECT_TRUE(validate_sudoku(solved, parse_sudoku(kFirstSolution)));
  auto other = parse_sudoku(kFirstQuiz);
  other.cells[2] = other.cells[2] == 1 ? 2 : 1;
  EXPECT_FALSE(validate_sudoku(solved, other));
  // Latin but with broken boxes: cyclic shifts by one.
  square_grid shifted{9, {}};
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) shifted.cells.push_back((r + c) % 9 + 1);
  EXPECT_TRUE(validate_latin(shifted));
  EXPECT_FALSE(validate_sudoku(shifted, parse_sudoku(std::string(81, '0'))));
}

TEST(WriteGrid, Format) {
  std::ostringstream out;
  write_grid(out, {2, {1, 2, 2, 1}});
  EXPECT_EQ(out.str(), "1 2\n2 1\n");
  EXPECT_EQ(grid_digits({2, {1, 2, 2, 1}}), "1221");
}

TEST(ReadSudokuCorpus, Bundled) {
  std::ifstream in(V2IM_TEST_DATA "/sudoku_first50.csv");
  ASSERT_TRUE(in);
  auto corpus = read_sudoku_corpus(in);
  ASSERT_EQ(corpus.size(), 50u);
  EXPECT_EQ(format_sudoku(corpus[0].quiz), kFirstQuiz);
  EXPECT_EQ(corpus[0].solution, kFirstSolution);
  for (const auto& e : corpus) {
    EXPECT_GE(e.quiz.clue_count(), 17u);
    EXPECT_TRUE(validate_sudoku(grid_of(e.solution), e.quiz));
  }
}

TEST(ReadSudokuCorpus, LimitAndErrors) {
  std::istringstream two(std::string("quizzes,solutions\n") + kFirstQuiz + "," + kFirstSolution + "\n" + kFirstQuiz +
                         "\n" + kFirstQuiz + "\n");
  auto limited = read_sudoku_corpus(two, 2);
  ASSERT_EQ(limited.size(), 2u);
  EXPECT_TRUE(limited[1].solution.empty());

  std::istringstream bad(std::string("quizzes,solutions\n") + kFirstQuiz + "\n123\n");
  try {
    read_sudoku_corpus(bad);
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}
