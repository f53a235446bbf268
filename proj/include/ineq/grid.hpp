#ifndef INEQ_GRID_HPP
#define INEQ_GRID_HPP

// Square lattice storage and von Neumann adjacency.

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"

namespace ineq {

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

/// rows x cols cells stored row-major.
struct LatticeGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<AgentState> cells;

  LatticeGrid() = default;
  LatticeGrid(std::size_t r, std::size_t c) : rows(r), cols(c), cells(r * c) {}

  std::size_t size() const { return cells.size(); }
  std::size_t flat(Position p) const { return p.row * cols + p.col; }
  Position pos(std::size_t idx) const { return {idx / cols, idx % cols}; }

  AgentState& at(Position p) { return cells[flat(p)]; }
  const AgentState& at(Position p) const { return cells[flat(p)]; }
};

/// Up, down, left, right of `p`, in that order. Wrapped on a torus,
/// clipped otherwise; duplicates removed.
inline std::vector<Position> neighbors(Position p, std::size_t rows, std::size_t cols, bool torus) {
  std::vector<Position> out;
  out.reserve(4);
  auto push = [&out](Position q) {
    for (const auto& x : out) {
      if (x == q) return;
    }
    out.push_back(q);
  };
  if (torus) {
    push({(p.row + rows - 1) % rows, p.col});
    push({(p.row + 1) % rows, p.col});
    push({p.row, (p.col + cols - 1) % cols});
    push({p.row, (p.col + 1) % cols});
  } else {
    if (p.row > 0) push({p.row - 1, p.col});
    if (p.row + 1 < rows) push({p.row + 1, p.col});
    if (p.col > 0) push({p.row, p.col - 1});
    if (p.col + 1 < cols) push({p.row, p.col + 1});
  }
  // a position is never its own neighbor
  std::erase(out, p);
  return out;
}

inline std::vector<Position> neighbors(Position p, const LatticeGrid& g, bool torus) {
  return neighbors(p, g.rows, g.cols, torus);
}

/// Precomputed flat-index adjacency for a fixed grid shape.
class Adjacency {
 public:
  Adjacency(std::size_t rows, std::size_t cols, bool torus) : offsets_(rows * cols + 1, 0) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        for (const Position q : neighbors({r, c}, rows, cols, torus)) {
          flat_.push_back(q.row * cols + q.col);
        }
        offsets_[r * cols + c + 1] = flat_.size();
      }
    }
  }

  std::span<const std::size_t> of(std::size_t cell) const {
    return {flat_.data() + offsets_[cell], offsets_[cell + 1] - offsets_[cell]};
  }

  std::size_t cells() const { return offsets_.size() - 1; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> flat_;
};

/// One line per row of 'C'/'D', joined by '\n' with no trailing newline.
inline std::string snapshot(const LatticeGrid& g) {
  std::string out;
  out.reserve(g.rows * (g.cols + 1));
  for (std::size_t r = 0; r < g.rows; ++r) {
    if (r > 0) out.push_back('\n');
    for (std::size_t c = 0; c < g.cols; ++c) out.push_back(strategy_char(g.at({r, c}).strategy));
  }
  return out;
}

/// Inverse of snapshot() on the strategy field. Tolerates one trailing
/// newline; rejects ragged rows and characters other than 'C'/'D'.
inline LatticeGrid parse_snapshot(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty() || lines.front().empty()) throw std::invalid_argument("snapshot: empty");
  LatticeGrid g(lines.size(), lines.front().size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (lines[r].size() != g.cols) throw std::invalid_argument("snapshot: ragged row " + std::to_string(r));
    for (std::size_t c = 0; c < g.cols; ++c) {
      const char ch = lines[r][c];
      if (ch != 'C' && ch != 'D') throw std::invalid_argument("snapshot: bad cell character");
      g.at({r, c}).strategy = ch == 'C' ? Strategy::Cooperator : Strategy::Defector;
    }
  }
  return g;
}

}  // namespace ineq

#endif  // INEQ_GRID_HPP
