#include "kfactor/exact_cover.hpp"

#include <string>

#include "kfactor/error.hpp"

namespace kfactor {

// Node 0 is the root; nodes 1..columns are column headers.
ExactCover::ExactCover(int primary_columns, int secondary_columns)
    : columns_(primary_columns + secondary_columns),
      size_(static_cast<std::size_t>(primary_columns + secondary_columns + 1), 0) {
  if (primary_columns < 0 || secondary_columns < 0) throw InvalidArgument("negative column count");
  nodes_list_.resize(static_cast<std::size_t>(columns_ + 1));
  for (int c = 0; c <= columns_; ++c) {
    auto& h = nodes_list_[static_cast<std::size_t>(c)];
    h.up = h.down = c;
    h.column = c;
    h.row = -1;
    if (c <= primary_columns) {
      h.left = c == 0 ? primary_columns : c - 1;
      h.right = c == primary_columns ? 0 : c + 1;
    } else {
      h.left = h.right = c;
    }
  }
}

int ExactCover::add_row(std::span<const int> columns) {
  const int row = row_count();
  const auto first = static_cast<int>(nodes_list_.size());
  row_start_.push_back(first);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const int c = columns[k] + 1;
    if (c < 1 || c > columns_) throw InvalidArgument("column out of range: " + std::to_string(columns[k]));
    const auto id = static_cast<int>(nodes_list_.size());
    auto& head = nodes_list_[static_cast<std::size_t>(c)];
    Node node{};
    node.column = c;
    node.row = row;
    node.up = head.up;
    node.down = c;
    node.left = k == 0 ? id : id - 1;
    node.right = first;
    nodes_list_.push_back(node);
    nodes_list_[static_cast<std::size_t>(nodes_list_[static_cast<std::size_t>(id)].up)].down = id;
    nodes_list_[static_cast<std::size_t>(c)].up = id;
    if (k > 0) {
      nodes_list_[static_cast<std::size_t>(id - 1)].right = id;
      nodes_list_[static_cast<std::size_t>(first)].left = id;
    }
    ++size_[static_cast<std::size_t>(c)];
  }
  return row;
}

void ExactCover::cover(int c) noexcept {
  auto& n = nodes_list_;
  n[static_cast<std::size_t>(n[static_cast<std::size_t>(c)].right)].left = n[static_cast<std::size_t>(c)].left;
  n[static_cast<std::size_t>(n[static_cast<std::size_t>(c)].left)].right = n[static_cast<std::size_t>(c)].right;
  for (int i = n[static_cast<std::size_t>(c)].down; i != c; i = n[static_cast<std::size_t>(i)].down) {
    for (int j = n[static_cast<std::size_t>(i)].right; j != i; j = n[static_cast<std::size_t>(j)].right) {
      auto& nj = n[static_cast<std::size_t>(j)];
      n[static_cast<std::size_t>(nj.down)].up = nj.up;
      n[static_cast<std::size_t>(nj.up)].down = nj.down;
      --size_[static_cast<std::size_t>(nj.column)];
    }
  }
}

void ExactCover::uncover(int c) noexcept {
  auto& n = nodes_list_;
  for (int i = n[static_cast<std::size_t>(c)].up; i != c; i = n[static_cast<std::size_t>(i)].up) {
    for (int j = n[static_cast<std::size_t>(i)].left; j != i; j = n[static_cast<std::size_t>(j)].left) {
      auto& nj = n[static_cast<std::size_t>(j)];
      ++size_[static_cast<std::size_t>(nj.column)];
      n[static_cast<std::size_t>(nj.down)].up = j;
      n[static_cast<std::size_t>(nj.up)].down = j;
    }
  }
  n[static_cast<std::size_t>(n[static_cast<std::size_t>(c)].right)].left = c;
  n[static_cast<std::size_t>(n[static_cast<std::size_t>(c)].left)].right = c;
}

bool ExactCover::recurse() {
  auto& n = nodes_list_;
  if (n[0].right == 0) {
    if (!(*visit_)(solution_)) stop_ = true;
    return stop_;
  }
  int best = -1;
  int best_size = 0;
  for (int c = n[0].right; c != 0; c = n[static_cast<std::size_t>(c)].right) {
    const int s = size_[static_cast<std::size_t>(c)];
    if (best < 0 || s < best_size) {
      best = c;
      best_size = s;
      if (s == 0) break;
    }
  }
  if (best_size == 0) return false;

  cover(best);
  for (int i = n[static_cast<std::size_t>(best)].down; i != best; i = n[static_cast<std::size_t>(i)].down) {
    if (budget_ != 0 && nodes_ >= budget_) {
      over_budget_ = true;
      stop_ = true;
      break;
    }
    ++nodes_;
    solution_.push_back(n[static_cast<std::size_t>(i)].row);
    for (int j = n[static_cast<std::size_t>(i)].right; j != i; j = n[static_cast<std::size_t>(j)].right)
      cover(n[static_cast<std::size_t>(j)].column);
    recurse();
    for (int j = n[static_cast<std::size_t>(i)].left; j != i; j = n[static_cast<std::size_t>(j)].left)
      uncover(n[static_cast<std::size_t>(j)].column);
    solution_.pop_back();
    if (stop_) break;
  }
  uncover(best);
  return stop_;
}

ExactCover::Status ExactCover::search(const std::function<bool(std::span<const int>)>& visit,
                                      std::uint64_t node_budget) {
  visit_ = &visit;
  budget_ = node_budget;
  nodes_ = 0;
  stop_ = false;
  over_budget_ = false;
  solution_.clear();
  recurse();
  visit_ = nullptr;
  if (over_budget_) return Status::budget_exceeded;
  return stop_ ? Status::found : Status::exhausted;
}

std::pair<ExactCover::Status, std::vector<int>> ExactCover::find_one(std::uint64_t node_budget) {
  std::vector<int> found;
  const std::function<bool(std::span<const int>)> visit = [&](std::span<const int> rows) {
    found.assign(rows.begin(), rows.end());
    return false;
  };
  auto status = search(visit, node_budget);
  return {status, found};
}

}  // namespace kfactor
