#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace kfactor {

/// Dancing-links exact cover (Algorithm X).
///
/// Primary columns must be covered exactly once, secondary columns at most
/// once. Branches on the primary column with the fewest live rows (lowest
/// index on ties) and tries rows in insertion order, so results depend only
/// on the insertion order.
class ExactCover {
 public:
  enum class Status { found, exhausted, budget_exceeded };

  ExactCover(int primary_columns, int secondary_columns = 0);

  /// Returns the row id. Columns must be distinct and in range.
  int add_row(std::span<const int> columns);

  [[nodiscard]] int row_count() const noexcept { return static_cast<int>(row_start_.size()); }

  /// Calls `visit` with the row ids of each solution until it returns false.
  /// `node_budget` caps the number of rows tried (0 = unlimited).
  Status search(const std::function<bool(std::span<const int>)>& visit, std::uint64_t node_budget = 0);

  /// First solution in search order.
  std::pair<Status, std::vector<int>> find_one(std::uint64_t node_budget = 0);

  [[nodiscard]] std::uint64_t nodes_visited() const noexcept { return nodes_; }

 private:
  struct Node {
    int left, right, up, down, column, row;
  };

  void cover(int c) noexcept;
  void uncover(int c) noexcept;
  bool recurse();

  int columns_;
  std::vector<Node> nodes_list_;
  std::vector<int> size_;
  std::vector<int> row_start_;
  std::vector<int> solution_;
  const std::function<bool(std::span<const int>)>* visit_ = nullptr;
  std::uint64_t budget_ = 0;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
  bool over_budget_ = false;
};

}  // namespace kfactor
