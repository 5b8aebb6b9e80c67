#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mule {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

/// Dense row-major square matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  std::span<T> flat() { return data_; }
  std::span<const T> flat() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using Adjacency = std::vector<std::vector<NodeId>>;

// Error types. Each carries enough context for the CLI to map it to an exit code.

class MuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConnectivityFailure : public MuleError {
 public:
  using MuleError::MuleError;
};

class ParseError : public MuleError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : MuleError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class Disconnected : public MuleError {
 public:
  using MuleError::MuleError;
};

class Infeasible : public MuleError {
 public:
  using MuleError::MuleError;
};

class Uncoverable : public MuleError {
 public:
  explicit Uncoverable(NodeId node)
      : MuleError("node " + std::to_string(node) + " is farther than k hops from every caching point"),
        node_(node) {}
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

class PartitionDisconnected : public MuleError {
 public:
  explicit PartitionDisconnected(std::size_t partition)
      : MuleError("partition " + std::to_string(partition) + " induces a disconnected subgraph"),
        partition_(partition) {}
  std::size_t partition() const { return partition_; }

 private:
  std::size_t partition_;
};

}  // namespace mule
