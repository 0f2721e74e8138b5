#pragma once

#include "interlace/graph.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace interlace {

// Line-oriented graph description:
//   vertex <id> [loop] [alpha="<expr>"] [beta="<expr>"]
//   edge <id> <id>
//   root <id>
//   order <parent> <child>...
//   # comment
struct GraphFile {
  WeightedGraph graph;
  std::optional<std::string> root;
  std::map<std::string, std::vector<std::string>> child_order;
};

class GraphFileError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Semantic };
  GraphFileError(Kind kind, const std::string& source, std::size_t line, std::size_t column, const std::string& msg);
  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

bool is_valid_vertex_id(std::string_view id);

GraphFile parse_graph_file(std::string_view text, const std::string& source = "<input>");
// Throws std::runtime_error if the file cannot be read.
GraphFile read_graph_file(const std::filesystem::path& path);

// Inverse of parse_graph_file: weights other than 1 are written with
// canonical polynomial text.
std::string write_graph_file(const GraphFile& file);
std::string write_graph_file(const WeightedGraph& g);

}  // namespace interlace
