#include "interlace/graph_file.hpp"

#include "interlace/poly.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace interlace {

GraphFileError::GraphFileError(Kind kind, const std::string& source, std::size_t line, std::size_t column,
                               const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      kind_(kind),
      line_(line),
      column_(column) {}

bool is_valid_vertex_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_';
  });
}

namespace {

struct Token {
  std::string text;   // quotes removed from the value part
  std::size_t column;  // 1-based
  std::size_t value_column = 0;  // column of the first character inside quotes, if any
};

class LineParser {
 public:
  LineParser(const std::string& source, std::size_t line_no, GraphFile& out) : src_(source), line_(line_no), out_(out) {}

  [[noreturn]] void syntax(std::size_t col, const std::string& msg) const {
    throw GraphFileError(GraphFileError::Kind::Syntax, src_, line_, col, msg);
  }
  [[noreturn]] void semantic(std::size_t col, const std::string& msg) const {
    throw GraphFileError(GraphFileError::Kind::Semantic, src_, line_, col, msg);
  }

  std::vector<Token> tokenize(std::string_view line) const {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      if (line[i] == '#') break;
      Token t{"", i + 1};
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
        if (line[i] == '"') {
          const std::size_t open = i;
          t.value_column = i + 2;
          ++i;
          while (i < line.size() && line[i] != '"') t.text += line[i++];
          if (i == line.size()) syntax(open + 1, "unterminated quoted value");
          ++i;
        } else {
          t.text += line[i++];
        }
      }
      tokens.push_back(std::move(t));
    }
    return tokens;
  }

  WeightedGraph::Index known(const Token& t) const {
    check_id(t);
    auto i = out_.graph.find(t.text);
    if (!i) semantic(t.column, "unknown vertex '" + t.text + "'");
    return *i;
  }

  void check_id(const Token& t) const {
    if (t.value_column != 0 || !is_valid_vertex_id(t.text)) syntax(t.column, "invalid vertex id '" + t.text + "'");
  }

  Poly weight(const Token& t, std::size_t prefix) const {
    if (t.value_column == 0 || t.text.size() < prefix) syntax(t.column, "weight value must be double-quoted");
    const std::string expr = t.text.substr(prefix);
    try {
      return parse_poly(expr);
    } catch (const ParseError& e) {
      std::string msg = e.what();
      if (auto colon = msg.find(": "); msg.rfind("column ", 0) == 0 && colon != std::string::npos) {
        msg = msg.substr(colon + 2);
      }
      syntax(t.value_column + e.column() - 1, "bad weight expression: " + msg);
    }
  }

  void parse(std::string_view line) {
    const auto tokens = tokenize(line);
    if (tokens.empty()) return;
    const auto& head = tokens[0];
    if (head.text == "vertex") {
      vertex(tokens);
    } else if (head.text == "edge") {
      if (tokens.size() != 3) syntax(head.column, "edge takes exactly two vertex ids");
      check_id(tokens[1]);
      check_id(tokens[2]);
      const auto a = known(tokens[1]);
      const auto b = known(tokens[2]);
      if (a == b) semantic(tokens[2].column, "self-edge on '" + tokens[1].text + "'; use the loop flag");
      if (out_.graph.adjacent(a, b)) semantic(tokens[1].column, "duplicate edge");
      out_.graph.set_edge(a, b, true);
    } else if (head.text == "root") {
      if (tokens.size() != 2) syntax(head.column, "root takes exactly one vertex id");
      known(tokens[1]);
      if (out_.root) semantic(head.column, "root given twice");
      out_.root = tokens[1].text;
    } else if (head.text == "order") {
      if (tokens.size() < 3) syntax(head.column, "order takes a parent and at least one child");
      for (std::size_t i = 1; i < tokens.size(); ++i) check_id(tokens[i]);
      for (std::size_t i = 1; i < tokens.size(); ++i) known(tokens[i]);
      if (out_.child_order.count(tokens[1].text)) semantic(tokens[1].column, "order for '" + tokens[1].text + "' given twice");
      std::vector<std::string> kids;
      std::set<std::string> seen;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        if (!seen.insert(tokens[i].text).second) semantic(tokens[i].column, "child '" + tokens[i].text + "' listed twice");
        kids.push_back(tokens[i].text);
      }
      out_.child_order.emplace(tokens[1].text, std::move(kids));
    } else {
      syntax(head.column, "unknown directive '" + head.text + "'");
    }
  }

 private:
  void vertex(const std::vector<Token>& tokens) {
    if (tokens.size() < 2) syntax(tokens[0].column, "vertex needs an id");
    check_id(tokens[1]);
    bool loop = false;
    std::optional<Poly> alpha;
    std::optional<Poly> beta;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const auto& t = tokens[i];
      if (t.text == "loop" && t.value_column == 0) {
        if (loop) syntax(t.column, "loop given twice");
        loop = true;
      } else if (t.text.rfind("alpha=", 0) == 0) {
        if (alpha) syntax(t.column, "alpha given twice");
        alpha = weight(t, 6);
      } else if (t.text.rfind("beta=", 0) == 0) {
        if (beta) syntax(t.column, "beta given twice");
        beta = weight(t, 5);
      } else {
        syntax(t.column, "unexpected vertex attribute '" + t.text + "'");
      }
    }
    if (out_.graph.contains(tokens[1].text)) semantic(tokens[1].column, "duplicate vertex '" + tokens[1].text + "'");
    out_.graph.add_vertex(tokens[1].text, loop, alpha.value_or(Poly(1)), beta.value_or(Poly(1)));
  }

  const std::string& src_;
  std::size_t line_;
  GraphFile& out_;
};

}  // namespace

GraphFile parse_graph_file(std::string_view text, const std::string& source) {
  GraphFile out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    LineParser(source, line_no, out).parse(line);
    start = end + 1;
  }
  return out;
}

GraphFile read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_file(buf.str(), path.string());
}

std::string write_graph_file(const GraphFile& file) {
  const auto& g = file.graph;
  std::ostringstream out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << "vertex " << g.label(v);
    if (g.looped(v)) out << " loop";
    if (!g.alpha(v).is_one()) out << " alpha=\"" << g.alpha(v).to_string() << '"';
    if (!g.beta(v).is_one()) out << " beta=\"" << g.beta(v).to_string() << '"';
    out << '\n';
  }
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (g.adjacent(u, v)) out << "edge " << g.label(u) << ' ' << g.label(v) << '\n';
    }
  }
  if (file.root) out << "root " << *file.root << '\n';
  for (const auto& [parent, kids] : file.child_order) {
    out << "order " << parent;
    for (const auto& k : kids) out << ' ' << k;
    out << '\n';
  }
  return out.str();
}

std::string write_graph_file(const WeightedGraph& g) { return write_graph_file(GraphFile{g, std::nullopt, {}}); }

}  // namespace interlace
