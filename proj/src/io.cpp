#include "ascentlab/io.hpp"

#include <fstream>
#include <sstream>

namespace ascentlab {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long long parse_int(const Line& line, const std::string& tok) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected an integer, got '" + tok + "'");
  }
}

void expect_tokens(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    throw ParseError(line.number, "expected " + std::to_string(n - 1) +
                                      " fields after " + line.tokens[0]);
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing VCSP header");

  Instance inst;
  std::size_t li = 0;
  {
    const Line& header = lines[li++];
    if (header.tokens[0] != "VCSP")
      throw ParseError(header.number, "expected VCSP header");
    expect_tokens(header, 2);
    long long declared = parse_int(header, header.tokens[1]);
    if (declared < 0) throw ParseError(header.number, "negative variable count");
    std::size_t vars_seen = 0;
    // VAR lines come before constraints
    while (li < lines.size() && lines[li].tokens[0] == "VAR") {
      const Line& line = lines[li++];
      expect_tokens(line, 3);
      long long id = parse_int(line, line.tokens[1]);
      long long dom = parse_int(line, line.tokens[2]);
      if (id <= 0) throw ParseError(line.number, "variable ids must be positive");
      if (dom < 1) throw ParseError(line.number, "domain size must be >= 1");
      try {
        inst.add_variable(static_cast<VarId>(id), static_cast<int>(dom));
      } catch (const std::exception& e) {
        throw ParseError(line.number, e.what());
      }
      ++vars_seen;
    }
    if (static_cast<long long>(vars_seen) != declared)
      throw ParseError(header.number,
                       "header declares " + std::to_string(declared) +
                           " variables but " + std::to_string(vars_seen) +
                           " VAR lines follow");
  }

  Constraint open;
  std::set<std::size_t> seen_tuples;
  bool has_open = false;
  auto close = [&]() {
    if (has_open) {
      inst.add_constraint(std::move(open));
      has_open = false;
      seen_tuples.clear();
    }
  };

  for (; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string& kind = line.tokens[0];
    if (kind == "CON") {
      close();
      if (line.tokens.size() < 2)
        throw ParseError(line.number, "CON needs an arity");
      long long arity = parse_int(line, line.tokens[1]);
      if (arity < 0) throw ParseError(line.number, "negative arity");
      expect_tokens(line, static_cast<std::size_t>(arity) + 2);
      std::vector<VarId> scope;
      std::vector<int> domains;
      for (long long i = 0; i < arity; ++i) {
        long long id = parse_int(line, line.tokens[static_cast<std::size_t>(i) + 2]);
        VarId v = static_cast<VarId>(id);
        if (!inst.is_active(v))
          throw ParseError(line.number,
                           "scope references unknown variable " + std::to_string(id));
        if (!scope.empty() && scope.back() >= v)
          throw ParseError(line.number, "constraint scope must be ascending");
        scope.push_back(v);
        domains.push_back(inst.domain_size(v));
      }
      try {
        open = Constraint::zeros(std::move(scope), std::move(domains));
      } catch (const std::exception& e) {
        throw ParseError(line.number, e.what());
      }
      has_open = true;
    } else if (kind == "VAL") {
      if (!has_open)
        throw ParseError(line.number, "VAL before any CON line");
      expect_tokens(line, open.arity() + 2);
      std::vector<int> tuple(open.arity());
      for (std::size_t i = 0; i < open.arity(); ++i) {
        long long v = parse_int(line, line.tokens[i + 1]);
        if (v < 0 || v >= open.domains[i])
          throw ParseError(line.number, "tuple value out of domain range");
        tuple[i] = static_cast<int>(v);
      }
      long long value = parse_int(line, line.tokens[open.arity() + 1]);
      std::size_t idx = open.index_of(tuple);
      if (!seen_tuples.insert(idx).second)
        throw ParseError(line.number, "duplicate VAL line for the same tuple");
      open.table[idx] = value;
    } else {
      throw ParseError(line.number, "unknown record '" + kind + "'");
    }
  }
  close();
  return inst;
}

std::string write_instance(const Instance& inst,
                           const std::vector<std::string>& header_comments) {
  std::ostringstream out;
  for (const std::string& c : header_comments) out << "# " << c << '\n';
  out << "VCSP " << inst.num_variables() << '\n';
  for (const auto& [id, dom] : inst.variables())
    out << "VAR " << id << ' ' << dom << '\n';
  std::vector<int> tuple;
  for (const Constraint& c : inst.constraints()) {
    out << "CON " << c.arity();
    for (VarId v : c.scope) out << ' ' << v;
    out << '\n';
    tuple.assign(c.arity(), 0);
    for (std::size_t idx = 0; idx < c.table_size(); ++idx) {
      if (c.table[idx] == 0) continue;
      c.tuple_of(idx, tuple);
      out << "VAL";
      for (int v : tuple) out << ' ' << v;
      out << ' ' << c.table[idx] << '\n';
    }
  }
  return out.str();
}

ConstraintGraph parse_graph(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "GRAPH")
    throw ParseError(lines.empty() ? 1 : lines[0].number,
                     "expected GRAPH header");
  expect_tokens(lines[0], 2);
  long long declared = parse_int(lines[0], lines[0].tokens[1]);

  ConstraintGraph g;
  bool explicit_vertices = false;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (line.tokens[0] == "VERTEX") {
      expect_tokens(line, 2);
      g.add_vertex(static_cast<VarId>(parse_int(line, line.tokens[1])));
      explicit_vertices = true;
    } else if (line.tokens[0] == "EDGE") {
      expect_tokens(line, 3);
      g.add_edge(static_cast<VarId>(parse_int(line, line.tokens[1])),
                 static_cast<VarId>(parse_int(line, line.tokens[2])));
    } else {
      throw ParseError(line.number, "unknown record '" + line.tokens[0] + "'");
    }
  }
  if (!explicit_vertices)
    for (long long v = 1; v <= declared; ++v) g.add_vertex(static_cast<VarId>(v));
  if (g.num_vertices() != declared)
    throw ParseError(lines[0].number, "vertex count disagrees with header");
  return g;
}

std::string write_graph(const ConstraintGraph& g) {
  std::ostringstream out;
  out << "GRAPH " << g.num_vertices() << '\n';
  for (VarId v : g.vertices()) out << "VERTEX " << v << '\n';
  for (const auto& [u, v] : g.edges()) out << "EDGE " << u << ' ' << v << '\n';
  return out.str();
}

TreedepthDecomposition parse_decomposition(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "TDD")
    throw ParseError(lines.empty() ? 1 : lines[0].number, "expected TDD header");
  expect_tokens(lines[0], 2);
  long long declared_height = parse_int(lines[0], lines[0].tokens[1]);

  std::map<VarId, VarId> parent;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (line.tokens[0] != "PARENT")
      throw ParseError(line.number, "unknown record '" + line.tokens[0] + "'");
    expect_tokens(line, 3);
    VarId child = static_cast<VarId>(parse_int(line, line.tokens[1]));
    VarId par = static_cast<VarId>(parse_int(line, line.tokens[2]));
    if (!parent.emplace(child, par).second)
      throw ParseError(line.number, "duplicate PARENT line for one vertex");
  }
  TreedepthDecomposition t{std::move(parent)};
  if (t.height() != declared_height)
    throw ParseError(lines[0].number, "header height disagrees with the forest");
  return t;
}

std::string write_decomposition(const TreedepthDecomposition& t) {
  std::ostringstream out;
  out << "TDD " << t.height() << '\n';
  for (const auto& [child, parent] : t.parent_map())
    out << "PARENT " << child << ' ' << parent << '\n';
  return out.str();
}

SnakePath parse_snake(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "SNAKE")
    throw ParseError(lines.empty() ? 1 : lines[0].number,
                     "expected SNAKE header");
  expect_tokens(lines[0], 3);
  long long dim = parse_int(lines[0], lines[0].tokens[1]);
  long long declared = parse_int(lines[0], lines[0].tokens[2]);
  if (dim < 1 || dim > 31) throw ParseError(lines[0].number, "bad dimension");

  SnakePath path;
  path.dimension = static_cast<int>(dim);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    expect_tokens(line, 1);
    const std::string& bits = line.tokens[0];
    if (static_cast<long long>(bits.size()) != dim)
      throw ParseError(line.number, "vertex bitstring has wrong length");
    std::uint32_t word = 0;
    for (char ch : bits) {
      if (ch != '0' && ch != '1')
        throw ParseError(line.number, "vertex must be a bitstring");
      word = (word << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    path.vertices.push_back(word);
  }
  if (static_cast<long long>(path.vertices.size()) != declared)
    throw ParseError(lines[0].number, "vertex count disagrees with header");
  return path;
}

std::string write_snake(const SnakePath& path) {
  std::ostringstream out;
  out << "SNAKE " << path.dimension << ' ' << path.vertices.size() << '\n';
  for (std::uint32_t v : path.vertices) {
    std::string bits(static_cast<std::size_t>(path.dimension), '0');
    for (int b = 0; b < path.dimension; ++b)
      if (v & (1u << b)) bits[static_cast<std::size_t>(path.dimension - 1 - b)] = '1';
    out << bits << '\n';
  }
  return out.str();
}

Trace parse_trace(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "TRACE")
    throw ParseError(lines.empty() ? 1 : lines[0].number,
                     "expected TRACE header");
  expect_tokens(lines[0], 3);
  long long declared = parse_int(lines[0], lines[0].tokens[1]);
  const std::string& status = lines[0].tokens[2];
  if (status != "complete" && status != "exhausted")
    throw ParseError(lines[0].number, "status must be complete or exhausted");

  Trace trace;
  trace.complete = status == "complete";
  std::size_t li = 1;
  for (; li < lines.size() && lines[li].tokens[0] == "START"; ++li) {
    const Line& line = lines[li];
    expect_tokens(line, 3);
    VarId var = static_cast<VarId>(parse_int(line, line.tokens[1]));
    int value = static_cast<int>(parse_int(line, line.tokens[2]));
    if (!trace.start.emplace(var, value).second)
      throw ParseError(line.number, "duplicate START line for one variable");
  }
  for (; li < lines.size() && lines[li].tokens[0] == "FITNESS"; ++li) {
    expect_tokens(lines[li], 2);
    trace.start_fitness = parse_int(lines[li], lines[li].tokens[1]);
  }
  for (; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (line.tokens[0] != "STEP")
      throw ParseError(line.number, "unknown record '" + line.tokens[0] + "'");
    expect_tokens(line, 6);
    long long t = parse_int(line, line.tokens[1]);
    if (t != static_cast<long long>(trace.steps.size()) + 1)
      throw ParseError(line.number, "step numbers must be consecutive from 1");
    TraceStep step;
    step.var = static_cast<VarId>(parse_int(line, line.tokens[2]));
    step.old_value = static_cast<int>(parse_int(line, line.tokens[3]));
    step.new_value = static_cast<int>(parse_int(line, line.tokens[4]));
    step.fitness_after = parse_int(line, line.tokens[5]);
    trace.steps.push_back(step);
  }
  if (static_cast<long long>(trace.steps.size()) != declared)
    throw ParseError(lines[0].number, "step count disagrees with header");
  return trace;
}

std::string write_trace(const Trace& trace) {
  std::ostringstream out;
  out << "TRACE " << trace.steps.size() << ' '
      << (trace.complete ? "complete" : "exhausted") << '\n';
  for (const auto& [var, value] : trace.start)
    out << "START " << var << ' ' << value << '\n';
  out << "FITNESS " << trace.start_fitness << '\n';
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    out << "STEP " << i + 1 << ' ' << s.var << ' ' << s.old_value << ' '
        << s.new_value << ' ' << s.fitness_after << '\n';
  }
  return out.str();
}

std::string trace_series_csv(const Trace& trace) {
  std::ostringstream out;
  out << "step,var,old,new,fitness\n";
  out << "0,,,," << trace.start_fitness << '\n';
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    out << i + 1 << ',' << s.var << ',' << s.old_value << ',' << s.new_value
        << ',' << s.fitness_after << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace ascentlab
