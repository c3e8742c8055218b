#pragma once

#include <string>
#include <vector>

#include "ascentlab/generators.hpp"
#include "ascentlab/search.hpp"
#include "ascentlab/treedepth.hpp"
#include "ascentlab/vcsp.hpp"

namespace ascentlab {

/// Instance file format: line-oriented text, '#' comments, whitespace
/// separated. `VCSP <num_vars>` header, `VAR <id> <domain_size>` per
/// variable, `CON <arity> <id...>` opens a constraint (scope ascending),
/// `VAL <v...> <value>` lines set nonzero entries of the open constraint;
/// omitted tuples are zero.
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst,
                           const std::vector<std::string>& header_comments = {});

/// `GRAPH <n>` then `VERTEX <id>` and `EDGE <u> <v>` lines. VERTEX lines
/// carry isolated or non-contiguous ids; a file without them means 1..n.
ConstraintGraph parse_graph(const std::string& text);
std::string write_graph(const ConstraintGraph& g);

/// `TDD <height>` then `PARENT <child> <parent|0>` lines (0 marks a root).
TreedepthDecomposition parse_decomposition(const std::string& text);
std::string write_decomposition(const TreedepthDecomposition& t);

/// `SNAKE <dimension> <num_vertices>` then one vertex per line as a
/// bitstring, most significant bit first.
SnakePath parse_snake(const std::string& text);
std::string write_snake(const SnakePath& path);

/// `TRACE <num_steps> <complete|exhausted>`, `START <var> <value>` per
/// variable, then `STEP <t> <var> <old> <new> <fitness>` lines.
Trace parse_trace(const std::string& text);
std::string write_trace(const Trace& trace);

/// Plot-ready series: header `step,var,old,new,fitness`, a step-0 row with
/// the start fitness, then one row per step.
std::string trace_series_csv(const Trace& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ascentlab
