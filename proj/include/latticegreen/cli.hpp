#pragma once

#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace latticegreen::cli {

enum class Format { csv, json };

/// One parameter carrying a list of values. Several names joined by '+'
/// (e.g. "mu+nu") are set to the same value.
struct Sweep {
  std::vector<std::string> names;
  std::vector<std::string> values;
};

/// Parameters are kept as text keyed by option name without dashes and
/// parsed per command, so a sweep can substitute any of them.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::vector<Sweep> sweeps;
  Format format = Format::csv;
  double tol = 1e-12;
  std::string output_path = "-";

  void validate() const;
};

using Cell = std::variant<long long, double, std::string>;
using Row = std::vector<Cell>;

struct Block {
  std::string sweep_name;  // empty without a sweep
  std::string sweep_value;
  std::vector<Row> rows;
};

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<Block> blocks;
};

/// Option names, defaults and help text of a command.
struct OptionSpec {
  std::string name;
  std::string default_value;
  std::string help;
};

const std::vector<std::string>& commands();
const std::vector<OptionSpec>& options(const std::string& command);

/// Parses "name=v1,v2,..."; throws DomainError on an empty list.
Sweep parse_sweep(const std::string& text);

/// Validates every point, then evaluates them in input order. Throws the
/// library errors unchanged.
Table compute(const RunConfig& config);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_number(double x);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// compute + write. Returns 0, 2 (validation) or 3 (numerical error) and
/// prints "<ErrorName>: message" on err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// run with config.sweeps required to be non-empty.
int sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point. LATTICEGREEN_TOL sets the default --tol.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace latticegreen::cli
