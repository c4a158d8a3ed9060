#include "latticegreen/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "latticegreen/dft_core.hpp"
#include "latticegreen/error.hpp"
#include "latticegreen/green_closed.hpp"
#include "latticegreen/heisenberg_ring.hpp"
#include "latticegreen/jacobi_series.hpp"
#include "latticegreen/open_chain.hpp"

namespace latticegreen::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr long long kMaxRows = 1000000;
constexpr int kRingEdMax = 24;
constexpr int kRingRelativeMax = 256;
constexpr int kOpenEdMax = 2048;

using Params = std::map<std::string, std::string>;
using Evaluate = std::function<std::vector<Row>()>;

class Reader {
 public:
  explicit Reader(const Params& p) : p_(p) {}

  const std::string& text(const std::string& name) const {
    auto it = p_.find(name);
    if (it == p_.end()) throw DomainError("missing option --" + name);
    return it->second;
  }

  long long integer(const std::string& name, long long lo, long long hi) const {
    const std::string& s = text(name);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw DomainError("--" + name + ": not an integer: '" + s + "'");
    if (value < lo || value > hi)
      throw DomainError("--" + name + " must lie in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    return value;
  }

  double real(const std::string& name) const {
    const std::string& s = text(name);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
      throw DomainError("--" + name + ": not a finite number: '" + s + "'");
    return value;
  }

  const std::string& choice(const std::string& name, const std::set<std::string>& allowed) const {
    const std::string& s = text(name);
    if (!allowed.count(s)) throw DomainError("--" + name + ": unknown value '" + s + "'");
    return s;
  }

  // x-max defaults to N - 1
  std::pair<long long, long long> x_range(long long n) const {
    const long long lo = integer("x-min", -(1LL << 40), 1LL << 40);
    const long long hi = text("x-max") == "auto" ? lo + n - 1 : integer("x-max", -(1LL << 40), 1LL << 40);
    if (hi < lo) throw DomainError("--x-max must be >= --x-min");
    if (hi - lo + 1 > kMaxRows) throw DomainError("X range exceeds 10^6 rows");
    return {lo, hi};
  }

 private:
  const Params& p_;
};

double ed_error(double e, const std::vector<double>& ed, std::size_t i) {
  return i < ed.size() ? std::abs(e - ed[i]) : kNaN;
}

Evaluate prepare_green(const Reader& r, std::vector<std::string>& columns) {
  const int n = static_cast<int>(r.integer("n", 1, 1000000));
  const cplx v{r.real("v-re"), r.real("v-im")};
  const double eta = r.real("eta"), delta = r.real("delta");
  const auto [lo, hi] = r.x_range(n);
  const std::string method = r.choice("method", {"closed", "direct", "both"});
  if (method == "both")
    columns = {"X", "re_closed", "im_closed", "re_direct", "im_direct", "abs_diff"};
  else
    columns = {"X", "re_" + method, "im_" + method};
  return [=] {
    std::vector<Row> rows;
    for (long long x = lo; x <= hi; ++x) {
      const GreenParams gp{n, v, eta, delta, x};
      Row row{x};
      if (method == "closed" || method == "both") {
        const cplx c = green_closed(gp);
        row.insert(row.end(), {c.real(), c.imag()});
      }
      if (method == "direct" || method == "both") {
        const cplx d = direct_green_sum(gp);
        row.insert(row.end(), {d.real(), d.imag()});
      }
      if (method == "both") {
        const cplx c{std::get<double>(row[1]), std::get<double>(row[2])};
        const cplx d{std::get<double>(row[3]), std::get<double>(row[4])};
        row.emplace_back(std::abs(c - d));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
}

Evaluate prepare_jacobi(const Reader& r, double tol, std::vector<std::string>& columns) {
  JacobiSumSpec spec;
  spec.N = static_cast<int>(r.integer("n", 1, 1000000));
  spec.z = {r.real("z-re"), r.real("z-im")};
  spec.Delta = r.real("delta");
  spec.eta = r.real("eta");
  spec.k_max = r.text("k-max") == "auto" ? -1 : static_cast<int>(r.integer("k-max", 0, 100000));
  spec.tol.abs_tol = tol;
  spec.validate();
  const auto [lo, hi] = r.x_range(spec.N);
  columns = {"X", "re_series", "im_series", "re_direct", "im_direct", "abs_diff", "k_max",
             "last_term", "truncated"};
  return [=] {
    std::vector<Row> rows;
    for (long long x = lo; x <= hi; ++x) {
      JacobiSumSpec s = spec;
      s.X = x;
      const SeriesValue sv = bessel_series_green(s);
      const cplx d = direct_exponential_sum(s.z, s.N, s.Delta.real(), s.eta, x);
      rows.push_back({x, sv.value.real(), sv.value.imag(), d.real(), d.imag(),
                      std::abs(sv.value - d), static_cast<long long>(sv.k_max), sv.last_term,
                      static_cast<long long>(sv.truncated)});
    }
    return rows;
  };
}

std::vector<int> ring_sectors(const Reader& r, int n) {
  std::vector<int> ks;
  if (r.text("k") == "all")
    for (int k = 0; k < n; ++k) ks.push_back(k);
  else
    ks.push_back(static_cast<int>(r.integer("k", 0, n - 1)));
  return ks;
}

std::vector<double> ring_reference(const RingModel& model, int k) {
  if (model.N <= kRingEdMax) return ed_sector(model, k).values;
  if (model.N <= kRingRelativeMax) return relative_equation_spectrum(model.N, k, model.J);
  return {};
}

Evaluate prepare_ring(const Reader& r, std::vector<std::string>& columns) {
  RingModel model;
  model.N = static_cast<int>(r.integer("n", 3, 4096));
  model.J = r.real("j");
  model.validate();
  const auto ks = ring_sectors(r, model.N);
  columns = {"k", "parity", "v_re", "v_im", "E_over_J", "class", "ed_match_error"};
  return [=] {
    std::vector<Row> rows;
    for (int k : ks) {
      const auto sector = make_sector(model.N, k);
      const auto states = solve_sector(sector, model);
      auto ref = ring_reference(model, k);
      std::sort(ref.begin(), ref.end());
      for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        rows.push_back({static_cast<long long>(k),
                        std::string(sector.parity == RingParity::symmetric ? "symmetric"
                                                                           : "antisymmetric"),
                        s.v.real(), s.v.imag(), s.E / model.J, std::string(to_string(s.classification)),
                        ed_error(s.E, ref, i) / std::abs(model.J)});
      }
    }
    return rows;
  };
}

Evaluate prepare_open(const Reader& r, std::vector<std::string>& columns) {
  const auto model = build_model(static_cast<int>(r.integer("l", 2, 100000)), r.real("eta"),
                                 r.real("mu"), r.real("nu"));
  columns = {"m", "v_re", "v_im", "E", "class", "ed_match_error"};
  return [=] {
    const auto states = solve_open(model);
    std::vector<double> ref;
    if (model.L <= kOpenEdMax) ref = ed_oracle_open(model).energies;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& s = states[i];
      rows.push_back({static_cast<long long>(i), s.v.real(), s.v.imag(), s.E,
                      std::string(to_string(s.classification)), ed_error(s.E, ref, i)});
    }
    return rows;
  };
}

Evaluate prepare_oracle(const Reader& r, std::vector<std::string>& columns) {
  const std::string kind = r.choice("kind", {"green", "exponential", "ring", "open"});
  if (kind == "green" || kind == "exponential") {
    const int n = static_cast<int>(r.integer("n", 1, 1000000));
    const double eta = r.real("eta"), delta = r.real("delta");
    const auto [lo, hi] = r.x_range(n);
    columns = {"X", "re", "im"};
    if (kind == "green") {
      const GreenParams base{n, {r.real("v-re"), r.real("v-im")}, eta, delta, 0};
      base.validate();
      return [=] {
        std::vector<Row> rows;
        for (long long x = lo; x <= hi; ++x) {
          GreenParams gp = base;
          gp.X = x;
          const cplx d = direct_green_sum(gp);
          rows.push_back({x, d.real(), d.imag()});
        }
        return rows;
      };
    }
    const cplx z{r.real("z-re"), r.real("z-im")};
    return [=] {
      std::vector<Row> rows;
      for (long long x = lo; x <= hi; ++x) {
        const cplx d = direct_exponential_sum(z, n, delta, eta, x);
        rows.push_back({x, d.real(), d.imag()});
      }
      return rows;
    };
  }
  if (kind == "ring") {
    RingModel model;
    model.N = static_cast<int>(r.integer("n", 3, kRingEdMax));
    model.J = r.real("j");
    model.validate();
    const auto ks = ring_sectors(r, model.N);
    columns = {"k", "index", "E_over_J"};
    return [=] {
      std::vector<Row> rows;
      for (int k : ks) {
        auto values = ed_sector(model, k).values;
        std::sort(values.begin(), values.end());
        for (std::size_t i = 0; i < values.size(); ++i)
          rows.push_back({static_cast<long long>(k), static_cast<long long>(i), values[i] / model.J});
      }
      return rows;
    };
  }
  const auto model = build_model(static_cast<int>(r.integer("l", 2, kOpenEdMax)), r.real("eta"),
                                 r.real("mu"), r.real("nu"));
  columns = {"m", "E"};
  return [=] {
    const auto ed = ed_oracle_open(model);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < ed.energies.size(); ++i)
      rows.push_back({static_cast<long long>(i), ed.energies[i]});
    return rows;
  };
}

Evaluate prepare(const std::string& command, const Params& params, double tol,
                 std::vector<std::string>& columns) {
  const Reader r(params);
  if (command == "green") return prepare_green(r, columns);
  if (command == "jacobi") return prepare_jacobi(r, tol, columns);
  if (command == "ring") return prepare_ring(r, columns);
  if (command == "open") return prepare_open(r, columns);
  if (command == "oracle") return prepare_oracle(r, columns);
  throw DomainError("unknown command '" + command + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (auto d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (auto i = std::get_if<long long>(&c)) return *i;
  if (auto d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  return std::get<std::string>(c);
}

// Numeric parameters are rendered through the shortest form of their value
// so that the JSON number and the CSV text agree.
const std::vector<OptionSpec> kGreen = {
    {"n", "8", "ring size N"},
    {"v-re", "1", "Re v"},
    {"v-im", "0", "Im v"},
    {"eta", "0", "phase eta"},
    {"delta", "0", "twist Delta"},
    {"x-min", "0", "first X"},
    {"x-max", "auto", "last X (auto: x-min + N - 1)"},
    {"method", "both", "closed | direct | both"},
};
const std::vector<OptionSpec> kJacobi = {
    {"n", "1", "ring size N"},
    {"z-re", "1", "Re z"},
    {"z-im", "0", "Im z"},
    {"delta", "0", "twist Delta"},
    {"eta", "0", "phase eta"},
    {"x-min", "0", "first X"},
    {"x-max", "auto", "last X (auto: x-min + N - 1)"},
    {"k-max", "auto", "series truncation (auto or integer)"},
};
const std::vector<OptionSpec> kRing = {
    {"n", "8", "ring size N"},
    {"k", "all", "momentum index k or all"},
    {"j", "1", "exchange J"},
};
const std::vector<OptionSpec> kOpen = {
    {"l", "8", "chain length L"},
    {"eta", "1", "anisotropy eta"},
    {"mu", "0", "left end field mu"},
    {"nu", "0", "right end field nu"},
};
const std::vector<OptionSpec> kOracle = {
    {"kind", "green", "green | exponential | ring | open"},
    {"n", "8", "ring size N"},
    {"v-re", "1", "Re v"},
    {"v-im", "0", "Im v"},
    {"z-re", "1", "Re z"},
    {"z-im", "0", "Im z"},
    {"eta", "0", "phase eta (anisotropy for kind=open)"},
    {"delta", "0", "twist Delta"},
    {"x-min", "0", "first X"},
    {"x-max", "auto", "last X (auto: x-min + N - 1)"},
    {"k", "all", "momentum index k or all"},
    {"j", "1", "exchange J"},
    {"l", "8", "chain length L"},
    {"mu", "0", "left end field mu"},
    {"nu", "0", "right end field nu"},
};

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::csv)
    write_csv(table, out);
  else
    write_json(table, out);
}

int report(const Error& e, std::ostream& err) {
  err << e.name() << ": " << e.what() << '\n';
  return e.is_validation() ? 2 : 3;
}

}  // namespace

void RunConfig::validate() const {
  const auto& names = commands();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw DomainError("unknown command '" + command + "'");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("--tol must be a positive number");
  if (sweeps.size() > 1) throw DomainError("only one --sweep is allowed");
  std::set<std::string> known;
  for (const auto& o : options(command)) known.insert(o.name);
  for (const auto& [name, value] : params)
    if (!known.count(name)) throw DomainError("unknown option --" + name + " for " + command);
  for (const auto& s : sweeps) {
    if (s.values.empty()) throw DomainError("--sweep: empty value list");
    for (const auto& name : s.names)
      if (!known.count(name)) throw DomainError("--sweep: unknown option '" + name + "'");
  }
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"green", "jacobi", "ring", "open", "oracle"};
  return names;
}

const std::vector<OptionSpec>& options(const std::string& command) {
  if (command == "green") return kGreen;
  if (command == "jacobi") return kJacobi;
  if (command == "ring") return kRing;
  if (command == "open") return kOpen;
  if (command == "oracle") return kOracle;
  throw DomainError("unknown command '" + command + "'");
}

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("--sweep expects name=v1,v2,...");
  Sweep s;
  const std::string names = text.substr(0, eq);
  std::size_t start = 0;
  while (start <= names.size()) {
    const auto plus = names.find('+', start);
    const auto end = plus == std::string::npos ? names.size() : plus;
    if (end == start) throw DomainError("--sweep: empty parameter name");
    s.names.push_back(names.substr(start, end - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  const std::string values = text.substr(eq + 1);
  start = 0;
  while (start < values.size()) {
    const auto comma = values.find(',', start);
    const auto end = comma == std::string::npos ? values.size() : comma;
    if (end == start) throw DomainError("--sweep: empty value");
    s.values.push_back(values.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (s.values.empty()) throw DomainError("--sweep: empty value list");
  return s;
}

Table compute(const RunConfig& config) {
  config.validate();
  Params base;
  for (const auto& o : options(config.command)) base[o.name] = o.default_value;
  for (const auto& [name, value] : config.params) base[name] = value;

  struct Point {
    std::string name, value;
    Evaluate eval;
  };
  std::vector<Point> points;
  Table table;
  table.command = config.command;
  auto add_point = [&](const Params& p, std::string name, std::string value) {
    std::vector<std::string> columns;
    Evaluate eval = prepare(config.command, p, config.tol, columns);
    if (!points.empty() && columns != table.columns)
      throw DomainError("--sweep changes the output columns");
    table.columns = std::move(columns);
    points.push_back({std::move(name), std::move(value), std::move(eval)});
  };
  if (config.sweeps.empty()) {
    add_point(base, "", "");
  } else {
    const Sweep& s = config.sweeps.front();
    std::string joined;
    for (const auto& n : s.names) joined += (joined.empty() ? "" : "+") + n;
    for (const auto& value : s.values) {
      Params p = base;
      for (const auto& n : s.names) p[n] = value;
      add_point(p, joined, value);
    }
  }
  for (auto& pt : points) table.blocks.push_back({pt.name, pt.value, pt.eval()});
  return table;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_csv(const Table& table, std::ostream& out) {
  const bool swept = !table.blocks.empty() && !table.blocks.front().sweep_name.empty();
  std::string line;
  if (swept) line = csv_field(table.blocks.front().sweep_name);
  for (const auto& c : table.columns) line += (line.empty() ? "" : ",") + csv_field(c);
  out << line << '\n';
  for (const auto& b : table.blocks)
    for (const auto& row : b.rows) {
      line = swept ? csv_field(b.sweep_value) : "";
      bool first = !swept;
      for (const auto& c : row) {
        if (!first) line += ',';
        first = false;
        line += csv_field(cell_text(c));
      }
      out << line << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["command"] = table.command;
  doc["columns"] = table.columns;
  doc["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : table.blocks) {
    nlohmann::ordered_json block;
    if (b.sweep_name.empty())
      block["sweep"] = nullptr;
    else
      block["sweep"] = {{"name", b.sweep_name}, {"value", b.sweep_value}};
    block["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : b.rows) {
      auto r = nlohmann::ordered_json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      block["rows"].push_back(std::move(r));
    }
    doc["blocks"].push_back(std::move(block));
  }
  out << doc.dump() << '\n';
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Table table = compute(config);
    if (config.output_path == "-") {
      write_table(table, config.format, out);
      return out ? 0 : 3;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw DomainError("cannot open output file '" + config.output_path + "'");
    write_table(table, config.format, file);
    return 0;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.sweeps.empty()) return report(DomainError("sweep requires --sweep name=v1,v2,..."), err);
  return run(config, out, err);
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  if (const char* env = std::getenv("LATTICEGREEN_TOL")) {
    const std::string s(env);
    double tol = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), tol);
    if (ec != std::errc() || ptr != s.data() + s.size())
      return report(DomainError("LATTICEGREEN_TOL: not a number: '" + s + "'"), err);
    config.tol = tol;
  }

  CLI::App app{"Finite lattice Green's functions, Bessel series and magnon spectra"};
  app.require_subcommand(1);
  std::string format = "csv";
  std::vector<std::string> sweep_args;
  app.add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--tol", config.tol, "tolerance (default 1e-12 or LATTICEGREEN_TOL)");
  app.add_option("-o,--output", config.output_path, "output file, - for standard output")
      ->capture_default_str();
  app.add_option("--sweep", sweep_args, "name=v1,v2,... (names joined by + move together)");

  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd, cmd + " table");
    sub->fallthrough();
    for (const auto& o : options(cmd)) {
      values[cmd][o.name] = o.default_value;
      sub->add_option("--" + o.name, values[cmd][o.name], o.help)->capture_default_str();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "DomainError: " << e.what() << '\n';
    return 2;
  }

  for (const auto* sub : app.get_subcommands()) config.command = sub->get_name();
  config.params = values[config.command];
  config.format = format == "json" ? Format::json : Format::csv;
  try {
    for (const auto& s : sweep_args) config.sweeps.push_back(parse_sweep(s));
  } catch (const Error& e) {
    return report(e, err);
  }
  return run(config, out, err);
}

}  // namespace latticegreen::cli
