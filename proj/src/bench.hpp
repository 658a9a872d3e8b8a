#pragma once
#include <map>
#include <string>
#include <vector>

#include "common.hpp"

namespace wl {

struct Record {
  std::string suite, name, criterion, anchor, source;
  double measured = 0;
  double lo = 0, hi = 0;  // closed acceptance window, either side may be infinite
  bool pass = false;
};

struct Cell {
  std::string s;
  Cell(double v) : s(fmt17(v)) {}
  Cell(int v) : s(std::to_string(v)) {}
  Cell(size_t v) : s(std::to_string(v)) {}
  Cell(const char* v) : s(v) {}
  Cell(std::string v) : s(std::move(v)) {}
};

struct Table {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add(std::initializer_list<Cell> cells);
};

struct SuiteReport {
  std::string suite;
  double runtime = 0;
  std::vector<Record> records;
  std::vector<Table> csv;
  std::vector<Table> plots;  // abscissa, ordinate, reference line
};

struct BenchReport {
  int dim = 2;
  uint64_t seed = 0;
  double runtime = 0;
  std::vector<SuiteReport> suites;
  bool all_pass() const;
  std::vector<const Record*> failures() const;
  size_t record_count() const;
};

struct ConfigKey {
  const char* key;
  const char* value;
  const char* doc;
};
const std::vector<ConfigKey>& config_keys();

struct RecordSpec {
  const char* name;
  const char* suite;
  const char* criterion;
  const char* anchor;
  const char* source;
  double lo, hi;
};
const std::vector<RecordSpec>& record_specs();

const std::vector<std::string>& suite_names();

// Flat key=value settings; anything not in config_keys() or threshold.<record> is rejected.
class BenchConfig {
 public:
  BenchConfig();
  void set(const std::string& key, const std::string& value);
  void load(const std::string& path);
  void parse(const std::string& text, const std::string& origin = "<string>");
  const std::string& str(const std::string& key) const;
  double num(const std::string& key) const;
  int integer(const std::string& key) const;
  uint64_t seed() const;
  bool enabled(const std::string& suite) const;
  // acceptance window for a record after overrides
  std::pair<double, double> window(const std::string& record) const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, std::pair<double, double>> windows_;
};

SuiteReport run_suite(const BenchConfig& cfg, const std::string& suite);
// Runs the named suites in declared order; "all" expands to the enabled ones.
BenchReport run_bench(const BenchConfig& cfg, const std::vector<std::string>& suites);

std::string summary_json(const BenchReport& r);
std::string table_text(const Table& t, char sep);
// CSVs and summary.json in dir, plot tables in dir/plots. Nothing is written for an empty report.
void write_report(const BenchReport& r, const std::string& dir);
size_t write_plots(const BenchReport& r, const std::string& dir);

}  // namespace wl
