#pragma once

#include "stegocap/channel.hpp"
#include "stegocap/steganalyzer.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace stegocap {

// flat key=value configuration text: one pair per line, '#' starts a comment,
// blank lines ignored; malformed lines raise std::invalid_argument with the
// line number
std::map<std::string, std::string> parse_kv_text(const std::string& text);
std::map<std::string, std::string> parse_kv_file(const std::string& path);

// numeric/list readers with error messages naming the key
double kv_double(const std::map<std::string, std::string>& kv,
                 const std::string& key);
double kv_double_or(const std::map<std::string, std::string>& kv,
                    const std::string& key, double fallback);
long long kv_int(const std::map<std::string, std::string>& kv,
                 const std::string& key);
long long kv_int_or(const std::map<std::string, std::string>& kv,
                    const std::string& key, long long fallback);
std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

// compact detector descriptions for the command line and config files:
//   sum
//   variance:c=3.0
//   memoryless:alphabet=4;permissible=0,2
//   vacuous:alphabet=3
//   meansign:neg | meansign:pos       (over the {-1,+1} alphabet)
//   composite:(SPEC);(SPEC)
// or a path to a key=value file with variant=... and the same fields
Steganalyzer steganalyzer_from_spec(const std::string& spec);
Steganalyzer steganalyzer_from_kv(const std::map<std::string, std::string>& kv);

// channel descriptions: "bsc:0.1", "identity:K", or a path to a plain-text
// file with one row of output probabilities per input letter
DmcKernel dmc_from_spec(const std::string& spec);
DmcKernel dmc_from_file(const std::string& path);

// CSV emission: '#' metadata lines (defaults, budgets, log base) followed by a
// header row, LF line endings, fixed '%.12g' number formatting so identical
// runs are byte-identical
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out);
  void metadata(const std::string& key, const std::string& value);
  void metadata(const std::string& key, double value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  static std::string num(double v);
  static std::string num(const BigInt& v);

 private:
  std::ostream& out_;
  bool header_written_ = false;
};

}  // namespace stegocap
