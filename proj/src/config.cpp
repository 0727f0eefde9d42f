#include "stegocap/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stegocap {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double strict_double(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument(what + ": '" + text + "' is not a number");
  return v;
}

long long strict_int(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw std::invalid_argument(what + ": '" + text + "' is not an integer");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

// "k1=v1;k2=v2" payloads inside compact detector/channel specs
std::map<std::string, std::string> parse_fields(const std::string& payload,
                                                const std::string& what) {
  std::map<std::string, std::string> kv;
  for (const auto& part : split(payload, ';')) {
    auto item = trim(part);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(what + ": expected key=value, got '" + item + "'");
    kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return kv;
}

FiniteAlphabet alphabet_from_field(const std::string& text) {
  if (text == "pm1") return FiniteAlphabet::pm_one();
  if (text == "pm1z") return FiniteAlphabet::pm_one_zero();
  long long k = strict_int(text, "alphabet");
  if (k < 1) throw std::invalid_argument("alphabet size must be positive");
  return FiniteAlphabet::indexed(static_cast<std::size_t>(k));
}

// splits "(SPEC);(SPEC)" payloads of composite detectors on the top-level ';'
std::pair<std::string, std::string> split_composite(const std::string& payload) {
  int depth = 0;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    char ch = payload[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ';' && depth == 0) {
      auto strip = [](std::string s) {
        s = trim(s);
        if (s.size() >= 2 && s.front() == '(' && s.back() == ')')
          s = trim(s.substr(1, s.size() - 2));
        if (s.empty()) throw std::invalid_argument("empty composite component");
        return s;
      };
      return {strip(payload.substr(0, i)), strip(payload.substr(i + 1))};
    }
  }
  throw std::invalid_argument("composite needs two ';'-separated components");
}

}  // namespace

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected KEY=VALUE");
    auto key = trim(line.substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": empty key");
    if (kv.count(key))
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": duplicate key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kv_text(buf.str());
}

double kv_double(const std::map<std::string, std::string>& kv,
                 const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument("missing required key '" + key + "'");
  return strict_double(it->second, "key '" + key + "'");
}

double kv_double_or(const std::map<std::string, std::string>& kv,
                    const std::string& key, double fallback) {
  return kv.count(key) ? kv_double(kv, key) : fallback;
}

long long kv_int(const std::map<std::string, std::string>& kv,
                 const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument("missing required key '" + key + "'");
  return strict_int(it->second, "key '" + key + "'");
}

long long kv_int_or(const std::map<std::string, std::string>& kv,
                    const std::string& key, long long fallback) {
  return kv.count(key) ? kv_int(kv, key) : fallback;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split(text, ','))
    out.push_back(strict_double(trim(part), "list entry"));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split(text, ','))
    out.push_back(static_cast<int>(strict_int(trim(part), "list entry")));
  return out;
}

Steganalyzer steganalyzer_from_spec(const std::string& raw) {
  auto spec = trim(raw);
  if (spec == "sum") return Steganalyzer::sum_threshold();
  auto colon = spec.find(':');
  auto head = colon == std::string::npos ? spec : spec.substr(0, colon);
  auto payload = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "variance") {
    auto kv = parse_fields(payload, "variance detector");
    double c = kv_double(kv, "c");
    if (kv.count("alphabet"))
      return Steganalyzer::variance_threshold(alphabet_from_field(kv.at("alphabet")),
                                              c);
    return Steganalyzer::variance_threshold(c);
  }
  if (head == "memoryless") {
    auto kv = parse_fields(payload, "memoryless detector");
    auto it = kv.find("permissible");
    if (it == kv.end())
      throw std::invalid_argument("memoryless detector needs permissible=...");
    if (!kv.count("alphabet"))
      throw std::invalid_argument("memoryless detector needs alphabet=...");
    return Steganalyzer::memoryless_lift(alphabet_from_field(kv.at("alphabet")),
                                         parse_int_list(it->second));
  }
  if (head == "vacuous") {
    auto kv = parse_fields(payload, "vacuous detector");
    if (!kv.count("alphabet"))
      throw std::invalid_argument("vacuous detector needs alphabet=...");
    return Steganalyzer::vacuous(alphabet_from_field(kv.at("alphabet")));
  }
  if (head == "meansign") {
    auto dir = trim(payload);
    if (dir == "neg")
      return Steganalyzer::mean_sign(FiniteAlphabet::pm_one(),
                                     MeanSignDirection::triggers_on_negative_sum);
    if (dir == "pos")
      return Steganalyzer::mean_sign(FiniteAlphabet::pm_one(),
                                     MeanSignDirection::triggers_on_positive_sum);
    throw std::invalid_argument("meansign expects 'neg' or 'pos'");
  }
  if (head == "composite") {
    auto [left, right] = split_composite(payload);
    return Steganalyzer::composite(steganalyzer_from_spec(left),
                                   steganalyzer_from_spec(right));
  }
  // anything else is a key=value file
  return steganalyzer_from_kv(parse_kv_file(spec));
}

Steganalyzer steganalyzer_from_kv(const std::map<std::string, std::string>& kv) {
  auto it = kv.find("variant");
  if (it == kv.end())
    throw std::invalid_argument("detector config needs variant=...");
  const auto& variant = it->second;
  if (variant == "sum") return Steganalyzer::sum_threshold();
  if (variant == "variance") {
    double c = kv_double(kv, "c");
    if (kv.count("alphabet"))
      return Steganalyzer::variance_threshold(alphabet_from_field(kv.at("alphabet")),
                                              c);
    return Steganalyzer::variance_threshold(c);
  }
  if (variant == "memoryless") {
    if (!kv.count("alphabet") || !kv.count("permissible"))
      throw std::invalid_argument(
          "memoryless detector needs alphabet=... and permissible=...");
    return Steganalyzer::memoryless_lift(alphabet_from_field(kv.at("alphabet")),
                                         parse_int_list(kv.at("permissible")));
  }
  if (variant == "vacuous") {
    if (!kv.count("alphabet"))
      throw std::invalid_argument("vacuous detector needs alphabet=...");
    return Steganalyzer::vacuous(alphabet_from_field(kv.at("alphabet")));
  }
  if (variant == "meansign") {
    auto dir = kv.count("direction") ? kv.at("direction") : "";
    if (dir == "neg")
      return Steganalyzer::mean_sign(FiniteAlphabet::pm_one(),
                                     MeanSignDirection::triggers_on_negative_sum);
    if (dir == "pos")
      return Steganalyzer::mean_sign(FiniteAlphabet::pm_one(),
                                     MeanSignDirection::triggers_on_positive_sum);
    throw std::invalid_argument("meansign needs direction=neg or direction=pos");
  }
  if (variant == "composite") {
    if (!kv.count("left") || !kv.count("right"))
      throw std::invalid_argument("composite detector needs left=... and right=...");
    return Steganalyzer::composite(steganalyzer_from_spec(kv.at("left")),
                                   steganalyzer_from_spec(kv.at("right")));
  }
  throw std::invalid_argument("unknown detector variant '" + variant + "'");
}

DmcKernel dmc_from_spec(const std::string& raw) {
  auto spec = trim(raw);
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    auto head = spec.substr(0, colon);
    auto payload = trim(spec.substr(colon + 1));
    if (head == "bsc")
      return DmcKernel::bsc(strict_double(payload, "flip probability"));
    if (head == "identity") {
      long long k = strict_int(payload, "alphabet size");
      if (k < 1) throw std::invalid_argument("alphabet size must be positive");
      return DmcKernel::identity(static_cast<std::size_t>(k));
    }
  }
  return dmc_from_file(spec);
}

DmcKernel dmc_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open channel file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::istringstream ls(text);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok)
      row.push_back(strict_double(tok, "line " + std::to_string(line_no)));
    if (!rows.empty() && row.size() != rows[0].size())
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": ragged channel matrix");
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw std::invalid_argument("channel file '" + path + "' has no rows");
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return DmcKernel(rows.size(), rows[0].size(), flat);
}

CsvWriter::CsvWriter(std::ostream& out) : out_(out) {}

void CsvWriter::metadata(const std::string& key, const std::string& value) {
  if (header_written_)
    throw std::logic_error("metadata must precede the header row");
  out_ << "# " << key << ": " << value << "\n";
}

void CsvWriter::metadata(const std::string& key, double value) {
  metadata(key, num(value));
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  header_written_ = true;
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (!header_written_) throw std::logic_error("write the header before rows");
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

std::string CsvWriter::num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string CsvWriter::num(const BigInt& v) { return v.str(); }

}  // namespace stegocap
