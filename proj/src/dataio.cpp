#include "toxspan/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "toxspan/unicode.hpp"

namespace toxspan {

CharSpanSet::CharSpanSet(std::vector<CharIndex> indexes) : indexes_(std::move(indexes)) {
  std::sort(indexes_.begin(), indexes_.end());
  indexes_.erase(std::unique(indexes_.begin(), indexes_.end()), indexes_.end());
}

CharSpanSet::CharSpanSet(std::initializer_list<CharIndex> indexes)
    : CharSpanSet(std::vector<CharIndex>(indexes)) {}

CharSpanSet CharSpanSet::range(CharIndex begin, CharIndex end) {
  std::vector<CharIndex> v;
  for (CharIndex i = begin; i < end; ++i) v.push_back(i);
  return CharSpanSet(std::move(v));
}

bool CharSpanSet::contains(CharIndex i) const {
  return std::binary_search(indexes_.begin(), indexes_.end(), i);
}

bool CharSpanSet::intersects(CharIndex begin, CharIndex end) const {
  auto it = std::lower_bound(indexes_.begin(), indexes_.end(), begin);
  return it != indexes_.end() && *it < end;
}

CharSpanSet CharSpanSet::set_union(const CharSpanSet& other) const {
  CharSpanSet out;
  std::set_union(indexes_.begin(), indexes_.end(), other.indexes_.begin(),
                 other.indexes_.end(), std::back_inserter(out.indexes_));
  return out;
}

CharSpanSet CharSpanSet::set_intersection(const CharSpanSet& other) const {
  CharSpanSet out;
  std::set_intersection(indexes_.begin(), indexes_.end(), other.indexes_.begin(),
                        other.indexes_.end(), std::back_inserter(out.indexes_));
  return out;
}

CharSpanSet CharSpanSet::set_difference(const CharSpanSet& other) const {
  CharSpanSet out;
  std::set_difference(indexes_.begin(), indexes_.end(), other.indexes_.begin(),
                      other.indexes_.end(), std::back_inserter(out.indexes_));
  return out;
}

std::size_t CharSpanSet::intersection_size(const CharSpanSet& other) const {
  std::size_t n = 0;
  auto a = indexes_.begin();
  auto b = other.indexes_.begin();
  while (a != indexes_.end() && b != other.indexes_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++n;
      ++a;
      ++b;
    }
  }
  return n;
}

bool CharSpanSet::is_subset_of(const CharSpanSet& other) const {
  return std::includes(other.indexes_.begin(), other.indexes_.end(),
                       indexes_.begin(), indexes_.end());
}

std::size_t char_length(std::string_view utf8) {
  return unicode::decode_utf8(utf8).size();
}

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

class SpanLiteralParser {
 public:
  explicit SpanLiteralParser(std::string_view s) : s_(s) {}

  bool parse(std::vector<CharIndex>& out) {
    skip_ws();
    if (!eat('[')) return false;
    skip_ws();
    if (eat(']')) return at_end_after_ws();
    while (true) {
      CharIndex v = 0;
      if (!integer(v)) return false;
      out.push_back(v);
      skip_ws();
      if (eat(']')) return at_end_after_ws();
      if (!eat(',')) return false;
      skip_ws();
    }
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && is_ws(s_[pos_])) ++pos_;
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_end_after_ws() {
    skip_ws();
    return pos_ == s_.size();
  }
  bool integer(CharIndex& v) {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) return false;
    pos_ += static_cast<std::size_t>(ptr - first);
    return true;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

std::vector<CsvRecord> read_csv_records(std::istream& in) {
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = data.size();
  while (i < n) {
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool end_of_record = false;
    while (!end_of_record) {
      field.clear();
      if (i < n && data[i] == '"') {
        ++i;
        bool closed = false;
        while (i < n) {
          const char c = data[i];
          if (c == '"') {
            if (i + 1 < n && data[i + 1] == '"') {
              field.push_back('"');
              i += 2;
            } else {
              ++i;
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            field.push_back(c);
            ++i;
          }
        }
        if (!closed) {
          throw DataError("CSV record " + std::to_string(records.size()) + " (line " +
                          std::to_string(rec.line) + "): unterminated quoted field");
        }
        if (i < n && data[i] == '\r') ++i;
        if (i < n && data[i] != ',' && data[i] != '\n') {
          throw DataError("CSV record " + std::to_string(records.size()) + " (line " +
                          std::to_string(rec.line) +
                          "): unexpected character after closing quote");
        }
      } else {
        while (i < n && data[i] != ',' && data[i] != '\n') {
          if (data[i] == '"') {
            throw DataError("CSV record " + std::to_string(records.size()) + " (line " +
                            std::to_string(rec.line) + "): quote inside unquoted field");
          }
          field.push_back(data[i]);
          ++i;
        }
        if (!field.empty() && field.back() == '\r') field.pop_back();
      }
      rec.fields.push_back(field);
      if (i >= n) {
        end_of_record = true;
      } else if (data[i] == ',') {
        ++i;
      } else {  // '\n'
        ++i;
        ++line;
        end_of_record = true;
      }
    }
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty();
    if (!blank) records.push_back(std::move(rec));
  }
  return records;
}

std::size_t parse_id(std::string_view s, std::size_t line, const char* what) {
  std::size_t id = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DataError(std::string(what) + " line " + std::to_string(line) +
                    ": invalid id '" + std::string(s) + "'");
  }
  return id;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

}  // namespace

CharSpanSet parse_span_literal(std::string_view literal) {
  std::vector<CharIndex> v;
  SpanLiteralParser parser(literal);
  if (!parser.parse(v)) {
    throw DataError("malformed span literal '" + std::string(literal) + "'");
  }
  return CharSpanSet(std::move(v));
}

std::string format_span_literal(const CharSpanSet& spans) {
  std::string out = "[";
  bool first = true;
  for (CharIndex i : spans) {
    if (!first) out += ", ";
    out += std::to_string(i);
    first = false;
  }
  out += "]";
  return out;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  for (auto& rec : read_csv_records(in)) out.push_back(std::move(rec.fields));
  return out;
}

std::vector<LabeledPost> parse_dataset(std::istream& in, const ParseOptions& options,
                                       std::vector<std::string>* warnings) {
  auto records = read_csv_records(in);
  if (records.empty()) throw DataError("CSV input is empty (no header)");

  const auto& header = records.front().fields;
  auto column = [&](std::string_view name) -> std::ptrdiff_t {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : std::distance(header.begin(), it);
  };
  const auto text_col = column("text");
  const auto spans_col = column("spans");
  if (text_col < 0) throw DataError("CSV header has no 'text' column");
  if (options.has_gold && spans_col < 0) throw DataError("CSV header has no 'spans' column");

  std::vector<LabeledPost> posts;
  posts.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t id = r - 1;
    const std::string where =
        "CSV record " + std::to_string(r) + " (line " + std::to_string(rec.line) + ")";
    if (rec.fields.size() != header.size()) {
      throw DataError(where + ": expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(rec.fields.size()));
    }
    LabeledPost post;
    post.id = id;
    post.text = rec.fields[static_cast<std::size_t>(text_col)];
    if (post.text.empty()) {
      if (!options.lenient) throw DataError(where + ": empty text");
      if (warnings) warnings->push_back(where + ": empty text");
    }
    if (options.has_gold) {
      CharSpanSet gold;
      try {
        gold = parse_span_literal(rec.fields[static_cast<std::size_t>(spans_col)]);
      } catch (const DataError& e) {
        throw DataError(where + ": " + e.what());
      }
      const auto len = static_cast<CharIndex>(char_length(post.text));
      const bool in_range =
          gold.empty() || (gold.indexes().front() >= 0 && gold.indexes().back() < len);
      if (!in_range) {
        const std::string msg = where + ": span index outside [0, " + std::to_string(len) + ")";
        if (!options.lenient) throw DataError(msg);
        std::vector<CharIndex> kept;
        for (CharIndex i : gold) {
          if (i >= 0 && i < len) kept.push_back(i);
        }
        gold = CharSpanSet(std::move(kept));
        if (warnings) warnings->push_back(msg + "; dropped out-of-range indexes");
      }
      post.gold = std::move(gold);
    }
    posts.push_back(std::move(post));
  }
  return posts;
}

std::vector<LabeledPost> load_dataset(const std::string& path, const ParseOptions& options,
                                      std::vector<std::string>* warnings) {
  auto in = open_input(path);
  try {
    return parse_dataset(in, options, warnings);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

namespace {

std::string csv_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_dataset(const std::vector<LabeledPost>& posts, std::ostream& out) {
  out << "spans,text\n";
  for (const auto& p : posts) {
    out << csv_quote(format_span_literal(p.gold)) << ',' << csv_quote(p.text) << '\n';
  }
}

void write_predictions(const std::vector<PostPrediction>& preds, std::ostream& out) {
  for (const auto& p : preds) {
    out << p.id << '\t' << format_span_literal(p.spans) << '\n';
  }
}

std::vector<PostPrediction> parse_predictions(std::istream& in) {
  std::vector<PostPrediction> preds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("prediction line " + std::to_string(lineno) + ": missing tab separator");
    }
    PostPrediction p;
    p.id = parse_id(std::string_view(line).substr(0, tab), lineno, "prediction");
    try {
      p.spans = parse_span_literal(std::string_view(line).substr(tab + 1));
    } catch (const DataError& e) {
      throw DataError("prediction line " + std::to_string(lineno) + ": " + e.what());
    }
    preds.push_back(std::move(p));
  }
  return preds;
}

std::vector<PostPrediction> load_predictions(const std::string& path) {
  auto in = open_input(path);
  try {
    return parse_predictions(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::map<std::size_t, double> parse_scores(std::istream& in) {
  std::map<std::size_t, double> scores;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("score line " + std::to_string(lineno) + ": missing tab separator");
    }
    const std::size_t id = parse_id(std::string_view(line).substr(0, tab), lineno, "score");
    const std::string value = line.substr(tab + 1);
    double p = 0.0;
    std::size_t used = 0;
    try {
      p = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw DataError("score line " + std::to_string(lineno) + ": '" + value +
                      "' is not a probability in [0,1]");
    }
    if (!scores.emplace(id, p).second) {
      throw DataError("score line " + std::to_string(lineno) + ": duplicate id " +
                      std::to_string(id));
    }
  }
  return scores;
}

std::map<std::size_t, double> load_scores(const std::string& path) {
  auto in = open_input(path);
  try {
    return parse_scores(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace toxspan
