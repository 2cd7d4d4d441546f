#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toxspan {

// Raised for malformed input files. The message names the offending record
// or line; CSV records are counted from 0 with the header as record 0.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using CharIndex = std::int64_t;

// A set of character positions, kept sorted and deduplicated. Negative
// indexes are representable so that faulty submissions can still be scored.
class CharSpanSet {
 public:
  CharSpanSet() = default;
  explicit CharSpanSet(std::vector<CharIndex> indexes);
  CharSpanSet(std::initializer_list<CharIndex> indexes);

  // Half-open range [begin, end).
  static CharSpanSet range(CharIndex begin, CharIndex end);

  const std::vector<CharIndex>& indexes() const { return indexes_; }
  std::size_t size() const { return indexes_.size(); }
  bool empty() const { return indexes_.empty(); }
  bool contains(CharIndex i) const;
  // True if any index falls in [begin, end).
  bool intersects(CharIndex begin, CharIndex end) const;

  auto begin() const { return indexes_.begin(); }
  auto end() const { return indexes_.end(); }

  CharSpanSet set_union(const CharSpanSet& other) const;
  CharSpanSet set_intersection(const CharSpanSet& other) const;
  CharSpanSet set_difference(const CharSpanSet& other) const;
  std::size_t intersection_size(const CharSpanSet& other) const;
  bool is_subset_of(const CharSpanSet& other) const;

  friend bool operator==(const CharSpanSet&, const CharSpanSet&) = default;

 private:
  std::vector<CharIndex> indexes_;
};

struct LabeledPost {
  std::size_t id = 0;
  std::string text;  // UTF-8
  CharSpanSet gold;
};

struct PostPrediction {
  std::size_t id = 0;
  CharSpanSet spans;

  friend bool operator==(const PostPrediction&, const PostPrediction&) = default;
};

struct ParseOptions {
  bool has_gold = true;
  // Drop out-of-range gold indexes with a warning instead of failing.
  bool lenient = false;
};

// Number of characters (code points) in a UTF-8 string.
std::size_t char_length(std::string_view utf8);

// Parses a bracketed integer list such as "[7, 8, 9]".
CharSpanSet parse_span_literal(std::string_view literal);
std::string format_span_literal(const CharSpanSet& spans);

// Reads RFC 4180 CSV records (quoted fields may hold commas, doubled quotes
// and newlines). The first record is returned as-is, including the header.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

// Parses the shared-task CSV (`spans`,`text` columns, or `text` only).
// Warnings produced in lenient mode are appended to `warnings` if given.
std::vector<LabeledPost> parse_dataset(std::istream& in,
                                       const ParseOptions& options = {},
                                       std::vector<std::string>* warnings = nullptr);
std::vector<LabeledPost> load_dataset(const std::string& path,
                                      const ParseOptions& options = {},
                                      std::vector<std::string>* warnings = nullptr);

void write_dataset(const std::vector<LabeledPost>& posts, std::ostream& out);

// Prediction file: one `<id>\t[<i1>, <i2>, ...]` line per post.
void write_predictions(const std::vector<PostPrediction>& preds, std::ostream& out);
std::vector<PostPrediction> parse_predictions(std::istream& in);
std::vector<PostPrediction> load_predictions(const std::string& path);

// External classifier scores: one `<id>\t<probability>` line per post.
std::map<std::size_t, double> parse_scores(std::istream& in);
std::map<std::size_t, double> load_scores(const std::string& path);

}  // namespace toxspan
