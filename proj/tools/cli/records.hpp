// SPDX-License-Identifier: Apache-2.0
#pragma once

// Pair-file ingestion and record output for the command-line front end.
//
// Input is either CSV with header `pair_id,role,v1,...,vn` (role P or Q, one
// row each per pair) or a JSON document {"pairs":[{"id":..,"p":[..],"q":[..]}]}.
// Output is newline-delimited JSON (default) or CSV.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "unidiv/simplex.hpp"

namespace unidiv::cli {

/// Input problem; `pair_id` is empty when the failure is not tied to one pair.
class InputError : public std::runtime_error {
 public:
  InputError(std::string pair_id, const std::string& message)
      : std::runtime_error(pair_id.empty() ? message : "pair '" + pair_id + "': " + message),
        pair_id_(std::move(pair_id)) {}

  const std::string& pair_id() const noexcept { return pair_id_; }

 private:
  std::string pair_id_;
};

struct RawPair {
  std::string id;
  std::vector<double> p;
  std::vector<double> q;
};

struct LoadedPair {
  std::string id;
  DistributionPair pair;
};

std::vector<RawPair> parse_csv(std::string_view text);
std::vector<RawPair> parse_json(std::string_view text);

/// Picks the format from the first non-blank character ('{' means JSON).
std::vector<RawPair> parse_pairs(std::string_view text);

/// Parses and validates; the result is sorted by pair id.
std::vector<LoadedPair> load_pairs(std::string_view text, bool renormalize);

std::string read_text(const std::string& path);

enum class Format { jsonl, csv };

using Value = std::variant<std::monostate, double, std::string>;

/// An ordered list of named fields; every record of one stream has the same keys.
struct Record {
  std::vector<std::pair<std::string, Value>> fields;

  Record& add(std::string key, Value value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

Value optional_number(std::optional<double> v);

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

  void write(const Record& record);

 private:
  std::ostream& out_;
  Format format_;
  bool header_written_ = false;
};

}  // namespace unidiv::cli
