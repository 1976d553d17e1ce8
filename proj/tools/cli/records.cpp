// SPDX-License-Identifier: Apache-2.0
#include "cli/records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "unidiv/error.hpp"
#include "unidiv/registry.hpp"

namespace unidiv::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view token, const std::string& pair_id) {
  // from_chars rejects a leading '+', which some spreadsheet exports emit.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw InputError(pair_id, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

struct PartialPair {
  std::optional<std::vector<double>> p;
  std::optional<std::vector<double>> q;
};

std::vector<RawPair> finish(std::map<std::string, PartialPair>& partial) {
  std::vector<RawPair> out;
  for (auto& [id, pp] : partial) {
    if (!pp.p) throw InputError(id, "missing role P");
    if (!pp.q) throw InputError(id, "missing role Q");
    if (pp.p->size() != pp.q->size()) {
      throw InputError(id, "P has " + std::to_string(pp.p->size()) + " components, Q has " +
                               std::to_string(pp.q->size()));
    }
    out.push_back({id, std::move(*pp.p), std::move(*pp.q)});
  }
  return out;
}

}  // namespace

std::vector<RawPair> parse_csv(std::string_view text) {
  std::map<std::string, PartialPair> partial;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto line = trim(text.substr(start, end - start));
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (!header_seen) {
      if (cells.size() < 3 || cells[0] != "pair_id" || cells[1] != "role") {
        throw InputError("", "CSV header must start with 'pair_id,role,v1'");
      }
      header_seen = true;
      continue;
    }
    const std::string id(cells[0]);
    if (id.empty()) throw InputError("", "line " + std::to_string(line_no) + ": empty pair_id");
    if (cells.size() < 3) throw InputError(id, "line " + std::to_string(line_no) + ": no values");
    std::vector<double> values;
    values.reserve(cells.size() - 2);
    for (std::size_t i = 2; i < cells.size(); ++i) values.push_back(parse_number(cells[i], id));
    auto& slot = partial[id];
    if (cells[1] == "P") {
      if (slot.p) throw InputError(id, "role P given twice");
      slot.p = std::move(values);
    } else if (cells[1] == "Q") {
      if (slot.q) throw InputError(id, "role Q given twice");
      slot.q = std::move(values);
    } else {
      throw InputError(id, "role must be P or Q, got '" + std::string(cells[1]) + "'");
    }
  }
  if (!header_seen) throw InputError("", "empty input");
  return finish(partial);
}

std::vector<RawPair> parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array()) {
    throw InputError("", "JSON input must be an object with a \"pairs\" array");
  }
  std::map<std::string, PartialPair> partial;
  std::size_t index = 0;
  for (const auto& item : doc["pairs"]) {
    std::string id = "#" + std::to_string(index++);
    if (!item.is_object()) throw InputError(id, "pair entry is not an object");
    if (item.contains("id")) {
      const auto& raw_id = item["id"];
      id = raw_id.is_string() ? raw_id.get<std::string>() : raw_id.dump();
    }
    if (partial.count(id)) throw InputError(id, "duplicate pair id");
    auto& slot = partial[id];
    for (const char* role : {"p", "q"}) {
      if (!item.contains(role) || !item[role].is_array()) {
        throw InputError(id, std::string("missing array \"") + role + "\"");
      }
      std::vector<double> values;
      for (const auto& v : item[role]) {
        if (!v.is_number()) throw InputError(id, std::string("non-numeric entry in \"") + role + "\"");
        values.push_back(v.get<double>());
      }
      (role[0] == 'p' ? slot.p : slot.q) = std::move(values);
    }
  }
  return finish(partial);
}

std::vector<RawPair> parse_pairs(std::string_view text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_json(body);
  return parse_csv(text);
}

std::vector<LoadedPair> load_pairs(std::string_view text, bool renormalize) {
  std::vector<LoadedPair> out;
  for (auto& raw : parse_pairs(text)) {
    try {
      out.push_back({raw.id, make_pair(raw.p, raw.q, renormalize)});
    } catch (const Error& e) {
      throw InputError(raw.id, e.what());
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Value optional_number(std::optional<double> v) {
  if (v) return *v;
  return std::monostate{};
}

namespace {

void write_json_value(std::ostream& out, const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (std::isfinite(*d)) {
      out << format_double(*d);
    } else {
      out << "null";
    }
  } else if (const auto* s = std::get_if<std::string>(&v)) {
    out << nlohmann::json(*s).dump();
  } else {
    out << "null";
  }
}

void write_csv_cell(std::ostream& out, std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    out << text;
    return;
  }
  out << '"';
  for (char c : text) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

void RecordWriter::write(const Record& record) {
  if (format_ == Format::jsonl) {
    out_ << '{';
    bool first = true;
    for (const auto& [key, value] : record.fields) {
      if (!first) out_ << ',';
      first = false;
      out_ << nlohmann::json(key).dump() << ':';
      write_json_value(out_, value);
    }
    out_ << "}\n";
    return;
  }
  if (!header_written_) {
    for (std::size_t i = 0; i < record.fields.size(); ++i) {
      if (i) out_ << ',';
      write_csv_cell(out_, record.fields[i].first);
    }
    out_ << '\n';
    header_written_ = true;
  }
  for (std::size_t i = 0; i < record.fields.size(); ++i) {
    if (i) out_ << ',';
    const auto& v = record.fields[i].second;
    if (const auto* d = std::get_if<double>(&v)) {
      out_ << format_double(*d);
    } else if (const auto* s = std::get_if<std::string>(&v)) {
      write_csv_cell(out_, *s);
    }
  }
  out_ << '\n';
}

}  // namespace unidiv::cli
