#include "treekta/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "treekta/error.hpp"

namespace treekta {

using nlohmann::json;

namespace {

ColumnRef column_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0))
    return static_cast<std::size_t>(j.get<long long>());
  throw DataError("schema column must be a name or a non-negative index");
}

json column_to_json(const ColumnRef& c) {
  if (const auto* name = std::get_if<std::string>(&c)) return *name;
  return std::get<std::size_t>(c);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "?";
}

std::size_t resolve(const ColumnRef& ref, const std::vector<std::string>& header, std::size_t width,
                    const std::string& file) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) {
    if (*index >= width)
      throw DataError(file + ": column index " + std::to_string(*index) + " out of range");
    return *index;
  }
  const auto& name = std::get<std::string>(ref);
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError(file + ": no column named '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

DatasetSchema schema_from_json(const json& doc) {
  try {
    DatasetSchema schema;
    if (doc.contains("target") && !doc.at("target").is_null())
      schema.target = column_from_json(doc.at("target"));
    if (doc.contains("features")) {
      const json& f = doc.at("features");
      if (f.is_array()) {
        std::vector<ColumnRef> cols;
        for (const json& c : f) cols.push_back(column_from_json(c));
        schema.features = std::move(cols);
      } else if (!(f.is_string() && f.get<std::string>() == "all") && !f.is_null()) {
        throw DataError("schema 'features' must be \"all\" or a list");
      }
    }
    if (doc.contains("delimiter")) {
      const auto d = doc.at("delimiter").get<std::string>();
      if (d.size() != 1) throw DataError("schema delimiter must be a single character");
      schema.delimiter = d[0];
    }
    if (doc.contains("has_header")) schema.has_header = doc.at("has_header").get<bool>();
    if (doc.contains("na_policy")) {
      const auto p = doc.at("na_policy").get<std::string>();
      if (p == "drop_row") {
        schema.na_policy = NaPolicy::drop_row;
      } else if (p == "error") {
        schema.na_policy = NaPolicy::error;
      } else {
        throw DataError("schema na_policy must be \"drop_row\" or \"error\"");
      }
    }
    return schema;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed schema: ") + e.what());
  }
}

json schema_to_json(const DatasetSchema& schema) {
  json doc;
  doc["target"] = schema.target ? column_to_json(*schema.target) : json(nullptr);
  if (schema.features) {
    json cols = json::array();
    for (const auto& c : *schema.features) cols.push_back(column_to_json(c));
    doc["features"] = cols;
  } else {
    doc["features"] = "all";
  }
  doc["delimiter"] = std::string(1, schema.delimiter);
  doc["has_header"] = schema.has_header;
  doc["na_policy"] = schema.na_policy == NaPolicy::drop_row ? "drop_row" : "error";
  return doc;
}

DatasetSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema '" + path.string() + "'");
  try {
    return schema_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Dataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema) {
  const std::string file = path.string();
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + file + "'");

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::vector<std::string> header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_line(line, schema.delimiter);
    for (auto& f : fields) f = trim(std::move(f));
    if (schema.has_header && header.empty()) {
      header = std::move(fields);
      continue;
    }
    rows.push_back(std::move(fields));
    line_numbers.push_back(line_no);
  }
  const std::size_t width = !header.empty() ? header.size() : (rows.empty() ? 0 : rows[0].size());
  if (width == 0) throw DataError(file + ": no columns");
  if (header.empty())
    for (std::size_t c = 0; c < width; ++c) header.push_back("c" + std::to_string(c + 1));

  const std::size_t target = schema.target ? resolve(*schema.target, header, width, file) : width - 1;
  std::vector<std::size_t> features;
  if (schema.features) {
    for (const auto& ref : *schema.features) features.push_back(resolve(ref, header, width, file));
  } else {
    for (std::size_t c = 0; c < width; ++c)
      if (c != target) features.push_back(c);
  }
  if (std::find(features.begin(), features.end(), target) != features.end())
    throw DataError(file + ": target column is also listed as a feature");
  if (features.empty()) throw DataError(file + ": no feature columns");

  std::vector<double> values;
  Vector y;
  std::vector<double> row_values(width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& fields = rows[r];
    const std::string where = file + ": line " + std::to_string(line_numbers[r]);
    if (fields.size() != width)
      throw DataError(where + " has " + std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(width));
    bool missing = false;
    auto parse = [&](std::size_t c) {
      const std::string& cell = fields[c];
      if (is_missing(cell)) {
        if (schema.na_policy == NaPolicy::error)
          throw DataError(where + ", column " + std::to_string(c + 1) + " (" + header[c] +
                          "): missing value");
        missing = true;
        return;
      }
      double v = 0.0;
      const char* begin = cell.data();
      const char* end = begin + cell.size();
      if (*begin == '+') ++begin;
      auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc() || ptr != end)
        throw DataError(where + ", column " + std::to_string(c + 1) + " (" + header[c] +
                        "): cannot parse '" + cell + "' as a number");
      row_values[c] = v;
    };
    parse(target);
    for (std::size_t c : features) parse(c);
    if (missing) continue;
    for (std::size_t c : features) values.push_back(row_values[c]);
    y.push_back(row_values[target]);
  }
  if (y.empty()) throw DataError(file + ": no usable rows");

  std::vector<std::string> names;
  for (std::size_t c : features) names.push_back(header[c]);
  Matrix x(y.size(), features.size(), std::move(values));
  return Dataset(std::move(x), std::move(y), std::move(names));
}

void write_csv(const std::filesystem::path& path, const Dataset& data, const std::string& target_name) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  for (std::size_t j = 0; j < data.p(); ++j)
    out << (data.feature_names.empty() ? "x" + std::to_string(j + 1) : data.feature_names[j]) << ',';
  out << target_name << '\n';
  char buf[32];
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t j = 0; j < data.p(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", data.x(i, j));
      out << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", data.y[i]);
    out << buf << '\n';
  }
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

Dataset subsample(const Dataset& data, std::size_t n_sub, Rng& rng) {
  if (n_sub > data.n())
    throw InvalidArgument("cannot subsample " + std::to_string(n_sub) + " rows from " +
                          std::to_string(data.n()));
  const auto rows = sample_without_replacement(rng, data.n(), n_sub);
  return data.select(rows);
}

}  // namespace treekta
