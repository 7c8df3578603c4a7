#include "khlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "khlab/error.hpp"

namespace khlab {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorKind::Parse, "parse error: " + what);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

long get_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) parse_error(where + " must be an integer");
  return v.get<long>();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "parse error: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<LatticePoint> parse_points_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("points"))
    parse_error("expected an object with a \"points\" array");
  const json& pts = doc["points"];
  if (!pts.is_array()) parse_error("\"points\" must be an array");
  if (pts.empty()) parse_error("\"points\" is empty");
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!pts[i].is_array()) parse_error(where + " must be an array");
    LatticePoint p;
    for (std::size_t j = 0; j < pts[i].size(); ++j)
      p.push_back(get_integer(pts[i][j], where + "[" + std::to_string(j) + "]"));
    if (!out.empty() && p.size() != out.front().size())
      parse_error(where + " has dimension " + std::to_string(p.size()) + ", expected " +
                  std::to_string(out.front().size()));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LatticePoint> parse_points_text(const std::string& text) {
  std::vector<LatticePoint> out;
  std::istringstream in(text);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    LatticePoint p;
    std::size_t start = 0;
    for (int field = 1;; ++field) {
      const std::size_t comma = body.find(',', start);
      const std::string_view tok =
          trim(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start));
      Coord v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
        parse_error("line " + std::to_string(lineno) + ", field " + std::to_string(field) +
                    ": '" + std::string(tok) + "' is not an integer");
      p.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!out.empty() && p.size() != out.front().size())
      parse_error("line " + std::to_string(lineno) + ": dimension " + std::to_string(p.size()) +
                  ", expected " + std::to_string(out.front().size()));
    out.push_back(std::move(p));
  }
  if (out.empty()) parse_error("no points in input");
  return out;
}

std::vector<LatticePoint> read_points_file(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
    return parse_points_json(text);
  return parse_points_text(text);
}

CongruenceSystem parse_system_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_error("expected an object with n, moduli and rows");
  for (const char* key : {"n", "moduli", "rows"})
    if (!doc.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  CongruenceSystem sys;
  sys.n = static_cast<int>(get_integer(doc["n"], "n"));
  if (!doc["moduli"].is_array()) parse_error("\"moduli\" must be an array");
  for (std::size_t i = 0; i < doc["moduli"].size(); ++i)
    sys.moduli.push_back(get_integer(doc["moduli"][i], "moduli[" + std::to_string(i) + "]"));
  if (!doc["rows"].is_array()) parse_error("\"rows\" must be an array");
  for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
    const json& row = doc["rows"][i];
    const std::string where = "rows[" + std::to_string(i) + "]";
    if (!row.is_array()) parse_error(where + " must be an array");
    std::vector<long> r;
    for (std::size_t j = 0; j < row.size(); ++j)
      r.push_back(get_integer(row[j], where + "[" + std::to_string(j) + "]"));
    sys.rows.push_back(std::move(r));
  }
  try {
    sys.validate();
  } catch (const Error& e) {
    parse_error(e.what());
  }
  return sys;
}

CongruenceSystem read_system_file(const std::string& path) {
  return parse_system_json(read_file(path));
}

}  // namespace khlab
