#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "zlab/cli.hpp"

namespace zlab::cli {

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("table row width does not match the header");
  rows.push_back(std::move(row));
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_csv(const Table& t) {
  if (t.columns.empty() || t.rows.empty()) throw std::invalid_argument("empty table");
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
  return out;
}

Table parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Table t;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  t.columns = split_csv_line(line);
  while (std::getline(in, line))
    if (!line.empty()) t.add(split_csv_line(line));
  return t;
}

Json table_to_json(const Table& t) {
  if (t.columns.empty() || t.rows.empty()) throw std::invalid_argument("empty table");
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      char* end = nullptr;
      const double v = std::strtod(r[i].c_str(), &end);
      if (!r[i].empty() && end && *end == '\0' && std::isfinite(v))
        o[t.columns[i]] = v;
      else
        o[t.columns[i]] = r[i];
    }
    rows.push_back(std::move(o));
  }
  return rows;
}

Json manifest_to_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["config"] = m.config;
  j["version"] = m.version;
  j["seed"] = m.seed;
  Json checks = Json::array();
  for (const auto& c : m.checks) {
    Json o;
    o["name"] = c.name;
    // JSON has no NaN; non-finite values are recorded as strings.
    o["value"] = std::isfinite(c.value) ? Json(c.value) : Json(num(c.value));
    o["tolerance"] = c.tolerance;
    o["pass"] = c.pass;
    checks.push_back(std::move(o));
  }
  j["checks"] = std::move(checks);
  j["measured"] = m.measured;
  j["files"] = m.files;
  if (!m.error.empty()) j["error"] = m.error;
  j["elapsed_s"] = m.elapsed_s;
  return j;
}

std::string format_svg(const Plot& p) {
  const double W = 640, H = 480, ml = 80, mr = 20, mt = 40, mb = 60;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto tx = [&](double x) { return p.logx ? std::log10(x) : x; };
  auto ty = [&](double y) { return p.logy ? std::log10(y) : y; };
  for (const auto& s : p.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series x and y differ in length");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if ((p.logx && !(s.x[i] > 0)) || (p.logy && !(s.y[i] > 0)))
        throw std::invalid_argument("log axis needs positive data");
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw std::invalid_argument("empty plot");
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double x) { return ml + (tx(x) - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (ty(y) - y0) / (y1 - y0) * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\">" << p.title << "</text>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << p.xlabel
    << (p.logx ? " (log10)" : "") << "</text>\n";
  o << "<text x=\"20\" y=\"" << H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << H / 2 << ")\">"
    << p.ylabel << (p.logy ? " (log10)" : "") << "</text>\n";
  o << "<text x=\"" << ml << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">" << num(x0) << "</text>\n";
  o << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"middle\">" << num(x1) << "</text>\n";
  o << "<text x=\"" << ml - 6 << "\" y=\"" << H - mb << "\" text-anchor=\"end\">" << num(y0) << "</text>\n";
  o << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4 << "\" text-anchor=\"end\">" << num(y1) << "</text>\n";
  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const auto& s = p.series[k];
    const char* c = colors[k % 5];
    o << "<polyline fill=\"none\" stroke=\"" << c << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) o << (i ? " " : "") << px(s.x[i]) << "," << py(s.y[i]);
    o << "\"/>\n";
    o << "<text x=\"" << W - mr - 4 << "\" y=\"" << mt + 16 * (k + 1) << "\" text-anchor=\"end\" fill=\"" << c
      << "\">" << s.name << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + path);
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot write " + path + ": " + ec.message());
  }
}

void emit_csv(const std::string& path, const Table& t) { write_atomic(path, format_csv(t)); }

void emit_manifest(const std::string& path, const RunManifest& m) {
  write_atomic(path, manifest_to_json(m).dump(2) + "\n");
}

void emit_svg(const std::string& path, const Plot& p) { write_atomic(path, format_svg(p)); }

}  // namespace zlab::cli
