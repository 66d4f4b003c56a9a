#include "orchard/io.hpp"

#include <fstream>
#include <sstream>

namespace orchard {

namespace {

// Significant lines only: comments and blank lines dropped, \r endings
// tolerated.
std::vector<std::string> significant_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream is(text);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos || line[i] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::uint32_t parse_u32(const std::string& tok, const char* what) {
  try {
    size_t pos = 0;
    unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size() || v > 0xffffffffull) throw std::invalid_argument("");
    return std::uint32_t(v);
  } catch (...) {
    fail(Err::ParseError, std::string("bad ") + what + " '" + tok + "'");
  }
}

std::uint32_t parse_count_header(const std::string& line) {
  auto t = tokens_of(line);
  if (t.size() != 2 || t[0] != "n")
    fail(Err::ParseError, "expected 'n <count>', got '" + line + "'");
  return parse_u32(t[1], "count");
}

}  // namespace

std::string serialize_incidence(const IncidenceStructure& inc) {
  std::ostringstream os;
  os << "n " << inc.n << "\n";
  for (const auto& b : inc.blocks) {
    for (size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i] + 1;
    os << "\n";
  }
  return os.str();
}

IncidenceStructure parse_incidence(const std::string& text) {
  auto lines = significant_lines(text);
  if (lines.empty()) fail(Err::ParseError, "empty incidence file");
  std::uint32_t n = parse_count_header(lines[0]);
  std::vector<std::vector<std::uint32_t>> blocks;
  for (size_t li = 1; li < lines.size(); ++li) {
    std::vector<std::uint32_t> b;
    for (const auto& t : tokens_of(lines[li])) b.push_back(parse_u32(t, "element label"));
    blocks.push_back(std::move(b));
  }
  return make_incidence(n, blocks);
}

std::string serialize_arrangement(const Arrangement& arr) {
  std::ostringstream os;
  os << arr.f->spec.header() << "\n";
  os << "n " << arr.n() << "\n";
  for (size_t j = 0; j < arr.n(); ++j) {
    for (size_t i = 0; i < 3; ++i) {
      if (i) os << " ";
      if (arr.f->finite())
        os << gf_elem_to_string(*arr.f->gf, arr.gcols[j][i]);
      else
        os << qf_elem_to_string(*arr.f->qf, arr.qcols[j][i]);
    }
    os << "\n";
  }
  return os.str();
}

Arrangement parse_arrangement(const std::string& text) {
  auto lines = significant_lines(text);
  if (lines.empty()) fail(Err::ParseError, "empty arrangement file");
  FieldPtr f = make_field(FieldSpec::parse_header(lines[0]));
  if (lines.size() < 2) fail(Err::ParseError, "missing 'n <count>' line");
  std::uint32_t n = parse_count_header(lines[1]);
  if (lines.size() != size_t(n) + 2)
    fail(Err::ParseError, "expected " + std::to_string(n) + " coefficient rows, got " +
                              std::to_string(lines.size() - 2));

  if (f->finite()) {
    std::vector<FVec<GF>> cols(n);
    for (std::uint32_t j = 0; j < n; ++j) {
      auto t = tokens_of(lines[j + 2]);
      if (t.size() != 3)
        fail(Err::ParseError, "row " + std::to_string(j + 1) + " needs 3 literals");
      for (const auto& tok : t) cols[j].push_back(gf_elem_from_string(*f->gf, tok));
    }
    return make_arrangement(std::move(f), std::move(cols));
  }
  std::vector<FVec<QField>> cols(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    auto t = tokens_of(lines[j + 2]);
    if (t.size() != 3)
      fail(Err::ParseError, "row " + std::to_string(j + 1) + " needs 3 literals");
    for (const auto& tok : t) cols[j].push_back(qf_elem_from_string(*f->qf, tok));
  }
  return make_arrangement(std::move(f), std::move(cols));
}

std::string serialize_ideal(const IdealExport& ide) {
  std::ostringstream os;
  os << "variables";
  for (const auto& v : ide.variables) os << " " << v;
  os << "\n";
  os << "factored_saturation " << (ide.factored_saturation ? "true" : "false") << "\n";
  for (const auto& g : ide.generators) os << g << "\n";
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(Err::ParseError, "cannot read '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Err::ParseError, "cannot write '" + path + "'");
  os << text;
  if (!os.flush()) fail(Err::ParseError, "cannot write '" + path + "'");
}

}  // namespace orchard
