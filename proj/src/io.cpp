#include "compforms/io.hpp"

#include <sstream>

namespace compforms {

std::string write_algebra(const FormedAlgebra& F) {
  const Algebra& A = F.algebra;
  std::ostringstream out;
  out << A.ring()->name() << ", " << A.rank() << ", " << F.degree() << "\n";
  out << "unit:";
  for (std::size_t i = 0; i < A.rank(); ++i) out << (i ? "; " : " ") << A.unit()[i].to_string();
  out << "\nlabels:";
  for (std::size_t i = 0; i < A.rank(); ++i) out << " " << A.label(i);
  out << "\ntag: " << F.tag << "\n";
  for (const auto& [k, v] : F.params) out << "param: " << k << "=" << v << "\n";
  out << "nondegenerate: " << (F.expect_nondegenerate ? "yes" : "no") << "\n";
  for (const auto& e : A.entries()) out << e.i << " " << e.j << " " << e.k << " " << e.coeff.to_string() << "\n";
  out << "form: " << F.form.poly.to_string() << "\n";
  return out.str();
}

namespace {

std::string_view strip_prefix(std::string_view line, std::string_view prefix) {
  if (line.substr(0, prefix.size()) != prefix)
    throw std::invalid_argument("expected '" + std::string(prefix) + "' line, got '" + std::string(line) + "'");
  line.remove_prefix(prefix.size());
  while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  return line;
}

std::size_t parse_index(std::string_view s) {
  std::size_t v = 0;
  if (s.empty()) throw std::invalid_argument("expected an index");
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("invalid index '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::size_t>(ch - '0');
  }
  return v;
}

}  // namespace

FormedAlgebra read_algebra(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.size() < 3) throw std::invalid_argument("algebra file is truncated");
  // The ring name may itself contain commas, so split on the last two.
  std::string_view header = lines[0];
  auto c2 = header.rfind(", ");
  auto c1 = c2 == std::string_view::npos ? c2 : header.rfind(", ", c2 - 1);
  if (c1 == std::string_view::npos) throw std::invalid_argument("malformed header '" + std::string(header) + "'");
  Ring r = parse_ring(header.substr(0, c1));
  std::size_t n = parse_index(header.substr(c1 + 2, c2 - c1 - 2));
  unsigned d = static_cast<unsigned>(parse_index(header.substr(c2 + 2)));

  std::size_t pos = 1;
  Vec unit;
  std::string_view u = strip_prefix(lines[pos++], "unit:");
  while (true) {
    auto semi = u.find("; ");
    unit.push_back(parse_scalar(r, u.substr(0, semi)));
    if (semi == std::string_view::npos) break;
    u.remove_prefix(semi + 2);
  }
  std::vector<std::string> labels;
  std::string tag;
  std::vector<std::pair<std::string, std::string>> params;
  bool nondegenerate = true;
  if (pos < lines.size() && lines[pos].substr(0, 7) == "labels:") {
    std::istringstream ls{std::string(strip_prefix(lines[pos++], "labels:"))};
    for (std::string l; ls >> l;) labels.push_back(l);
  }
  if (pos < lines.size() && lines[pos].substr(0, 4) == "tag:") tag = std::string(strip_prefix(lines[pos++], "tag:"));
  while (pos < lines.size() && lines[pos].substr(0, 6) == "param:") {
    std::string_view p = strip_prefix(lines[pos++], "param:");
    auto eq = p.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("malformed param line");
    params.emplace_back(std::string(p.substr(0, eq)), std::string(p.substr(eq + 1)));
  }
  if (pos < lines.size() && lines[pos].substr(0, 14) == "nondegenerate:")
    nondegenerate = strip_prefix(lines[pos++], "nondegenerate:") == "yes";

  std::vector<Algebra::Entry> entries;
  for (; pos < lines.size() && lines[pos].substr(0, 5) != "form:"; ++pos) {
    std::string_view line = lines[pos];
    std::size_t idx[3];
    for (auto& x : idx) {
      auto sp = line.find(' ');
      if (sp == std::string_view::npos) throw std::invalid_argument("malformed structure constant line");
      x = parse_index(line.substr(0, sp));
      line.remove_prefix(sp + 1);
    }
    entries.push_back(Algebra::Entry{idx[0], idx[1], idx[2], parse_scalar(r, line)});
  }
  if (pos >= lines.size()) throw std::invalid_argument("missing form line");
  Scalar poly = parse_scalar(coordinate_ring(r, n), strip_prefix(lines[pos], "form:"));
  FormedAlgebra F = make_formed(Algebra::from_entries(r, n, entries, std::move(unit), std::move(labels)),
                                make_form(r, n, d, poly), tag, params);
  F.expect_nondegenerate = nondegenerate;
  return F;
}

}  // namespace compforms
