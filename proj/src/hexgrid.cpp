#include "hags/hexgrid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace hags {

std::string to_string(HexCoord c) {
  return "(" + std::to_string(c.q) + "," + std::to_string(c.r) + ")";
}

std::array<HexCoord, 6> neighbors(HexCoord c) {
  std::array<HexCoord, 6> out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = c + kDirectionOffsets[i];
  return out;
}

bool is_connected(std::span<const HexCoord> cells) {
  if (cells.empty()) return false;
  std::set<HexCoord> remaining(cells.begin(), cells.end());
  std::vector<HexCoord> stack{*remaining.begin()};
  remaining.erase(remaining.begin());
  while (!stack.empty()) {
    HexCoord c = stack.back();
    stack.pop_back();
    for (HexCoord n : neighbors(c)) {
      if (auto it = remaining.find(n); it != remaining.end()) {
        remaining.erase(it);
        stack.push_back(n);
      }
    }
  }
  return remaining.empty();
}

bool is_symbol_token(std::string_view s) {
  if (s.empty() || !std::isalnum(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '\'';
  });
}

namespace {

bool cell_less(const Cell& a, const Cell& b) { return a.at < b.at; }

}  // namespace

HexPicture::HexPicture(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw PictureError(PictureErrc::kEmpty, "picture has no cells");
  std::sort(cells_.begin(), cells_.end(), cell_less);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (c.symbol == kBlank)
      throw PictureError(PictureErrc::kBlankSymbol, "blank '#' stored at " + to_string(c.at));
    if (!is_symbol_token(c.symbol))
      throw PictureError(PictureErrc::kBadSymbol, "bad symbol '" + c.symbol + "' at " + to_string(c.at));
    if (i > 0 && cells_[i - 1].at == c.at)
      throw PictureError(PictureErrc::kDuplicateCell, "duplicate cell " + to_string(c.at));
  }
  auto cs = coords();
  if (!is_connected(cs)) throw PictureError(PictureErrc::kDisconnected, "picture is not connected");
}

HexPicture HexPicture::from_trusted(std::vector<Cell> sorted_cells) {
  HexPicture p;
  p.cells_ = std::move(sorted_cells);
  return p;
}

const Symbol* HexPicture::at(HexCoord c) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), c,
                             [](const Cell& cell, HexCoord key) { return cell.at < key; });
  if (it == cells_.end() || it->at != c) return nullptr;
  return &it->symbol;
}

std::vector<HexCoord> HexPicture::coords() const {
  std::vector<HexCoord> out;
  out.reserve(cells_.size());
  for (const Cell& c : cells_) out.push_back(c.at);
  return out;
}

HexCoord HexPicture::min_corner() const {
  HexCoord m{INT_MAX, INT_MAX};
  for (const Cell& c : cells_) {
    m.q = std::min(m.q, c.at.q);
    m.r = std::min(m.r, c.at.r);
  }
  return m;
}

HexPicture HexPicture::translated(HexCoord delta) const {
  // Translation preserves the row-major order.
  std::vector<Cell> out = cells_;
  for (Cell& c : out) c.at = c.at + delta;
  return from_trusted(std::move(out));
}

bool operator<(const HexPicture& a, const HexPicture& b) {
  return std::lexicographical_compare(
      a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(), [](const Cell& x, const Cell& y) {
        if (x.at != y.at) return x.at < y.at;
        return x.symbol < y.symbol;
      });
}

CanonicalPicture canonicalize(const HexPicture& p) {
  HexCoord m = p.min_corner();
  if (m == HexCoord{0, 0}) return CanonicalPicture(p);
  return CanonicalPicture(p.translated(HexCoord{0, 0} - m));
}

std::size_t PictureHash::operator()(const HexPicture& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 0x100000001b3ULL; };
  for (const Cell& c : p.cells()) {
    mix(static_cast<std::size_t>(static_cast<unsigned>(c.at.q)));
    mix(static_cast<std::size_t>(static_cast<unsigned>(c.at.r)) << 1);
    mix(std::hash<std::string>{}(c.symbol));
  }
  return h;
}

std::string to_record(const HexPicture& p) {
  std::string out;
  for (const Cell& c : p.cells()) {
    if (!out.empty()) out += ';';
    out += std::to_string(c.at.q);
    out += ',';
    out += std::to_string(c.at.r);
    out += ':';
    out += c.symbol;
  }
  return out;
}

bool listing_less(const CanonicalPicture& a, const CanonicalPicture& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return to_record(a.picture()) < to_record(b.picture());
}

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw PictureError(PictureErrc::kBadSymbol, "bad integer '" + std::string(s) + "' in record");
  return v;
}

constexpr std::string_view kGlyphPool =
    "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace

HexPicture parse_record(std::string_view text) {
  std::vector<Cell> cells;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    auto comma = item.find(',');
    auto colon = item.find(':');
    if (comma == std::string_view::npos || colon == std::string_view::npos || colon < comma)
      throw PictureError(PictureErrc::kBadSymbol, "malformed record item '" + std::string(item) + "'");
    cells.push_back({{parse_int(item.substr(0, comma)), parse_int(item.substr(comma + 1, colon - comma - 1))},
                     std::string(item.substr(colon + 1))});
    pos = end + 1;
  }
  return HexPicture(std::move(cells));
}

std::string render_text(const HexPicture& p) {
  std::set<char> single;
  std::set<std::string> multi;
  for (const Cell& c : p.cells()) {
    if (c.symbol.size() == 1)
      single.insert(c.symbol.front());
    else
      multi.insert(c.symbol);
  }
  std::map<std::string, char> glyph;
  std::size_t next = 0;
  for (const std::string& s : multi) {
    while (next < kGlyphPool.size() && single.contains(kGlyphPool[next])) ++next;
    if (next == kGlyphPool.size())
      throw PictureError(PictureErrc::kBadLegend, "too many distinct symbols to render");
    glyph[s] = kGlyphPool[next++];
  }

  int r_min = INT_MAX, r_max = INT_MIN, col_min = INT_MAX;
  for (const Cell& c : p.cells()) {
    r_min = std::min(r_min, c.at.r);
    r_max = std::max(r_max, c.at.r);
    col_min = std::min(col_min, 2 * c.at.q + c.at.r);
  }
  std::vector<std::string> rows(static_cast<std::size_t>(r_max - r_min + 1));
  for (const Cell& c : p.cells()) {
    auto& row = rows[static_cast<std::size_t>(c.at.r - r_min)];
    auto col = static_cast<std::size_t>(2 * c.at.q + c.at.r - col_min);
    if (row.size() <= col) row.resize(col + 1, ' ');
    row[col] = c.symbol.size() == 1 ? c.symbol.front() : glyph.at(c.symbol);
  }
  std::string out;
  for (const auto& row : rows) out += row + "\n";
  if (!glyph.empty()) {
    out += "--\n";
    std::vector<std::pair<char, std::string>> legend;
    for (const auto& [sym, g] : glyph) legend.emplace_back(g, sym);
    std::sort(legend.begin(), legend.end());
    for (const auto& [g, sym] : legend) out += std::string(1, g) + "=" + sym + "\n";
  }
  return out;
}

CanonicalPicture parse_picture_text(std::string_view text) {
  auto lines = split_lines(text);
  std::map<char, std::string> legend;
  if (auto sep = std::find(lines.begin(), lines.end(), "--"); sep != lines.end()) {
    for (auto it = std::next(sep); it != lines.end(); ++it) {
      if (it->empty()) continue;
      if (it->size() < 3 || (*it)[1] != '=' || !is_symbol_token(it->substr(2)))
        throw PictureError(PictureErrc::kBadLegend, "bad legend line '" + *it + "'");
      legend[(*it)[0]] = it->substr(2);
    }
    lines.erase(sep, lines.end());
  }

  std::vector<Cell> cells;
  int parity = -1;
  for (std::size_t row = 0; row < lines.size(); ++row) {
    const std::string& line = lines[row];
    for (std::size_t col = 0; col < line.size(); ++col) {
      char ch = line[col];
      if (ch == ' ') continue;
      std::string where = "row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
      if (ch == '#') throw PictureError(PictureErrc::kBlankSymbol, "blank '#' written at " + where);
      int r = static_cast<int>(row);
      int c = static_cast<int>(col);
      int par = ((c - r) % 2 + 2) % 2;
      if (parity < 0) parity = par;
      if (par != parity) throw PictureError(PictureErrc::kParity, "stagger parity violated at " + where);
      std::string sym;
      if (auto it = legend.find(ch); it != legend.end())
        sym = it->second;
      else if (std::isalnum(static_cast<unsigned char>(ch)))
        sym = std::string(1, ch);
      else
        throw PictureError(PictureErrc::kBadSymbol, std::string("bad character '") + ch + "' at " + where);
      cells.push_back({{(c - r - parity) / 2, r}, std::move(sym)});
    }
  }
  if (cells.empty()) throw PictureError(PictureErrc::kEmpty, "picture text has no cells");
  return canonicalize(HexPicture(std::move(cells)));
}

}  // namespace hags
