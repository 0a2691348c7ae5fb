#include "hexlimit/patch_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace hexlimit {

namespace {

std::string bit_str(int b) { return b < 0 ? "-" : std::to_string(b); }

int parse_bit(const std::string& tok, int line_no) {
  if (tok == "-") return -1;
  if (tok == "0") return 0;
  if (tok == "1") return 1;
  throw parse_error("line " + std::to_string(line_no) + ": bad bit '" + tok + "'");
}

i64 parse_int(const std::string& tok, int line_no) {
  i64 v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw parse_error("line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

MarkErr parse_reason(const std::string& s, int line_no) {
  for (MarkErr e : {MarkErr::OnUndeterminedLine, MarkErr::OnUncoloredLine,
                    MarkErr::PrecisionExceeded, MarkErr::Concurrency,
                    MarkErr::FreeBitsRequired, MarkErr::UnderDetermined}) {
    if (s == to_string(e)) return e;
  }
  throw parse_error("line " + std::to_string(line_no) + ": unknown reason '" + s + "'");
}

struct Header {
  QadicParam q;
  int K{0};
  i64 R{0};
  FreeBits freebits;
};

std::string format_header(const QadicParam& q, int K, i64 R, const FreeBits& fb) {
  return std::string("#q=") + format_qspec(q) + " K=" + std::to_string(K) +
         " R=" + std::to_string(R) + " freebits=" + fb.format();
}

Header parse_header(const std::vector<std::string>& lines) {
  if (lines.empty() || lines[0] != kPatchMagic)
    throw parse_error("missing patch magic line");
  if (lines.size() < 2 || lines[1].rfind("#q=", 0) != 0)
    throw parse_error("missing patch header line");
  Header h;
  bool have_k = false, have_r = false;
  for (const std::string& tok : split(lines[1], ' ')) {
    if (tok.rfind("#q=", 0) == 0) {
      h.q = parse_qspec(tok.substr(3));
    } else if (tok.rfind("K=", 0) == 0) {
      h.K = static_cast<int>(parse_int(tok.substr(2), 2));
      have_k = true;
    } else if (tok.rfind("R=", 0) == 0) {
      h.R = parse_int(tok.substr(2), 2);
      have_r = true;
    } else if (tok.rfind("freebits=", 0) == 0) {
      h.freebits = FreeBits::parse(tok.substr(9));
    } else if (!tok.empty()) {
      throw parse_error("unknown header token '" + tok + "'");
    }
  }
  if (!have_k || !have_r) throw parse_error("header missing K= or R=");
  return h;
}

std::vector<std::string> to_lines(const std::string& text) {
  std::vector<std::string> lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace

std::string format_patch(const Patch& patch) {
  std::ostringstream out;
  out << kPatchMagic << '\n'
      << format_header(patch.q, patch.K, patch.R, patch.freebits) << '\n';
  for (const auto& [x, t] : patch.tiles) {
    out << x.m << '\t' << x.n << '\t';
    if (t.determined()) {
      out << t.parity << '\t' << to_string(t.stripe) << '\t' << t.shift << '\t'
          << t.split << "\tDetermined\n";
    } else {
      // Undetermined tiles commit no parity, but the fields that are known on
      // their own (stripe from the levels, a preset or solver-forced bit) are
      // reported so the structural checkers can still use them.
      out << "-\t" << (t.stripe_valid ? to_string(t.stripe) : "-") << '\t'
          << bit_str(t.shift) << '\t' << bit_str(t.split)
          << "\tUndetermined:" << to_string(t.reason) << '\n';
    }
  }
  return out.str();
}

Patch parse_patch(const std::string& text) {
  std::vector<std::string> lines = to_lines(text);
  Header h = parse_header(lines);
  Patch patch;
  patch.q = h.q;
  patch.K = h.K;
  patch.R = h.R;
  patch.freebits = h.freebits;
  for (size_t i = 2; i < lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    if (lines[i].empty() || lines[i][0] == '#') continue;
    std::vector<std::string> f = split(lines[i], '\t');
    if (f.size() != 7)
      throw parse_error("line " + std::to_string(line_no) + ": expected 7 fields");
    TileMark t;
    t.center = QPoint{parse_int(f[0], line_no), parse_int(f[1], line_no)};
    t.parity = parse_bit(f[2], line_no);
    if (f[3] != "-") {
      if (!parse_adir(f[3], t.stripe))
        throw parse_error("line " + std::to_string(line_no) + ": bad stripe '" + f[3] + "'");
      t.stripe_valid = true;
    }
    t.shift = parse_bit(f[4], line_no);
    t.split = parse_bit(f[5], line_no);
    if (f[6] == "Determined") {
      t.reason = MarkErr::None;
      if (t.parity < 0 || t.shift < 0 || t.split < 0 || !t.stripe_valid)
        throw parse_error("line " + std::to_string(line_no) +
                          ": determined tile with missing fields");
    } else if (f[6].rfind("Undetermined:", 0) == 0) {
      t.reason = parse_reason(f[6].substr(13), line_no);
      if (t.parity >= 0)
        throw parse_error("line " + std::to_string(line_no) +
                          ": undetermined tile with committed parity");
    } else {
      throw parse_error("line " + std::to_string(line_no) + ": bad status '" + f[6] + "'");
    }
    if (!patch.tiles.emplace(t.center, t).second)
      throw parse_error("line " + std::to_string(line_no) + ": duplicate tile");
  }
  return patch;
}

std::string format_parity_patch(const Patch& patch) {
  std::ostringstream out;
  out << kPatchMagic << '\n'
      << format_header(patch.q, patch.K, patch.R, patch.freebits) << '\n';
  for (const auto& [x, t] : patch.tiles)
    out << x.m << '\t' << x.n << '\t' << bit_str(t.determined() ? t.parity : -1) << '\n';
  return out.str();
}

ParityPatch parse_parity_patch(const std::string& text) {
  std::vector<std::string> lines = to_lines(text);
  Header h = parse_header(lines);
  ParityPatch pp;
  pp.center = QPoint{0, 0};
  pp.R = h.R;
  for (size_t i = 2; i < lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    if (lines[i].empty() || lines[i][0] == '#') continue;
    std::vector<std::string> f = split(lines[i], '\t');
    if (f.size() != 3 && f.size() != 7)
      throw parse_error("line " + std::to_string(line_no) + ": expected 3 or 7 fields");
    QPoint x{parse_int(f[0], line_no), parse_int(f[1], line_no)};
    int parity = parse_bit(f[2], line_no);
    if (parity < 0) continue;
    if (!pp.bits.emplace(x, parity).second)
      throw parse_error("line " + std::to_string(line_no) + ": duplicate tile");
  }
  return pp;
}

}  // namespace hexlimit
