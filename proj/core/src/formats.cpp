#include "shtuka/formats.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "shtuka/error.hpp"
#include "shtuka/fp_algebra.hpp"

namespace shtuka {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

long to_long(const std::string& s) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Parse, "expected an integer, got '" + s + "'");
}

class Lines {
 public:
  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      lines_.push_back(std::move(t));
    }
  }
  bool done() const { return pos_ >= lines_.size(); }
  const std::string& peek() const {
    require(!done(), ErrorKind::Parse, "unexpected end of input");
    return lines_[pos_];
  }
  std::string next() {
    const std::string& l = peek();
    ++pos_;
    return l;
  }
  /// Next line split into words, first word required to be `key`.
  std::vector<std::string> keyed(const std::string& key, std::size_t args) {
    auto w = words(next());
    require(!w.empty() && w[0] == key && w.size() == args + 1, ErrorKind::Parse,
            "expected '" + key + "' with " + std::to_string(args) + " argument(s)");
    w.erase(w.begin());
    return w;
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_entries(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ';') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

void write_matrix(std::ostream& os, const std::string& key, const RMatrix& m) {
  os << key << ' ' << m.rows() << ' ' << m.cols() << '\n';
  if (m.cols() == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " ; " : "") << m.ring().format(m.at(i, j));
    os << '\n';
  }
}

RMatrix read_matrix(Lines& in, const std::string& key, const ChainRing& ring, std::size_t rows, std::size_t cols) {
  const auto w = in.keyed(key, 2);
  require(static_cast<std::size_t>(to_long(w[0])) == rows && static_cast<std::size_t>(to_long(w[1])) == cols,
          ErrorKind::Parse, key + "-matrix shape does not match the ranks");
  RMatrix m(ring, rows, cols);
  if (cols == 0) return m;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto e = split_entries(in.next());
    require(e.size() == cols, ErrorKind::Parse, "row " + std::to_string(i) + " of " + key + " has the wrong length");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = ring.parse(e[j]);
  }
  return m;
}

bool read_flag(const std::string& s) {
  require(s == "0" || s == "1", ErrorKind::Parse, "flags are 0 or 1");
  return s == "1";
}

struct Graded {
  ChainRing ring;
  ChainRing::Value v;
  int jmin = 0, jmax = 0;
  bool f1 = false, f2 = false;
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> t, u;
};

Graded read_graded(const std::string& text, const std::string& header, bool with_u) {
  Lines in(text);
  require(in.next() == header, ErrorKind::Parse, "expected header '" + header + "'");
  const auto rw = words(in.next());
  require(rw.size() >= 2 && rw[0] == "ring", ErrorKind::Parse, "expected a ring line");
  std::string spec;
  for (std::size_t i = 1; i < rw.size(); ++i) spec += (i > 1 ? " " : "") + rw[i];
  Graded g{parse_ring_spec(spec), {}, 0, 0, false, false, {}, {}, {}};
  if (with_u) {
    const std::string l = in.next();
    require(l.rfind("v ", 0) == 0, ErrorKind::Parse, "expected 'v <element>'");
    g.v = g.ring.parse(trim(std::string_view(l).substr(2)));
  }
  const auto win = in.keyed("window", 2);
  g.jmin = static_cast<int>(to_long(win[0]));
  g.jmax = static_cast<int>(to_long(win[1]));
  require(g.jmin <= g.jmax, ErrorKind::Parse, "empty window");
  const auto fl = in.keyed("flags", 2);
  g.f1 = read_flag(fl[0]);
  g.f2 = read_flag(fl[1]);
  // A block's t-shape names the next rank before that block is read.
  for (int j = g.jmin; j <= g.jmax; ++j) {
    const auto d = in.keyed("degree", 1);
    require(to_long(d[0]) == j, ErrorKind::Parse, "expected degree " + std::to_string(j));
    const auto r = in.keyed("rank", 1);
    const long rank = to_long(r[0]);
    require(rank >= 0, ErrorKind::Parse, "negative rank");
    g.ranks.push_back(static_cast<std::size_t>(rank));
    if (j == g.jmax) break;
    auto tw = words(in.peek());
    require(tw.size() == 3 && tw[0] == "t", ErrorKind::Parse, "expected 't <rows> <cols>' in degree " + std::to_string(j));
    const auto next_rank = static_cast<std::size_t>(to_long(tw[2]));
    g.t.push_back(read_matrix(in, "t", g.ring, g.ranks.back(), next_rank));
    if (with_u) g.u.push_back(read_matrix(in, "u", g.ring, next_rank, g.ranks.back()));
  }
  require(in.done(), ErrorKind::Parse, "trailing content after the last degree");
  for (std::size_t k = 0; k < g.t.size(); ++k)
    require(g.t[k].cols() == g.ranks[k + 1], ErrorKind::Parse,
            "t-matrix of degree " + std::to_string(g.jmin + static_cast<int>(k)) + " disagrees with the next rank");
  return g;
}

void write_ring(std::ostream& os, const std::string& header, const ChainRing& ring) {
  os << header << '\n' << "ring " << ring_spec(ring) << '\n';
}

// --- Laurent series ----------------------------------------------------------

std::map<long, Elem> parse_laurent(const FpAlgebra& F, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  require(!s.empty(), ErrorKind::Parse, "empty series");
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool sep = depth == 0 && (c == '+' || (c == '-' && i > 0 && s[i - 1] != '^'));
    if (sep) {
      terms.push_back(cur);
      cur.clear();
      if (c == '-') cur.push_back('-');
    } else {
      cur.push_back(c);
    }
  }
  terms.push_back(cur);
  std::map<long, Elem> out;
  for (std::string term : terms) {
    if (term.empty()) continue;
    bool negate = false;
    if (term[0] == '-') {
      negate = true;
      term.erase(0, 1);
    }
    require(!term.empty(), ErrorKind::Parse, "malformed Laurent series '" + text + "'");
    long e = 0;
    std::string coeff = term;
    const auto zpos = term.rfind('z');
    if (zpos != std::string::npos) {
      coeff = term.substr(0, zpos);
      const std::string tail = term.substr(zpos + 1);
      e = 1;
      if (!tail.empty()) {
        require(tail[0] == '^', ErrorKind::Parse, "malformed exponent in '" + term + "'");
        e = to_long(tail.substr(1));
      }
      if (!coeff.empty()) {
        require(coeff.back() == '*', ErrorKind::Parse, "malformed term '" + term + "'");
        coeff.pop_back();
      }
    }
    Elem c = F.one();
    if (!coeff.empty()) {
      if (coeff.front() == '(' && coeff.back() == ')') coeff = coeff.substr(1, coeff.size() - 2);
      c = F.parse(coeff);
    }
    if (negate) c = F.neg(c);
    auto& slot = out[e];
    slot = F.add(slot, c);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::string format_laurent(const FpAlgebra& F, const std::vector<std::pair<long, Elem>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms) {
    if (!out.empty()) out += " + ";
    std::string cs = F.format(c);
    if (cs.find_first_of("+-") != std::string::npos) cs = "(" + cs + ")";
    if (e == 0) {
      out += cs;
      continue;
    }
    if (c != F.one()) out += cs + "*";
    out += "z";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string ring_spec(const ChainRing& r) {
  const auto& F = *r.residue();
  require(F.is_field(), ErrorKind::UnsupportedBase, "text format needs a residue field");
  const std::string Q = std::to_string(F.size());
  switch (r.kind()) {
    case ChainRing::Kind::Field: return "field " + Q;
    case ChainRing::Kind::Series: return "series " + Q + " " + std::to_string(r.length());
    case ChainRing::Kind::PowerSeries: return "power-series " + Q + " " + std::to_string(r.length());
    case ChainRing::Kind::Witt: return "witt " + Q + " " + std::to_string(r.length());
  }
  return {};
}

ChainRing parse_ring_spec(const std::string& spec) {
  const auto w = words(spec);
  require(!w.empty(), ErrorKind::Parse, "empty ring spec");
  auto num = [&](std::size_t i) {
    require(i < w.size(), ErrorKind::Parse, "ring spec '" + spec + "' is missing an argument");
    const long v = to_long(w[i]);
    require(v > 0, ErrorKind::Parse, "ring spec arguments are positive");
    return static_cast<std::size_t>(v);
  };
  const std::size_t nargs = w[0] == "field" ? 1 : 2;
  require(w.size() == nargs + 1, ErrorKind::Parse, "ring spec '" + spec + "' has the wrong number of arguments");
  const auto F = FpAlgebra::field_of_order(num(1));
  if (w[0] == "field") return ChainRing::field(F);
  if (w[0] == "series") return ChainRing::series(F, num(2));
  if (w[0] == "power-series") return ChainRing::power_series(F, num(2));
  if (w[0] == "witt") return ChainRing::witt(F, num(2));
  throw Error(ErrorKind::Parse, "unknown ring kind '" + w[0] + "'");
}

std::string filtered_chain_format(const FilteredChain& c) {
  std::ostringstream os;
  write_ring(os, "filtered-chain", c.base());
  os << "window " << c.jmin() << ' ' << c.jmax() << '\n';
  os << "flags " << c.t_iso_below() << ' ' << c.zero_above() << '\n';
  for (int j = c.jmin(); j <= c.jmax(); ++j) {
    os << "degree " << j << '\n' << "rank " << c.rank(j) << '\n';
    if (j < c.jmax()) write_matrix(os, "t", c.t(j));
  }
  return os.str();
}

FilteredChain filtered_chain_parse(const std::string& text) {
  Graded g = read_graded(text, "filtered-chain", false);
  return FilteredChain(g.ring, g.jmin, g.jmax, g.ranks, g.t, g.f1, g.f2);
}

std::string rees_module_format(const GradedReesModule& m) {
  std::ostringstream os;
  write_ring(os, "rees-module", m.base());
  os << "v " << m.base().format(m.v()) << '\n';
  os << "window " << m.jmin() << ' ' << m.jmax() << '\n';
  os << "flags " << m.t_iso_below() << ' ' << m.u_iso_above() << '\n';
  for (int j = m.jmin(); j <= m.jmax(); ++j) {
    os << "degree " << j << '\n' << "rank " << m.rank(j) << '\n';
    if (j < m.jmax()) {
      write_matrix(os, "t", m.t(j));
      write_matrix(os, "u", m.u(j));
    }
  }
  return os.str();
}

GradedReesModule rees_module_parse(const std::string& text) {
  Graded g = read_graded(text, "rees-module", true);
  return GradedReesModule(g.ring, g.v, g.jmin, g.jmax, g.ranks, g.t, g.u, g.f1, g.f2);
}

std::string hecke_pair_format(const HeckePair& p) {
  const auto& A = p.phi0.ring();
  const auto& F = *A.residue();
  std::ostringstream os;
  os << "hecke-pair\n"
     << "field " << F.size() << '\n'
     << "precision " << p.precision() << '\n'
     << "h " << p.h() << '\n';
  for (std::size_t i = 0; i < p.h(); ++i) {
    for (std::size_t j = 0; j < p.h(); ++j) {
      std::vector<std::pair<long, Elem>> terms;
      const auto& a = p.phi0.at(i, j);
      for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k]) terms.emplace_back(static_cast<long>(k) - p.denominator, a[k]);
      os << (j ? " ; " : "") << format_laurent(F, terms);
    }
    os << '\n';
  }
  return os.str();
}

HeckePair hecke_pair_parse(const std::string& text) {
  Lines in(text);
  require(in.next() == "hecke-pair", ErrorKind::Parse, "expected header 'hecke-pair'");
  const auto F = FpAlgebra::field_of_order(static_cast<std::uint64_t>(to_long(in.keyed("field", 1)[0])));
  const long K = to_long(in.keyed("precision", 1)[0]);
  require(K > 0, ErrorKind::Parse, "precision must be positive");
  const long h = to_long(in.keyed("h", 1)[0]);
  require(h > 0, ErrorKind::Parse, "h must be positive");
  std::vector<std::map<long, Elem>> entries;
  long lowest = 0;
  for (long i = 0; i < h; ++i) {
    const auto row = split_entries(in.next());
    require(static_cast<long>(row.size()) == h, ErrorKind::Parse, "Hecke matrix row has the wrong length");
    for (const auto& e : row) {
      entries.push_back(parse_laurent(*F, e));
      if (!entries.back().empty()) lowest = std::min(lowest, entries.back().begin()->first);
    }
  }
  require(in.done(), ErrorKind::Parse, "trailing content after the Hecke matrix");
  const ChainRing A = ChainRing::power_series(F, static_cast<std::size_t>(K));
  HeckePair p{RMatrix(A, static_cast<std::size_t>(h), static_cast<std::size_t>(h)), static_cast<int>(-lowest)};
  for (long i = 0; i < h; ++i)
    for (long j = 0; j < h; ++j)
      for (const auto& [e, c] : entries[static_cast<std::size_t>(i * h + j)]) {
        const long k = e + p.denominator;
        if (k < K) p.phi0.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))[static_cast<std::size_t>(k)] = c;
      }
  return p;
}

BundleData bundle_parse(const std::string& text) {
  Lines in(text);
  require(!in.done(), ErrorKind::Parse, "empty bundle file");
  const std::string head = in.peek();
  if (head == "filtered-chain") return filtered_chain_parse(text);
  if (head == "rees-module") return rees_module_parse(text);
  if (head == "hecke-pair") return hecke_pair_parse(text);
  throw Error(ErrorKind::Parse, "unknown bundle header '" + head + "'");
}

}  // namespace shtuka
