#include "oada/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace oada {

FcidumpError::FcidumpError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "FCIDUMP line " + std::to_string(line) + ": " + what
                              : "FCIDUMP: " + what),
      line_(line) {}

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_real(std::string_view token) {
  std::string buf(token);
  // Fortran double-precision exponents.
  for (auto& c : buf)
    if (c == 'D' || c == 'd') c = 'e';
  const char* first = buf.data();
  const char* last = buf.data() + buf.size();
  if (first != last && *first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::optional<long> parse_int(std::string_view token) {
  long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

// Splits a namelist body into tokens, treating ',' as whitespace and '=' as
// its own token.
std::vector<std::string> namelist_tokens(std::string_view body) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : body) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush();
    } else if (c == '=') {
      flush();
      tokens.emplace_back("=");
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return tokens;
}

void read_reference_comment(std::string_view comment, FcidumpData& data) {
  comment = trim(comment);
  for (auto [key, slot] : {std::pair{std::string_view("REF_HF="), &data.ref_hf},
                           std::pair{std::string_view("REF_FCI="), &data.ref_fci}}) {
    if (comment.substr(0, key.size()) == key) {
      if (auto v = parse_real(trim(comment.substr(key.size())))) *slot = *v;
    }
  }
}

}  // namespace

OrbitalQuad canonical_two_body_key(int i, int j, int k, int l) {
  const OrbitalQuad candidates[8] = {{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
                                     {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}};
  return *std::min_element(std::begin(candidates), std::end(candidates));
}

double FcidumpData::one(int i, int j) const {
  auto it = one_body.find({std::min(i, j), std::max(i, j)});
  return it == one_body.end() ? 0.0 : it->second;
}

double FcidumpData::two(int i, int j, int k, int l) const {
  auto it = two_body.find(canonical_two_body_key(i, j, k, l));
  return it == two_body.end() ? 0.0 : it->second;
}

void FcidumpData::set_one(int i, int j, double value) {
  one_body[{std::min(i, j), std::max(i, j)}] = value;
}

void FcidumpData::set_two(int i, int j, int k, int l, double value) {
  two_body[canonical_two_body_key(i, j, k, l)] = value;
}

FcidumpData parse_fcidump(std::string_view text) {
  FcidumpData data;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;

  // Namelist: from `&FCI` up to `&END` or `/`.
  std::string namelist;
  bool in_namelist = false;
  bool namelist_done = false;
  std::size_t namelist_line = 0;
  while (!namelist_done && std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      read_reference_comment(line.substr(1), data);
      continue;
    }
    std::string up = upper(line);
    if (!in_namelist) {
      if (up.rfind("&FCI", 0) != 0)
        throw FcidumpError("expected '&FCI' namelist header", line_no);
      in_namelist = true;
      namelist_line = line_no;
      up = up.substr(4);
    }
    auto end_pos = std::min(up.find("&END"), up.find('/'));
    if (end_pos != std::string::npos) {
      namelist += up.substr(0, end_pos);
      namelist_done = true;
    } else {
      namelist += up;
      namelist += ' ';
    }
  }
  if (!in_namelist) throw FcidumpError("missing '&FCI' namelist");
  if (!namelist_done) throw FcidumpError("unterminated namelist", namelist_line);

  std::map<std::string, std::vector<std::string>> entries;
  {
    auto tokens = namelist_tokens(namelist);
    std::string key;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t + 1 < tokens.size() && tokens[t + 1] == "=") {
        key = tokens[t];
        entries[key];
        ++t;
      } else if (tokens[t] == "=" || key.empty()) {
        throw FcidumpError("malformed namelist near '" + tokens[t] + "'", namelist_line);
      } else {
        entries[key].push_back(tokens[t]);
      }
    }
  }
  auto required_int = [&](const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end() || it->second.empty())
      throw FcidumpError("missing required namelist key " + key);
    auto v = parse_int(it->second.front());
    if (!v) throw FcidumpError("non-integer value for " + key, namelist_line);
    return static_cast<int>(*v);
  };
  data.norb = required_int("NORB");
  data.nelec = required_int("NELEC");
  data.ms2 = required_int("MS2");
  // ORBSYM / ISYM and anything else are accepted and ignored.
  if (data.norb < 1) throw FcidumpError("NORB must be at least 1");
  if (data.nelec < 0 || data.nelec > 2 * data.norb)
    throw FcidumpError("NELEC out of range [0, 2*NORB]");
  if (std::abs(data.ms2) > data.nelec || (data.nelec + data.ms2) % 2 != 0)
    throw FcidumpError("MS2 inconsistent with NELEC");

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      read_reference_comment(line.substr(1), data);
      continue;
    }
    std::istringstream fields{std::string(line)};
    std::string tok[5];
    int count = 0;
    std::string extra;
    while (count < 5 && fields >> tok[count]) ++count;
    if (count != 5 || (fields >> extra))
      throw FcidumpError("expected 'value i j k l'", line_no);
    auto value = parse_real(tok[0]);
    if (!value) throw FcidumpError("malformed numeric token '" + tok[0] + "'", line_no);
    int idx[4];
    for (int a = 0; a < 4; ++a) {
      auto v = parse_int(tok[a + 1]);
      if (!v) throw FcidumpError("malformed index token '" + tok[a + 1] + "'", line_no);
      if (*v < 0 || *v > data.norb)
        throw FcidumpError("index " + tok[a + 1] + " out of range [0, NORB]", line_no);
      idx[a] = static_cast<int>(*v);
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      data.core_energy = *value;
    } else if (k == 0 && l == 0) {
      if (j == 0) continue;  // orbital energy record, unused
      if (i == 0) throw FcidumpError("one-body record with zero index", line_no);
      data.set_one(i, j, *value);
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0)
        throw FcidumpError("two-body record with zero index", line_no);
      data.set_two(i, j, k, l, *value);
    }
  }
  return data;
}

FcidumpData read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FcidumpError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fcidump(buf.str());
}

std::string write_fcidump(const FcidumpData& data) {
  std::ostringstream out;
  char buf[64];
  auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  if (data.ref_hf) out << "# REF_HF=" << real(*data.ref_hf) << '\n';
  if (data.ref_fci) out << "# REF_FCI=" << real(*data.ref_fci) << '\n';
  out << " &FCI NORB=" << data.norb << ",NELEC=" << data.nelec << ",MS2=" << data.ms2 << ",\n";
  out << " &END\n";
  for (const auto& [key, v] : data.two_body)
    out << real(v) << ' ' << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << key[3] << '\n';
  for (const auto& [key, v] : data.one_body)
    out << real(v) << ' ' << key[0] << ' ' << key[1] << " 0 0\n";
  out << real(data.core_energy) << " 0 0 0 0\n";
  return out.str();
}

MolecularHamiltonian to_spin_orbital(const FcidumpData& data) {
  MolecularHamiltonian h;
  const int n = 2 * data.norb;
  h.n_spin_orbitals = n;
  h.n_electrons = data.nelec;
  h.ms2 = data.ms2;
  h.core_energy = data.core_energy;
  h.one_body.assign(static_cast<std::size_t>(n) * n, 0.0);
  h.two_body.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);

  auto spatial = [](int p) { return p / 2 + 1; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (spin_of(p) == spin_of(q))
        h.one_body[static_cast<std::size_t>(p) * n + q] = data.one(spatial(p), spatial(q));

  // Spatial (ij|kl) table first so the N^4 fill does not hit the map.
  const int m = data.norb;
  std::vector<double> eri(static_cast<std::size_t>(m) * m * m * m, 0.0);
  for (const auto& [key, v] : data.two_body) {
    const auto [i, j, k, l] = key;
    const OrbitalQuad perms[8] = {{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
                                  {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}};
    for (const auto& [a, b, c, d] : perms)
      eri[((static_cast<std::size_t>(a - 1) * m + (b - 1)) * m + (c - 1)) * m + (d - 1)] = v;
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (spin_of(p) != spin_of(q)) continue;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (spin_of(r) != spin_of(s)) continue;
          const double v = eri[((static_cast<std::size_t>(p / 2) * m + q / 2) * m + r / 2) * m + s / 2];
          h.two_body[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s] = 0.5 * v;
        }
    }
  return h;
}

}  // namespace oada
