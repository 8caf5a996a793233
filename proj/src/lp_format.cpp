#include "rap/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rap {

namespace {

std::string num(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  }
  return out;
}

void write_terms(std::ostream& os, const std::vector<std::pair<int, double>>& terms,
                 const std::vector<std::string>& names) {
  bool first = true;
  for (auto [j, c] : terms) {
    if (c == 0.0) continue;
    if (first) {
      if (c < 0.0) os << "- ";
      first = false;
    } else {
      os << (c < 0.0 ? " - " : " + ");
    }
    double a = std::abs(c);
    if (a != 1.0) os << num(a) << ' ';
    os << names[j];
  }
  if (first) os << "0 " << names[0];
}

}  // namespace

void write_lp(std::ostream& os, const ProblemInstance& inst,
              const std::string& instance_name) {
  MilpRelaxation rel = build_relaxation(inst);
  const lp::Model& m = rel.model;
  std::vector<std::string> names;
  names.reserve(m.var_names.size());
  for (const auto& n : m.var_names) names.push_back(sanitize(n));

  os << "\\ " << sanitize(instance_name) << " ("
     << formulation_name(inst.formulation) << ")\n";
  for (int i = 0; i < rel.num_offers; ++i) {
    os << "\\ offer i" << (i + 1) << " = " << inst.offers.at(i).id << "\n";
  }
  os << "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < m.num_vars(); ++j) {
    if (m.cost[j] != 0.0) obj.emplace_back(j, m.cost[j]);
  }
  write_terms(os, obj, names);
  os << "\nSubject To\n";
  for (const lp::Row& row : m.rows) {
    os << ' ' << sanitize(row.name) << ": ";
    write_terms(os, row.terms, names);
    switch (row.sense) {
      case lp::Sense::LE: os << " <= "; break;
      case lp::Sense::GE: os << " >= "; break;
      case lp::Sense::EQ: os << " = "; break;
    }
    os << num(row.rhs) << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < m.num_vars(); ++j) {
    if (m.upper[j] == lp::kInf) {
      os << ' ' << names[j] << " >= " << num(m.lower[j]) << "\n";
    } else {
      os << ' ' << num(m.lower[j]) << " <= " << names[j] << " <= "
         << num(m.upper[j]) << "\n";
    }
  }
  os << "Binaries\n";
  for (int b = 0; b < rel.num_blocks; ++b) {
    for (int i = 0; i < rel.num_offers; ++i) {
      os << ' ' << names[rel.z_index(i, b)];
    }
    os << "\n";
  }
  os << "End\n";
}

std::string write_lp_string(const ProblemInstance& inst,
                            const std::string& instance_name) {
  std::ostringstream os;
  write_lp(os, inst, instance_name);
  return os.str();
}

namespace {

struct Tokenizer {
  std::vector<std::string> tokens;
  std::size_t pos = 0;

  explicit Tokenizer(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
      auto comment = line.find('\\');
      if (comment != std::string::npos) line.erase(comment);
      std::size_t i = 0;
      const std::size_t len = line.size();
      while (i < len) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
          ++i;
        } else if (c == ':' || c == '+' || c == '-') {
          tokens.push_back(std::string(1, c));
          ++i;
        } else if (c == '<' || c == '>') {
          if (i + 1 < len && line[i + 1] == '=') {
            tokens.push_back(std::string(1, c) + "=");
            i += 2;
          } else {
            tokens.push_back(std::string(1, c));
            ++i;
          }
        } else if (c == '=') {
          tokens.push_back("=");
          ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
          // number with optional exponent (sign included)
          std::size_t j = i;
          while (j < len && (std::isdigit(static_cast<unsigned char>(line[j])) ||
                             line[j] == '.')) {
            ++j;
          }
          if (j < len && (line[j] == 'e' || line[j] == 'E')) {
            std::size_t k = j + 1;
            if (k < len && (line[k] == '+' || line[k] == '-')) ++k;
            if (k < len && std::isdigit(static_cast<unsigned char>(line[k]))) {
              ++k;
              while (k < len && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
              j = k;
            }
          }
          tokens.push_back(line.substr(i, j - i));
          i = j;
        } else {
          std::size_t j = i;
          while (j < len && !std::isspace(static_cast<unsigned char>(line[j])) &&
                 line[j] != ':' && line[j] != '+' && line[j] != '-' &&
                 line[j] != '<' && line[j] != '>' && line[j] != '=') {
            ++j;
          }
          tokens.push_back(line.substr(i, j - i));
          i = j;
        }
      }
    }
  }

  bool done() const { return pos >= tokens.size(); }
  const std::string& peek() const { return tokens[pos]; }
  std::string next() { return tokens[pos++]; }
  bool accept(const std::string& t) {
    if (!done() && tokens[pos] == t) {
      ++pos;
      return true;
    }
    return false;
  }
};

bool is_number(const std::string& t, double& out) {
  if (t.empty()) return false;
  char c = t[0];
  if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '.' &&
      c != '+') {
    return false;
  }
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [p, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && p == end;
}

bool iequal(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool is_section(const std::string& t) {
  return iequal(t, "minimize") || iequal(t, "subject") || iequal(t, "bounds") ||
         iequal(t, "binaries") || iequal(t, "end") || iequal(t, "st");
}

}  // namespace

LpFile read_lp(std::istream& is) {
  Tokenizer tz(is);
  LpFile file;
  lp::Model& m = file.model;
  std::map<std::string, int> var_index;
  auto var_of = [&](const std::string& name) {
    auto it = var_index.find(name);
    if (it != var_index.end()) return it->second;
    int j = m.add_variable(name, 0.0, lp::kInf, 0.0);
    var_index.emplace(name, j);
    return j;
  };

  // name ':' handled by caller; parses "c1 x1 + c2 x2 - x3 ..." until a
  // relational operator or section keyword.
  auto parse_terms = [&](std::vector<std::pair<int, double>>& terms) {
    double sign = 1.0;
    while (!tz.done()) {
      const std::string& t = tz.peek();
      if (t == "<=" || t == ">=" || t == "=" || is_section(t)) return;
      if (t == "+") {
        tz.next();
        sign = 1.0;
        continue;
      }
      if (t == "-") {
        tz.next();
        sign = -1.0;
        continue;
      }
      double coef;
      if (is_number(t, coef)) {
        tz.next();
        const std::string& v = tz.peek();
        double dummy;
        if (!tz.done() && !is_number(v, dummy) && v != "<=" && v != ">=" &&
            v != "=" && v != "+" && v != "-" && !is_section(v)) {
          terms.emplace_back(var_of(tz.next()), sign * coef);
        } else {
          terms.emplace_back(-1, sign * coef);  // bare constant (unused)
        }
      } else {
        terms.emplace_back(var_of(tz.next()), sign);
      }
      sign = 1.0;
    }
  };

  if (!tz.accept("Minimize") && !tz.accept("minimize") && !tz.accept("MINIMIZE")) {
    throw std::runtime_error("lp parse: expected Minimize");
  }
  {
    // optional objective label
    if (!tz.done()) {
      std::size_t save = tz.pos;
      std::string name = tz.next();
      if (!tz.accept(":")) tz.pos = save;
    }
    std::vector<std::pair<int, double>> terms;
    parse_terms(terms);
    for (auto [j, c] : terms) {
      if (j >= 0) m.cost[j] += c;
    }
  }

  if (!(tz.accept("Subject") || tz.accept("subject"))) {
    throw std::runtime_error("lp parse: expected Subject To");
  }
  tz.accept("To");
  tz.accept("to");
  while (!tz.done() && !is_section(tz.peek())) {
    lp::Row row;
    std::size_t save = tz.pos;
    std::string name = tz.next();
    if (tz.accept(":")) {
      row.name = name;
    } else {
      tz.pos = save;
    }
    parse_terms(row.terms);
    std::string op = tz.next();
    if (op == "<=") row.sense = lp::Sense::LE;
    else if (op == ">=") row.sense = lp::Sense::GE;
    else if (op == "=") row.sense = lp::Sense::EQ;
    else throw std::runtime_error("lp parse: bad row operator '" + op + "'");
    double sign = 1.0;
    if (tz.accept("-")) sign = -1.0; else tz.accept("+");
    double rhs;
    if (!is_number(tz.next(), rhs)) {
      throw std::runtime_error("lp parse: bad rhs in row '" + row.name + "'");
    }
    row.rhs = sign * rhs;
    m.add_row(std::move(row));
  }

  if (tz.accept("Bounds") || tz.accept("bounds")) {
    auto signed_number = [&](double& out) {
      double sign = 1.0;
      if (tz.accept("-")) sign = -1.0; else tz.accept("+");
      double v;
      if (!is_number(tz.next(), v)) return false;
      out = sign * v;
      return true;
    };
    while (!tz.done() && !is_section(tz.peek())) {
      // forms:  lo <= x <= hi   |   x >= lo   |   x <= hi   |   x free
      double a;
      bool leading_number = tz.peek() == "-" || tz.peek() == "+";
      if (!leading_number) {
        double probe;
        leading_number = is_number(tz.peek(), probe);
      }
      if (leading_number) {
        if (!signed_number(a) || !tz.accept("<=")) {
          throw std::runtime_error("lp parse: bad bound line");
        }
        int j = var_of(tz.next());
        m.lower[j] = a;
        if (tz.accept("<=")) {
          double hi;
          if (!signed_number(hi)) throw std::runtime_error("lp parse: bad upper bound");
          m.upper[j] = hi;
        }
      } else {
        int j = var_of(tz.next());
        if (tz.accept(">=")) {
          double lo;
          if (!signed_number(lo)) throw std::runtime_error("lp parse: bad lower bound");
          m.lower[j] = lo;
        } else if (tz.accept("<=")) {
          double hi;
          if (!signed_number(hi)) throw std::runtime_error("lp parse: bad upper bound");
          m.upper[j] = hi;
        } else if (iequal(tz.peek(), "free")) {
          tz.next();
          m.lower[j] = -lp::kInf;
        } else {
          throw std::runtime_error("lp parse: bad bound line");
        }
      }
    }
  }

  if (tz.accept("Binaries") || tz.accept("binaries")) {
    while (!tz.done() && !is_section(tz.peek())) {
      file.binaries.push_back(tz.next());
    }
  }
  return file;
}

LpFile read_lp_string(const std::string& text) {
  std::istringstream is(text);
  return read_lp(is);
}

}  // namespace rap
