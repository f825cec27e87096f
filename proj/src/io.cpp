#include "travlab/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "travlab/error.hpp"
#include "travlab/parser.hpp"

namespace travlab {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    // trim trailing whitespace; skip blanks and comment lines
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::string sibling(const std::string& anchor, const std::string& relative) {
  std::filesystem::path p(relative);
  if (p.is_absolute()) return relative;
  return (std::filesystem::path(anchor).parent_path() / p).string();
}

/// "key=value" fields on a header line after the leading words.
std::map<std::string, std::string> header_fields(std::istringstream& in) {
  std::map<std::string, std::string> fields;
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error("expected key=value, got: " + tok);
    fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return fields;
}

std::string require_field(const std::map<std::string, std::string>& fields, const std::string& key,
                          const std::string& what) {
  auto it = fields.find(key);
  if (it == fields.end()) throw Error(what + " header is missing " + key + "=");
  return it->second;
}

} // namespace

Signature load_signature(const std::string& path) {
  Signature sig;
  for (const auto& line : read_lines(path)) {
    std::istringstream in(line);
    std::string kind, name;
    in >> kind >> name;
    if (kind == "signature") {
      sig.set_name(name);
    } else if (kind == "rel") {
      int arity;
      if (!(in >> arity)) throw Error("rel needs an arity in " + path);
      sig.rel(name, arity);
    } else if (kind == "fun") {
      int arity;
      if (!(in >> arity)) throw Error("fun needs an arity in " + path);
      sig.fun(name, arity);
    } else if (kind == "const") {
      sig.cnst(name);
    } else {
      throw Error("unknown signature directive '" + kind + "' in " + path);
    }
  }
  return sig;
}

void save_signature(const Signature& sig, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << "signature " << (sig.name().empty() ? "sig" : sig.name()) << "\n";
  for (const auto& r : sig.relations()) out << "rel " << r.name << " " << r.arity << "\n";
  for (const auto& f : sig.functions()) {
    if (f.arity == 0)
      out << "const " << f.name << "\n";
    else
      out << "fun " << f.name << " " << f.arity << "\n";
  }
}

namespace {

std::vector<int> parse_tuple(const std::string& text) {
  // "(0,1)" -> {0,1}
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw Error("expected a (..) tuple, got: " + text);
  std::vector<int> out;
  std::istringstream in(text.substr(1, text.size() - 2));
  std::string piece;
  while (std::getline(in, piece, ','))
    if (!piece.empty()) out.push_back(std::stoi(piece));
  return out;
}

} // namespace

Structure load_structure(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty() || lines[0].rfind("structure", 0) != 0)
    throw Error("structure file must start with a 'structure' header: " + path);
  std::istringstream header(lines[0]);
  std::string kw, name;
  header >> kw >> name;
  auto fields = header_fields(header);
  Signature sig = load_signature(sibling(path, require_field(fields, "sig", "structure")));
  int n = std::stoi(require_field(fields, "n", "structure"));

  Structure a(sig, n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    std::string kind, label;
    in >> kind >> label;
    if (label.empty() || label.back() != ':') {
      if (kind == "const") {
        // const s=0
        auto eq = label.find('=');
        if (eq == std::string::npos) throw Error("expected const <name>=<value> in " + path);
        a.set_constant(label.substr(0, eq), std::stoi(label.substr(eq + 1)));
        continue;
      }
      throw Error("expected '<kind> <name>:' in " + path + ": " + lines[i]);
    }
    label.pop_back();
    if (kind == "rel") {
      std::string tok;
      while (in >> tok) a.add_tuple(label, parse_tuple(tok));
    } else if (kind == "fun") {
      std::string tok;
      while (in >> tok) {
        auto arrow = tok.find("->");
        if (arrow == std::string::npos) throw Error("expected args->value in " + path);
        std::string args_text = tok.substr(0, arrow);
        std::vector<int> args;
        if (!args_text.empty()) {
          if (args_text.front() == '(')
            args = parse_tuple(args_text);
          else {
            std::istringstream ain(args_text);
            std::string piece;
            while (std::getline(ain, piece, ',')) args.push_back(std::stoi(piece));
          }
        }
        a.set_fun(label, args, std::stoi(tok.substr(arrow + 2)));
      }
    } else {
      throw Error("unknown structure directive '" + kind + "' in " + path);
    }
  }
  a.validate();
  return a;
}

void save_structure(const Structure& a, const std::string& path, const std::string& sigfile) {
  save_signature(a.sig(), sibling(path, sigfile));
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << "structure " << (a.sig().name().empty() ? "a" : a.sig().name()) << " sig=" << sigfile
      << " n=" << a.size() << "\n";
  for (const auto& r : a.sig().relations()) {
    out << "rel " << r.name << ":";
    a.for_each_tuple(r.name, [&](std::span<const int> t) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
      out << ")";
    });
    out << "\n";
  }
  for (const auto& f : a.sig().functions()) {
    if (f.arity == 0) {
      out << "const " << f.name << "=" << a.constant(f.name) << "\n";
      continue;
    }
    out << "fun " << f.name << ":";
    std::vector<int> args(f.arity, 0);
    bool done = a.size() == 0;
    while (!done) {
      out << " ";
      for (std::size_t i = 0; i < args.size(); ++i) out << (i ? "," : "") << args[i];
      out << "->" << a.apply(f.name, args);
      int i = f.arity - 1;
      while (i >= 0 && ++args[i] == a.size()) args[i--] = 0;
      if (i < 0) done = true;
    }
    out << "\n";
  }
}

Formula load_formula(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::stringstream buf;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    buf << line << "\n";
  }
  return parse_formula(buf.str(), sig);
}

namespace {

std::vector<std::string> make_params(int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

std::vector<Term> parse_term_tuple(const std::string& text, const Signature& sig, int expected) {
  std::string body = text;
  std::size_t open = body.find('(');
  std::size_t close = body.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw Error("expected a (term,...) tuple: " + text);
  body = body.substr(open + 1, close - open - 1);
  // Split on commas at depth zero.
  std::vector<std::string> pieces;
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      pieces.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  pieces.push_back(cur);
  if (static_cast<int>(pieces.size()) != expected)
    throw Error("expected a tuple of " + std::to_string(expected) + " terms: " + text);
  std::vector<Term> out;
  for (const auto& piece : pieces) out.push_back(parse_term(piece, sig));
  return out;
}

} // namespace

Interpretation load_interp(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty() || lines[0].rfind("interp", 0) != 0)
    throw Error("interpretation file must start with an 'interp' header: " + path);
  std::istringstream header(lines[0]);
  std::string kw, name;
  header >> kw >> name;
  auto fields = header_fields(header);

  Interpretation p;
  p.name = name;
  p.dim = std::stoi(require_field(fields, "dim", "interp"));
  p.source = load_signature(sibling(path, require_field(fields, "from", "interp")));
  p.target = load_signature(sibling(path, require_field(fields, "to", "interp")));
  p.dom_params = make_params(p.dim);

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    auto colon = line.find(':');
    if (colon == std::string::npos) throw Error("expected '<directive>: ...' in " + path);
    std::istringstream head(line.substr(0, colon));
    std::string kind, label;
    head >> kind >> label;
    std::string rest = line.substr(colon + 1);
    if (kind == "domain") {
      p.domain = parse_formula(rest, p.target);
    } else if (kind == "rel") {
      const RelSym* r = p.source.find_rel(label);
      if (!r) throw Error("unknown source relation " + label + " in " + path);
      RelDef d;
      d.params = make_params(r->arity * p.dim);
      d.formula = parse_formula(rest, p.target);
      p.rel_defs[label] = std::move(d);
    } else if (kind == "fun" || kind == "const") {
      const FunSym* f = p.source.find_fun(label);
      if (!f) throw Error("unknown source function " + label + " in " + path);
      FunDef d;
      d.params = make_params(f->arity * p.dim);
      // case <guard> => (...); case ... ; default => (...)
      std::istringstream clauses(rest);
      std::string clause;
      bool saw_default = false;
      while (std::getline(clauses, clause, ';')) {
        std::size_t pos = clause.find("=>");
        if (clause.find("case") != std::string::npos && pos != std::string::npos) {
          std::string guard_text = clause.substr(clause.find("case") + 4, pos - clause.find("case") - 4);
          FunCase c;
          c.guard = parse_formula(guard_text, p.target);
          c.value = parse_term_tuple(clause.substr(pos + 2), p.target, p.dim);
          d.cases.push_back(std::move(c));
        } else if (clause.find("default") != std::string::npos && pos != std::string::npos) {
          d.fallback = parse_term_tuple(clause.substr(pos + 2), p.target, p.dim);
          saw_default = true;
        } else if (clause.find('(') != std::string::npos) {
          // bare tuple shorthand: "const c: (s,min)"
          d.fallback = parse_term_tuple(clause, p.target, p.dim);
          saw_default = true;
        } else {
          throw Error("cannot parse definition clause '" + clause + "' in " + path);
        }
      }
      if (!saw_default) throw Error("definition of " + label + " needs a default clause");
      p.fun_defs[label] = std::move(d);
    } else {
      throw Error("unknown interp directive '" + kind + "' in " + path);
    }
  }
  p.validate();
  return p;
}

namespace {

std::vector<std::string> split_tuple_text(const std::string& text) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw Error("expected a (..) group: " + text);
  std::vector<std::string> out;
  std::istringstream in(text.substr(open + 1, close - open - 1));
  std::string piece;
  while (std::getline(in, piece, ',')) {
    std::size_t s = piece.find_first_not_of(" \t");
    std::size_t e = piece.find_last_not_of(" \t");
    out.push_back(s == std::string::npos ? "" : piece.substr(s, e - s + 1));
  }
  return out;
}

} // namespace

Machine load_machine(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty() || lines[0].rfind("machine", 0) != 0)
    throw Error("machine file must start with a 'machine' header: " + path);
  std::istringstream header(lines[0]);
  std::string kw, name;
  header >> kw >> name;
  Machine m;
  if (name.find('=') != std::string::npos) {
    // unnamed header: "machine q=... heads=..."
    header.clear();
    header.str(lines[0]);
    header >> kw;
    m.name = "machine";
  } else {
    m.name = name;
  }
  auto fields = header_fields(header);
  m.q = std::stoi(require_field(fields, "q", "machine"));
  m.heads = std::stoi(require_field(fields, "heads", "machine"));
  m.sigma = require_field(fields, "sigma", "machine");

  std::string tape = m.sigma + kLeftMarker + kRightMarker;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.rfind("delta:", 0) != 0) throw Error("expected 'delta:' line in " + path);
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw Error("delta line needs '->' in " + path);
    auto lhs = split_tuple_text(line.substr(6, arrow - 6));
    auto rhs = split_tuple_text(line.substr(arrow + 2));
    if (static_cast<int>(lhs.size()) != 1 + m.heads || static_cast<int>(rhs.size()) != 1 + m.heads)
      throw Error("delta line has the wrong arity in " + path);
    Transition base;
    base.state = std::stoi(lhs[0]);
    base.next = std::stoi(rhs[0]);
    for (int h = 0; h < m.heads; ++h) {
      if (lhs[1 + h].size() != 1) throw Error("reads must be single characters in " + path);
      base.reads += lhs[1 + h][0];
      base.moves.push_back(std::stoi(rhs[1 + h]));
    }
    // Expand '*' wildcards over the tape alphabet, dropping expansions that
    // would move a head off an endpoint marker.
    std::vector<Transition> pending{base};
    for (int h = 0; h < m.heads; ++h) {
      if (base.reads[h] != '*') continue;
      std::vector<Transition> next;
      for (const Transition& t : pending)
        for (char c : tape) {
          if (c == kLeftMarker && t.moves[h] < 0) continue;
          if (c == kRightMarker && t.moves[h] > 0) continue;
          Transition e = t;
          e.reads[h] = c;
          next.push_back(e);
        }
      pending = std::move(next);
    }
    for (auto& t : pending) m.delta.push_back(std::move(t));
  }
  require_valid(m);
  return m;
}

void save_machine(const Machine& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << "machine " << (m.name.empty() ? "m" : m.name) << " q=" << m.q << " heads=" << m.heads
      << " sigma=" << m.sigma << "\n";
  for (const auto& t : m.delta) {
    out << "delta: (" << t.state;
    for (char c : t.reads) out << ", " << c;
    out << ") -> (" << t.next;
    for (int mv : t.moves) out << ", " << mv;
    out << ")\n";
  }
}

LinearOrder parse_order_spec(const std::string& spec, int n) {
  std::vector<int> seq;
  std::istringstream in(spec);
  std::string piece;
  while (std::getline(in, piece, ',')) seq.push_back(std::stoi(piece));
  if (static_cast<int>(seq.size()) != n)
    throw Error("order must list all " + std::to_string(n) + " elements");
  return LinearOrder::from_sequence(seq);
}

} // namespace travlab
