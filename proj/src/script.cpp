#include "pons/script.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace pons::script {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string format_syntax_error(int line, int column, const std::string& message,
                                const std::vector<std::string>& expected) {
  std::string s = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                  message;
  if (!expected.empty()) s += " (expected " + join(expected, " | ") + ")";
  return s;
}

}  // namespace

SyntaxError::SyntaxError(int line, int column, std::string message,
                         std::vector<std::string> expected)
    : Error(ErrorCode::SyntaxError, format_syntax_error(line, column, message, expected)),
      line_(line),
      column_(column),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

std::vector<PointId> Inst::flatten() const {
  std::vector<PointId> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

bool AstBranch::operator==(const AstBranch& o) const {
  return kind == o.kind && line == o.line && steps == o.steps &&
         closes_absurd == o.closes_absurd && refs == o.refs && close_line == o.close_line;
}

const std::string& item_name(const AstItem& item) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, item);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
  bool ident = false;
  std::string text;
  int col = 0;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
  int end_col = 0;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view raw = text.substr(start, stop - start);
    ++number;
    Line line{number, {}, 1};
    for (std::size_t i = 0; i < raw.size();) {
      const auto c = static_cast<unsigned char>(raw[i]);
      const int col = static_cast<int>(i) + 1;
      if (c == '#') break;
      if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
        ++i;
        continue;
      }
      if (ident_start(c)) {
        std::size_t j = i;
        while (j < raw.size() && ident_char(static_cast<unsigned char>(raw[j]))) ++j;
        line.tokens.push_back({true, std::string(raw.substr(i, j - i)), col});
        i = j;
        continue;
      }
      if (c == '=' && i + 1 < raw.size() && raw[i + 1] == '=') {
        line.tokens.push_back({false, "==", col});
        i += 2;
        continue;
      }
      if (std::string_view(":,()[]<=").find(static_cast<char>(c)) != std::string_view::npos) {
        line.tokens.push_back({false, std::string(1, static_cast<char>(c)), col});
        ++i;
        continue;
      }
      throw SyntaxError(number, col, "unexpected character", {});
    }
    line.end_col = static_cast<int>(raw.size()) + 1;
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (stop == text.size()) break;
    start = stop + 1;
  }
  return lines;
}

// ---------------------------------------------------------------------------
// Parser

constexpr int kMaxCaseDepth = 32;

class Cursor {
 public:
  explicit Cursor(const Line& line) : line_(line) {}

  int line_number() const { return line_.number; }

  bool done() const { return pos_ >= line_.tokens.size(); }

  bool at(std::string_view text) const {
    return !done() && line_.tokens[pos_].text == text;
  }

  bool at_ident() const { return !done() && line_.tokens[pos_].ident; }

  [[noreturn]] void fail(std::string message, std::vector<std::string> expected) const {
    const int col = done() ? line_.end_col : line_.tokens[pos_].col;
    if (!done()) message += " '" + line_.tokens[pos_].text + "'";
    throw SyntaxError(line_.number, col, std::move(message), std::move(expected));
  }

  void expect(std::string_view text) {
    if (!at(text)) fail(done() ? "unexpected end of line" : "unexpected", {std::string(text)});
    ++pos_;
  }

  bool accept(std::string_view text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }

  std::string ident(std::string_view what) {
    if (!at_ident()) fail(done() ? "unexpected end of line" : "unexpected", {std::string(what)});
    return line_.tokens[pos_++].text;
  }

  PointId point() { return PointId{ident("POINT")}; }

  std::string one_of(std::initializer_list<std::string_view> options) {
    for (auto o : options)
      if (at(o)) {
        ++pos_;
        return std::string(o);
      }
    std::vector<std::string> expected(options.begin(), options.end());
    fail(done() ? "unexpected end of line" : "unexpected", expected);
  }

  void end() {
    if (!done()) fail("trailing input", {"end of line"});
  }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  ScriptAst file() {
    ScriptAst ast;
    std::set<std::string> names;
    while (!at_end()) {
      Cursor c(current());
      const std::string kw = c.one_of({"theorem", "declare", "axiom"});
      AstItem item = kw == "theorem"   ? AstItem(theorem())
                     : kw == "declare" ? AstItem(declare())
                                       : AstItem(axiom());
      ast.items.push_back(std::move(item));
    }
    return ast;
  }

 private:
  bool at_end() const { return idx_ >= lines_.size(); }
  const Line& current() const { return lines_[idx_]; }

  [[noreturn]] void fail_eof(std::vector<std::string> expected) const {
    const int line = lines_.empty() ? 1 : lines_.back().number + 1;
    throw SyntaxError(line, 1, "unexpected end of input", std::move(expected));
  }

  // Starts parsing the next line; fails at end of input.
  Cursor next_line(std::vector<std::string> expected) {
    if (at_end()) fail_eof(std::move(expected));
    return Cursor(lines_[idx_++]);
  }

  bool line_starts_with(std::string_view kw) const {
    return !at_end() && current().tokens.front().text == kw &&
           (current().tokens.size() < 2 || current().tokens[1].text != ":");
  }

  std::vector<Tag> tags(Cursor& c) {
    std::vector<Tag> out;
    do {
      out.push_back(c.one_of({"neutral", "euclidean"}) == "neutral" ? Tag::neutral
                                                                     : Tag::euclidean);
    } while (c.accept(","));
    return out;
  }

  std::vector<std::string> name_list(Cursor& c) {
    std::vector<std::string> out{c.ident("IDENT")};
    while (c.accept(",")) out.push_back(c.ident("IDENT"));
    return out;
  }

  std::vector<Tag> tags_line() {
    Cursor c = next_line({"tags"});
    c.expect("tags");
    c.expect(":");
    auto t = tags(c);
    c.end();
    return t;
  }

  AstTheorem theorem() {
    AstTheorem th;
    {
      Cursor c = next_line({"theorem"});
      th.line = c.line_number();
      c.expect("theorem");
      th.name = c.ident("IDENT");
      c.end();
    }
    th.tags = tags_line();
    std::set<std::string> declared;
    auto add_points = [&](Cursor& c, std::vector<PointId>& into) {
      do {
        if (!c.at_ident()) c.fail(c.done() ? "unexpected end of line" : "unexpected", {"POINT"});
        const Cursor before = c;
        PointId p = c.point();
        if (!declared.insert(p.name).second) before.fail("duplicate point", {"POINT"});
        into.push_back(std::move(p));
      } while (!c.done());
    };
    {
      Cursor c = next_line({"points"});
      c.expect("points");
      add_points(c, th.points);
    }
    if (line_starts_with("introduces")) {
      Cursor c = next_line({"introduces"});
      c.expect("introduces");
      add_points(c, th.introduced);
    }
    scopes_.assign(1, {});
    while (line_starts_with("assume")) {
      Cursor c = next_line({"assume"});
      c.expect("assume");
      const Cursor at_label = c;
      std::string label = c.ident("LABEL");
      bind_label(at_label, label);
      c.expect(":");
      th.assumptions.emplace_back(std::move(label), fact(c));
      c.end();
    }
    do {
      Cursor c = next_line({"show"});
      c.expect("show");
      th.shows.push_back(c.accept("absurd") ? RawFact{FactKind::absurd, {}} : fact(c));
      c.end();
    } while (line_starts_with("show"));
    if (line_starts_with("uses")) {
      Cursor c = next_line({"uses"});
      c.expect("uses");
      th.uses = name_list(c);
      c.end();
    }
    if (line_starts_with("proof")) {
      Cursor c = next_line({"proof"});
      AstProof proof;
      proof.line = c.line_number();
      c.expect("proof");
      c.end();
      while (!line_starts_with("qed")) proof.steps.push_back(step(0));
      Cursor q = next_line({"qed"});
      proof.qed_line = q.line_number();
      q.expect("qed");
      q.expect("from");
      proof.qed = refs(q);
      q.end();
      th.proof = std::move(proof);
    }
    return th;
  }

  AstDeclare declare() {
    AstDeclare d;
    Cursor c = next_line({"declare"});
    d.line = c.line_number();
    c.expect("declare");
    d.name = c.ident("IDENT");
    c.end();
    d.tags = tags_line();
    if (line_starts_with("uses")) {
      Cursor u = next_line({"uses"});
      u.expect("uses");
      d.uses = name_list(u);
      u.end();
    }
    return d;
  }

  AstAxiom axiom() {
    AstAxiom a;
    Cursor c = next_line({"axiom"});
    a.line = c.line_number();
    c.expect("axiom");
    a.name = c.ident("IDENT");
    c.end();
    a.tags = tags_line();
    return a;
  }

  void bind_label(const Cursor& at, const std::string& label) {
    if (label == "refl" || label == "sym") at.fail("reserved word used as label", {"LABEL"});
    for (const auto& scope : scopes_)
      if (scope.count(label)) at.fail("duplicate label", {"LABEL"});
    scopes_.back().insert(label);
  }

  RawFact fact(Cursor& c) {
    const std::string kw = c.one_of({"seg", "ang", "between", "noncollinear", "anglesum"});
    RawFact f;
    auto pts = [&](int n) {
      for (int i = 0; i < n; ++i) f.points.push_back(c.point());
    };
    if (kw == "seg" || kw == "ang") {
      const int n = kw == "seg" ? 2 : 3;
      pts(n);
      const bool eq = c.one_of({"==", "<"}) == "==";
      c.expect(kw);
      pts(n);
      f.kind = kw == "seg" ? (eq ? FactKind::seg_eq : FactKind::seg_lt)
                           : (eq ? FactKind::ang_eq : FactKind::ang_lt);
    } else if (kw == "between") {
      f.kind = FactKind::between;
      pts(3);
    } else if (kw == "noncollinear") {
      f.kind = FactKind::noncollinear;
      pts(3);
    } else {
      f.kind = FactKind::angle_sum_pi;
      pts(3);
      c.expect("==");
      c.expect("pi");
    }
    return f;
  }

  PointPair segterm(Cursor& c) {
    c.expect("seg");
    PointId a = c.point();
    PointId b = c.point();
    return {std::move(a), std::move(b)};
  }

  std::vector<Ref> refs(Cursor& c) {
    std::vector<Ref> out;
    do {
      if (c.accept("refl")) {
        out.push_back(Ref::reflexive());
      } else if (c.accept("sym")) {
        out.push_back(Ref::symmetric(c.ident("LABEL")));
      } else {
        out.push_back(Ref::to(c.ident("LABEL")));
      }
    } while (c.accept(","));
    return out;
  }

  Inst inst(Cursor& c) {
    Inst out;
    c.expect("[");
    if (c.at("(")) {
      out.grouped = true;
      do {
        c.expect("(");
        std::vector<PointId> g{c.point()};
        while (c.accept(",")) g.push_back(c.point());
        c.expect(")");
        out.groups.push_back(std::move(g));
      } while (c.accept(","));
    } else {
      std::vector<PointId> g{c.point()};
      while (c.accept(",")) g.push_back(c.point());
      out.groups.push_back(std::move(g));
    }
    c.expect("]");
    return out;
  }

  AstStep step(int depth) {
    if (at_end()) fail_eof({"LABEL", "qed", "close"});
    const Line& line = current();
    if (line.tokens.size() < 2 || !line.tokens[0].ident || line.tokens[1].text != ":") {
      Cursor c(line);
      c.fail("expected a step", {"LABEL ':'", "qed", "close"});
    }
    Cursor c = next_line({});
    AstStep st;
    st.line = c.line_number();
    const Cursor at_label = c;
    st.label = c.ident("LABEL");
    c.expect(":");

    if (c.accept("extend")) {
      AstExtend e;
      e.from = c.point();
      e.through = c.point();
      c.expect("by");
      e.length = segterm(c);
      c.expect("as");
      e.fresh = c.point();
      c.end();
      st.body = std::move(e);
    } else if (c.accept("layoff")) {
      AstLayoff l;
      l.from = c.point();
      c.expect("toward");
      l.toward = c.point();
      c.expect("by");
      l.length = segterm(c);
      c.expect("as");
      l.fresh = c.point();
      c.expect("from");
      l.refs = refs(c);
      c.end();
      st.body = std::move(l);
    } else if (c.accept("lemma")) {
      AstLemma l;
      l.lemma = c.ident("IDENT");
      c.expect("(");
      do {
        PointId from = c.point();
        c.expect("=");
        PointId to = c.point();
        l.point_map.emplace_back(std::move(from), std::move(to));
      } while (c.accept(","));
      c.expect(")");
      if (c.accept("as")) {
        do l.introduced.push_back(c.point());
        while (!c.done());
      }
      c.end();
      st.body = std::move(l);
    } else if (c.accept("cases")) {
      if (depth >= kMaxCaseDepth) at_label.fail("case analysis nested too deeply", {});
      AstCases cs;
      cs.lhs = segterm(c);
      c.expect("vs");
      cs.rhs = segterm(c);
      c.end();
      bind_label(at_label, st.label);
      for (const char* kind : {"lt", "eq", "gt"}) cs.branches.push_back(branch(kind, depth + 1));
      st.body = std::move(cs);
      return st;
    } else {
      AstRule r;
      do {
        r.claims.push_back(c.accept("absurd") ? RawFact{FactKind::absurd, {}} : fact(c));
      } while (c.accept(","));
      c.expect("by");
      r.rule = c.ident("RULE");
      r.inst = inst(c);
      if (c.accept("from")) r.refs = refs(c);
      c.end();
      st.body = std::move(r);
    }
    bind_label(at_label, st.label);
    return st;
  }

  AstBranch branch(std::string_view kind, int depth) {
    AstBranch b;
    Cursor c = next_line({"case"});
    b.line = c.line_number();
    c.expect("case");
    c.expect(kind);
    c.end();
    b.kind = kind == "lt" ? CaseKind::lt : kind == "eq" ? CaseKind::eq : CaseKind::gt;
    scopes_.emplace_back();
    while (!line_starts_with("close")) b.steps.push_back(step(depth));
    Cursor cl = next_line({"close"});
    b.close_line = cl.line_number();
    cl.expect("close");
    b.closes_absurd = cl.one_of({"goal", "absurd"}) == "absurd";
    cl.expect("from");
    b.refs = refs(cl);
    cl.end();
    scopes_.pop_back();
    return b;
  }

  std::vector<Line> lines_;
  std::size_t idx_ = 0;
  std::vector<std::set<std::string>> scopes_;
};

}  // namespace

ScriptAst parse(std::string_view text) { return Parser(lex(text)).file(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

std::string print_refs(const std::vector<Ref>& refs) {
  std::vector<std::string> parts;
  for (const auto& r : refs) {
    switch (r.kind) {
      case Ref::Kind::label: parts.push_back(r.label); break;
      case Ref::Kind::refl: parts.push_back("refl"); break;
      case Ref::Kind::sym: parts.push_back("sym " + r.label); break;
    }
  }
  return join(parts, ", ");
}

std::string print_points(const std::vector<PointId>& pts, std::string_view sep) {
  std::vector<std::string> names;
  for (const auto& p : pts) names.push_back(p.name);
  return join(names, sep);
}

std::string print_seg(const PointPair& s) { return "seg " + s.first.name + " " + s.second.name; }

std::string print_tags(const std::vector<Tag>& tags) {
  std::vector<std::string> names;
  for (Tag t : tags) names.emplace_back(tag_name(t));
  return join(names, ", ");
}

std::string print_inst(const Inst& inst) {
  if (!inst.grouped) return "[" + print_points(inst.groups.front(), ",") + "]";
  std::vector<std::string> groups;
  for (const auto& g : inst.groups) groups.push_back("(" + print_points(g, ",") + ")");
  return "[" + join(groups, ",") + "]";
}

void print_steps(std::ostringstream& out, const std::vector<AstStep>& steps, int indent);

void print_step(std::ostringstream& out, const AstStep& st, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  out << pad << st.label << ": ";
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, AstRule>) {
          std::vector<std::string> claims;
          for (const auto& c : body.claims) claims.push_back(to_string(c));
          out << join(claims, ", ") << " by " << body.rule << print_inst(body.inst);
          if (!body.refs.empty()) out << " from " << print_refs(body.refs);
          out << "\n";
        } else if constexpr (std::is_same_v<T, AstExtend>) {
          out << "extend " << body.from.name << " " << body.through.name << " by "
              << print_seg(body.length) << " as " << body.fresh.name << "\n";
        } else if constexpr (std::is_same_v<T, AstLayoff>) {
          out << "layoff " << body.from.name << " toward " << body.toward.name << " by "
              << print_seg(body.length) << " as " << body.fresh.name << " from "
              << print_refs(body.refs) << "\n";
        } else if constexpr (std::is_same_v<T, AstLemma>) {
          std::vector<std::string> pairs;
          for (const auto& [a, b] : body.point_map) pairs.push_back(a.name + "=" + b.name);
          out << "lemma " << body.lemma << "(" << join(pairs, ", ") << ")";
          if (!body.introduced.empty()) out << " as " << print_points(body.introduced, " ");
          out << "\n";
        } else {
          out << "cases " << print_seg(body.lhs) << " vs " << print_seg(body.rhs) << "\n";
          for (const auto& b : body.branches) {
            out << pad << "  case " << case_name(b.kind) << "\n";
            print_steps(out, b.steps, indent + 4);
            out << pad << "    close " << (b.closes_absurd ? "absurd" : "goal") << " from "
                << print_refs(b.refs) << "\n";
          }
        }
      },
      st.body);
}

void print_steps(std::ostringstream& out, const std::vector<AstStep>& steps, int indent) {
  for (const auto& st : steps) print_step(out, st, indent);
}

}  // namespace

std::string print(const ScriptAst& ast) {
  std::ostringstream out;
  bool first = true;
  for (const auto& item : ast.items) {
    if (!first) out << "\n";
    first = false;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, AstTheorem>) {
            out << "theorem " << x.name << "\n";
            out << "  tags: " << print_tags(x.tags) << "\n";
            out << "  points " << print_points(x.points, " ") << "\n";
            if (!x.introduced.empty())
              out << "  introduces " << print_points(x.introduced, " ") << "\n";
            for (const auto& [label, f] : x.assumptions)
              out << "  assume " << label << ": " << to_string(f) << "\n";
            for (const auto& f : x.shows) out << "  show " << to_string(f) << "\n";
            if (!x.uses.empty()) out << "  uses " << join(x.uses, ", ") << "\n";
            if (x.proof) {
              out << "  proof\n";
              print_steps(out, x.proof->steps, 4);
              out << "  qed from " << print_refs(x.proof->qed) << "\n";
            }
          } else if constexpr (std::is_same_v<T, AstDeclare>) {
            out << "declare " << x.name << "\n";
            out << "  tags: " << print_tags(x.tags) << "\n";
            if (!x.uses.empty()) out << "  uses " << join(x.uses, ", ") << "\n";
          } else {
            out << "axiom " << x.name << "\n";
            out << "  tags: " << print_tags(x.tags) << "\n";
          }
        },
        item);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Elaboration

namespace {

Error at_line(int line, const Error& e) {
  std::string msg = e.what();
  const auto prefix = std::string(error_code_name(e.code())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  return Error(e.code(), "line " + std::to_string(line) + ": " + msg);
}

Fact canon_at(int line, const RawFact& f) {
  try {
    return canon_fact(f);
  } catch (const Error& e) {
    throw at_line(line, e);
  }
}

Segment segment_at(int line, const PointPair& s) {
  try {
    return canon_segment(s.first, s.second);
  } catch (const Error& e) {
    throw at_line(line, e);
  }
}

class Elaborator {
 public:
  explicit Elaborator(const LemmaRegistry& registry) : registry_(registry) {}

  Proof proof(const AstTheorem& th) {
    scopes_.assign(1, {});
    for (const auto& [label, f] : th.assumptions) scopes_.back().insert(label);
    Proof p;
    p.steps = steps(th.proof->steps);
    p.qed = check_refs(th.proof->qed_line, th.proof->qed);
    p.qed_line = th.proof->qed_line;
    return p;
  }

 private:
  bool visible(const std::string& label) const {
    return std::any_of(scopes_.begin(), scopes_.end(),
                       [&](const auto& s) { return s.count(label) > 0; });
  }

  std::vector<Ref> check_refs(int line, const std::vector<Ref>& refs) const {
    for (const auto& r : refs)
      if (r.kind != Ref::Kind::refl && !visible(r.label))
        throw Error(ErrorCode::UnresolvedLabel, "line " + std::to_string(line) + ": " + r.label);
    return refs;
  }

  std::vector<Step> steps(const std::vector<AstStep>& in) {
    std::vector<Step> out;
    for (const auto& st : in) out.push_back(step(st));
    return out;
  }

  Step step(const AstStep& st) {
    Step out;
    out.label = st.label;
    out.line = st.line;
    std::visit(
        [&](const auto& body) {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, AstRule>) {
            auto rule = rule_by_name(body.rule);
            if (!rule)
              throw Error(ErrorCode::UnknownRule,
                          "line " + std::to_string(st.line) + ": " + body.rule);
            RuleStep r;
            r.rule = *rule;
            for (const auto& c : body.claims) r.claims.push_back(canon_at(st.line, c));
            r.inst = body.inst.flatten();
            r.refs = check_refs(st.line, body.refs);
            out.body = std::move(r);
          } else if constexpr (std::is_same_v<T, AstExtend>) {
            out.body = ConstructStep{Extend{body.from, body.through, segment_at(st.line, body.length)},
                                     body.fresh, {}};
          } else if constexpr (std::is_same_v<T, AstLayoff>) {
            out.body = ConstructStep{Layoff{body.from, body.toward, segment_at(st.line, body.length)},
                                     body.fresh, check_refs(st.line, body.refs)};
          } else if constexpr (std::is_same_v<T, AstLemma>) {
            if (!registry_.count(body.lemma))
              throw Error(ErrorCode::UnknownLemma,
                          "line " + std::to_string(st.line) + ": " + body.lemma);
            out.body = LemmaStep{body.lemma, body.point_map, body.introduced};
          } else {
            CasesStep cs{segment_at(st.line, body.lhs), segment_at(st.line, body.rhs), {}};
            scopes_.back().insert(st.label);
            for (const auto& b : body.branches) {
              scopes_.emplace_back();
              CaseBranch cb;
              cb.kind = b.kind;
              cb.line = b.line;
              cb.steps = steps(b.steps);
              cb.closes_absurd = b.closes_absurd;
              cb.refs = check_refs(b.close_line, b.refs);
              cb.close_line = b.close_line;
              cs.branches.push_back(std::move(cb));
              scopes_.pop_back();
            }
            out.body = std::move(cs);
          }
        },
        st.body);
    scopes_.back().insert(st.label);
    return out;
  }

  const LemmaRegistry& registry_;
  std::vector<std::set<std::string>> scopes_;
};

}  // namespace

TheoremStatement elaborate_statement(const AstTheorem& th) {
  TheoremStatement s;
  s.name = th.name;
  s.tags.insert(th.tags.begin(), th.tags.end());
  s.given = th.points;
  s.introduced = th.introduced;
  for (const auto& [label, f] : th.assumptions) s.hypotheses.push_back({label, canon_at(th.line, f)});
  for (const auto& f : th.shows) s.conclusions.push_back(canon_at(th.line, f));
  return s;
}

LemmaRegistry statements_of(const ScriptAst& ast) {
  LemmaRegistry out;
  for (const auto& item : ast.items)
    if (const auto* th = std::get_if<AstTheorem>(&item)) out[th->name] = elaborate_statement(*th);
  return out;
}

Elaborated elaborate_item(const AstItem& item, const LemmaRegistry& registry) {
  Elaborated out;
  if (const auto* th = std::get_if<AstTheorem>(&item)) {
    out.kind = th->proof ? ItemKind::theorem : ItemKind::declared;
    out.line = th->line;
    out.statement = elaborate_statement(*th);
    out.uses = th->uses;
    if (th->proof) out.proof = Elaborator(registry).proof(*th);
  } else if (const auto* d = std::get_if<AstDeclare>(&item)) {
    out.kind = ItemKind::declared;
    out.line = d->line;
    out.statement.name = d->name;
    out.statement.tags.insert(d->tags.begin(), d->tags.end());
    out.uses = d->uses;
  } else {
    const auto& a = std::get<AstAxiom>(item);
    out.kind = ItemKind::axiom;
    out.line = a.line;
    out.statement.name = a.name;
    out.statement.tags.insert(a.tags.begin(), a.tags.end());
  }
  return out;
}

std::vector<Elaborated> elaborate(const ScriptAst& ast, const LemmaRegistry& registry) {
  std::vector<Elaborated> out;
  for (const auto& item : ast.items) out.push_back(elaborate_item(item, registry));
  return out;
}

}  // namespace pons::script
