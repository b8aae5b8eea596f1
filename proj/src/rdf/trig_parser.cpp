#include <cstdint>
#include <deque>
#include <string>

#include "nanopub/error.hpp"
#include "nanopub/trig.hpp"
#include "nanopub/vocab.hpp"

namespace nanopub::rdf {

namespace {

using PrefixTable = std::vector<std::pair<std::string, std::string>>;

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
bool is_pn_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-' ||
         static_cast<unsigned char>(c) >= 0x80;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

const std::string* find_prefix(const PrefixTable& table, std::string_view label) {
  for (const auto& [l, iri] : table) {
    if (l == label) return &iri;
  }
  return nullptr;
}

void set_prefix(PrefixTable& table, std::string label, std::string iri) {
  for (auto& [l, i] : table) {
    if (l == label) {
      i = std::move(iri);
      return;
    }
  }
  table.emplace_back(std::move(label), std::move(iri));
}

class Parser {
 public:
  Parser(std::string_view src, std::size_t first_line, PrefixTable& prefixes)
      : src_(src), line_(first_line), prefixes_(prefixes) {}

  void parse_document(std::vector<GraphBlock>& out) {
    while (true) {
      skip_ws();
      if (eof()) return;
      parse_statement(out);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& code, const std::string& message) const {
    throw ParseError(code, message, line_, col_);
  }

  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char get() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void expect(char c) {
    if (eof() || peek() != c) {
      fail("syntax", std::string("expected '") + c + "'");
    }
    get();
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (is_ws(c)) {
        get();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  // Case-insensitive keyword match followed by a delimiter.
  bool at_keyword(std::string_view kw) const {
    if (pos_ + kw.size() > src_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      char a = src_[pos_ + i];
      if (a >= 'a' && a <= 'z') a = static_cast<char>(a - 'a' + 'A');
      if (a != kw[i]) return false;
    }
    char next = peek(kw.size());
    return next == '\0' || is_ws(next) || next == '<' || next == '{';
  }

  void skip_chars(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) get();
  }

  void reject_unsupported_term() {
    if (peek() == '_' && peek(1) == ':') fail("blank-node", "blank nodes are not supported");
    if (peek() == '[') fail("blank-node", "anonymous blank nodes are not supported");
    if (peek() == '(') fail("unsupported-syntax", "collections are not supported");
    if (peek() == '<' && peek(1) == '<') fail("unsupported-syntax", "quoted triples are not supported");
  }

  void parse_statement(std::vector<GraphBlock>& out) {
    if (peek() == '@') {
      if (src_.substr(pos_).starts_with("@prefix") && (is_ws(peek(7)))) {
        skip_chars(7);
        parse_prefix_decl(true);
        return;
      }
      if (src_.substr(pos_).starts_with("@base")) {
        fail("unsupported-syntax", "@base is not supported (relative IRIs are rejected)");
      }
      fail("syntax", "unknown directive");
    }
    if (at_keyword("PREFIX")) {
      skip_chars(6);
      parse_prefix_decl(false);
      return;
    }
    if (at_keyword("BASE")) {
      fail("unsupported-syntax", "BASE is not supported (relative IRIs are rejected)");
    }
    if (at_keyword("GRAPH")) {
      skip_chars(5);
      skip_ws();
    }
    if (peek() == '{') {
      fail("quad-outside-graph", "default graph block: every statement must be inside a named graph");
    }
    reject_unsupported_term();
    Term label = parse_iri_term();
    skip_ws();
    if (peek() != '{') {
      fail("quad-outside-graph", "statement outside any graph block");
    }
    get();
    GraphBlock block{label, {}};
    parse_block_body(block);
    out.push_back(std::move(block));
  }

  void parse_prefix_decl(bool at_form) {
    skip_ws();
    std::string label;
    while (!eof() && (is_pn_char(peek()) || peek() == '.')) label += get();
    if (peek() != ':') fail("syntax", "expected ':' after prefix label");
    get();
    skip_ws();
    if (peek() != '<') fail("syntax", "expected IRI in prefix declaration");
    std::string iri = parse_iriref();
    set_prefix(prefixes_, std::move(label), std::move(iri));
    if (at_form) {
      skip_ws();
      expect('.');
    }
  }

  void parse_block_body(GraphBlock& block) {
    while (true) {
      skip_ws();
      if (eof()) fail("syntax", "unterminated graph block");
      if (peek() == '}') {
        get();
        return;
      }
      reject_unsupported_term();
      Term subject = parse_iri_term();
      parse_predicate_object_list(block, subject);
      skip_ws();
      if (peek() == '.') {
        get();
      } else if (peek() != '}') {
        fail("syntax", "expected '.' or '}'");
      }
    }
  }

  void parse_predicate_object_list(GraphBlock& block, const Term& subject) {
    while (true) {
      skip_ws();
      Term predicate = parse_verb();
      while (true) {
        skip_ws();
        Term object = parse_object();
        block.quads.emplace_back(subject, predicate, std::move(object), block.graph);
        skip_ws();
        if (peek() != ',') break;
        get();
      }
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      if (peek() == '.' || peek() == '}') return;
    }
  }

  Term parse_verb() {
    if (peek() == 'a' && (is_ws(peek(1)) || peek(1) == '<')) {
      get();
      return Term::iri(std::string(vocab::kRdfType));
    }
    reject_unsupported_term();
    return parse_iri_term();
  }

  Term parse_object() {
    reject_unsupported_term();
    char c = peek();
    if (c == '<') return make_iri(parse_iriref());
    if (c == '"' || c == '\'') return parse_literal();
    if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1)))) {
      return parse_number();
    }
    if (matches_word("true")) {
      skip_chars(4);
      return Term::literal("true", std::string(vocab::kXsdBoolean));
    }
    if (matches_word("false")) {
      skip_chars(5);
      return Term::literal("false", std::string(vocab::kXsdBoolean));
    }
    return make_iri(parse_pname());
  }

  bool matches_word(std::string_view w) const {
    if (!src_.substr(pos_).starts_with(w)) return false;
    char next = peek(w.size());
    return !(is_pn_char(next) || next == ':' || (next == '.' && is_pn_char(peek(w.size() + 1))));
  }

  Term parse_iri_term() {
    if (peek() == '<') return make_iri(parse_iriref());
    return make_iri(parse_pname());
  }

  Term make_iri(std::string value) {
    if (!is_absolute_iri(value)) {
      if (value.find(':') == std::string::npos || value.empty()) {
        fail("relative-iri", "relative IRI <" + value + ">");
      }
      fail("syntax", "invalid IRI <" + value + ">");
    }
    return Term::iri(std::move(value));
  }

  std::uint32_t parse_hex(std::size_t digits) {
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      if (eof() || !is_hex(peek())) fail("syntax", "bad unicode escape");
      char h = get();
      cp = cp * 16 + static_cast<std::uint32_t>(
                         is_digit(h) ? h - '0' : (h | 0x20) - 'a' + 10);
    }
    return cp;
  }

  std::string parse_iriref() {
    expect('<');
    std::string out;
    while (true) {
      if (eof()) fail("syntax", "unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        char e = eof() ? '\0' : get();
        if (e == 'u') {
          append_utf8(out, parse_hex(4));
        } else if (e == 'U') {
          append_utf8(out, parse_hex(8));
        } else {
          fail("syntax", "bad escape in IRI");
        }
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
          c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        fail("syntax", "illegal character in IRI");
      }
      out += c;
    }
    if (out.empty() || !is_absolute_iri(out)) {
      fail("relative-iri", "relative IRI <" + out + ">");
    }
    return out;
  }

  std::string parse_pname() {
    std::size_t start_line = line_, start_col = col_;
    std::string label;
    while (!eof() && (is_pn_char(peek()) || peek() == '.')) label += get();
    if (peek() != ':') {
      line_ = start_line;
      col_ = start_col;
      fail("syntax", label.empty() ? "unexpected character '" + std::string(1, peek()) + "'"
                                   : "unexpected token '" + label + "'");
    }
    if (!label.empty() && label.back() == '.') fail("syntax", "prefix label ends with '.'");
    get();
    std::string local;
    while (!eof()) {
      char c = peek();
      if (is_pn_char(c) || c == ':' || c == '%') {
        local += get();
      } else if (c == '.') {
        // A dot is part of the local name only if more name characters follow.
        char n = peek(1);
        if (is_pn_char(n) || n == ':' || n == '%' || n == '.' || n == '\\') {
          local += get();
        } else {
          break;
        }
      } else if (c == '\\') {
        get();
        if (eof()) fail("syntax", "dangling escape in local name");
        local += get();
      } else {
        break;
      }
    }
    const std::string* ns = find_prefix(prefixes_, label);
    if (!ns) fail("undefined-prefix", "undefined prefix '" + label + ":'");
    return *ns + local;
  }

  Term parse_literal() {
    char quote = get();
    bool long_form = peek() == quote && peek(1) == quote;
    if (long_form) {
      get();
      get();
    }
    std::string lexical;
    while (true) {
      if (eof()) fail("syntax", "unterminated string literal");
      char c = peek();
      if (c == quote) {
        if (!long_form) {
          get();
          break;
        }
        if (peek(1) == quote && peek(2) == quote && peek(3) != quote) {
          skip_chars(3);
          break;
        }
        lexical += get();
        continue;
      }
      if (!long_form && (c == '\n' || c == '\r')) {
        fail("syntax", "newline in short string literal");
      }
      get();
      if (c != '\\') {
        lexical += c;
        continue;
      }
      if (eof()) fail("syntax", "dangling escape");
      char e = get();
      switch (e) {
        case 't': lexical += '\t'; break;
        case 'b': lexical += '\b'; break;
        case 'n': lexical += '\n'; break;
        case 'r': lexical += '\r'; break;
        case 'f': lexical += '\f'; break;
        case '"': lexical += '"'; break;
        case '\'': lexical += '\''; break;
        case '\\': lexical += '\\'; break;
        case 'u': append_utf8(lexical, parse_hex(4)); break;
        case 'U': append_utf8(lexical, parse_hex(8)); break;
        default: fail("syntax", std::string("unknown escape \\") + e);
      }
    }
    if (peek() == '@') {
      get();
      std::string lang;
      while (!eof() && (is_alpha(peek()) || (!lang.empty() && (peek() == '-' || is_digit(peek()))))) {
        lang += get();
      }
      if (lang.empty() || lang.back() == '-') fail("syntax", "bad language tag");
      return Term::literal(std::move(lexical), {}, std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      skip_chars(2);
      reject_unsupported_term();
      Term dt = parse_iri_term();
      return Term::literal(std::move(lexical), dt.value());
    }
    return Term::literal(std::move(lexical));
  }

  Term parse_number() {
    std::string text;
    if (peek() == '+' || peek() == '-') text += get();
    bool digits_before = false;
    while (is_digit(peek())) {
      text += get();
      digits_before = true;
    }
    bool decimal = false;
    if (peek() == '.' && is_digit(peek(1))) {
      decimal = true;
      text += get();
      while (is_digit(peek())) text += get();
    } else if (!digits_before) {
      fail("syntax", "malformed number");
    }
    if (peek() == 'e' || peek() == 'E') {
      text += get();
      if (peek() == '+' || peek() == '-') text += get();
      if (!is_digit(peek())) fail("syntax", "malformed exponent");
      while (is_digit(peek())) text += get();
      return Term::literal(std::move(text), std::string(vocab::kXsdDouble));
    }
    return Term::literal(std::move(text), std::string(decimal ? vocab::kXsdDecimal
                                                              : vocab::kXsdInteger));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_ = 1;
  PrefixTable& prefixes_;
};

// Splits a character stream into complete top-level statements so that each
// chunk can be handed to the parser on its own.
class StatementScanner {
 public:
  // Feeds one line (without its newline); returns true when the buffered
  // text ends at a statement boundary.
  bool feed(const std::string& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (in_long_) {
        if (c == '\\') {
          ++i;
        } else if (c == quote_ && line.compare(i, 3, std::string(3, quote_)) == 0) {
          in_long_ = false;
          i += 2;
          last_ = quote_;
        }
        continue;
      }
      if (in_short_) {
        if (c == '\\') {
          ++i;
        } else if (c == quote_) {
          in_short_ = false;
          last_ = quote_;
        }
        continue;
      }
      if (in_iri_) {
        if (c == '>') {
          in_iri_ = false;
          last_ = '>';
          if (depth_ == 0 && prefix_form_) prefix_done_ = true;
        }
        continue;
      }
      if (c == '#') break;
      if (is_ws(c)) continue;
      if (!started_) {
        started_ = true;
        prefix_form_ = line.size() - i >= 6 && (line.compare(i, 6, "PREFIX") == 0 ||
                                                 line.compare(i, 6, "prefix") == 0);
      }
      if (c == '"' || c == '\'') {
        quote_ = c;
        if (i + 2 < line.size() && line[i + 1] == c && line[i + 2] == c) {
          in_long_ = true;
          i += 2;
        } else {
          in_short_ = true;
        }
        continue;
      }
      if (c == '<' && !(i + 1 < line.size() && line[i + 1] == '<')) {
        in_iri_ = true;
        continue;
      }
      if (c == '{') ++depth_;
      if (c == '}' && depth_ > 0) --depth_;
      last_ = c;
    }
    // Short strings cannot span lines; let the parser report it.
    in_short_ = false;
    if (in_long_ || in_iri_ || depth_ != 0 || !started_) return false;
    bool boundary = last_ == '}' || last_ == '.' || prefix_done_;
    if (boundary) reset();
    return boundary;
  }

  bool pending() const { return started_; }

 private:
  void reset() {
    started_ = prefix_form_ = prefix_done_ = false;
    last_ = '\0';
  }

  bool in_long_ = false;
  bool in_short_ = false;
  bool in_iri_ = false;
  char quote_ = '"';
  int depth_ = 0;
  char last_ = '\0';
  bool started_ = false;
  bool prefix_form_ = false;
  bool prefix_done_ = false;
};

}  // namespace

QuadDocument parse_trig(std::string_view input) {
  QuadDocument doc;
  std::vector<GraphBlock> blocks;
  Parser parser(input, 1, doc.prefixes);
  parser.parse_document(blocks);
  for (auto& block : blocks) {
    for (auto& q : block.quads) doc.quads.push_back(std::move(q));
  }
  return doc;
}

struct TrigStreamReader::Impl {
  std::istream& in;
  PrefixTable prefixes;
  std::deque<GraphBlock> ready;
  std::size_t line = 0;
};

TrigStreamReader::TrigStreamReader(std::istream& in)
    : impl_(std::make_unique<Impl>(Impl{in, {}, {}, 0})) {}

TrigStreamReader::~TrigStreamReader() = default;

std::optional<GraphBlock> TrigStreamReader::next() {
  StatementScanner scanner;
  std::string chunk;
  std::size_t chunk_line = impl_->line + 1;
  std::string line;
  while (impl_->ready.empty()) {
    bool got = static_cast<bool>(std::getline(impl_->in, line));
    if (got) {
      ++impl_->line;
      if (!scanner.pending()) {
        chunk.clear();
        chunk_line = impl_->line;
      }
      chunk += line;
      chunk += '\n';
      if (!scanner.feed(line)) continue;
    } else if (chunk.find_first_not_of(" \t\r\n") == std::string::npos) {
      return std::nullopt;
    }
    std::vector<GraphBlock> blocks;
    Parser parser(chunk, chunk_line, impl_->prefixes);
    parser.parse_document(blocks);
    for (auto& b : blocks) impl_->ready.push_back(std::move(b));
    chunk.clear();
    if (!got) break;
  }
  if (impl_->ready.empty()) return std::nullopt;
  GraphBlock block = std::move(impl_->ready.front());
  impl_->ready.pop_front();
  return block;
}

const std::vector<std::pair<std::string, std::string>>& TrigStreamReader::prefixes() const {
  return impl_->prefixes;
}

}  // namespace nanopub::rdf
