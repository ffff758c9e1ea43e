// Copyright 2026 The nfl-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nfllab/specparse.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "nfllab/core.hpp"

namespace nfllab {
namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  SpecNode parse() {
    SpecNode node = parse_node();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return node;
  }

 private:
  SpecNode parse_node() {
    skip_ws();
    SpecNode node;
    node.name = parse_identifier();
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      if (peek() != ')') {
        node.args.push_back(parse_arg());
        skip_ws();
        while (peek() == ',') {
          ++pos_;
          node.args.push_back(parse_arg());
          skip_ws();
        }
      }
      expect(')');
    }
    return node;
  }

  SpecArg parse_arg() {
    skip_ws();
    SpecArg arg;
    const std::size_t mark = pos_;
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      std::string ident = parse_identifier();
      skip_ws();
      if (peek() == '=') {
        ++pos_;
        arg.key = ident;
        arg.value = parse_value();
        return arg;
      }
      pos_ = mark;  // not a key=, re-parse as a value
    }
    arg.value = parse_value();
    return arg;
  }

  SpecValue parse_value() {
    skip_ws();
    const char c = peek();
    if (c == '[') {
      ++pos_;
      std::vector<SpecValue> items;
      skip_ws();
      if (peek() != ']') {
        items.push_back(parse_value());
        skip_ws();
        while (peek() == ',') {
          ++pos_;
          items.push_back(parse_value());
          skip_ws();
        }
      }
      expect(']');
      return SpecValue{items};
    }
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      return SpecValue{parse_number()};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return SpecValue{std::make_shared<SpecNode>(parse_node())};
    }
    fail("expected a value");
  }

  double parse_number() {
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    try {
      return std::stod(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("malformed number");
    }
  }

  std::string parse_identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("spec parse error at position " + std::to_string(pos_) +
                " in \"" + text_ + "\": " + what);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void value_to_string(const SpecValue& v, std::ostringstream& out) {
  if (v.is_number()) {
    const double d = v.number();
    if (d == std::floor(d) && std::abs(d) < 1e15) {
      out << static_cast<long long>(d);
    } else {
      out << d;
    }
  } else if (v.is_node()) {
    out << spec_to_string(v.node());
  } else {
    out << '[';
    const auto& items = v.list();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out << ',';
      value_to_string(items[i], out);
    }
    out << ']';
  }
}

}  // namespace

double SpecValue::number() const {
  if (!is_number()) throw Error("spec argument is not a number");
  return std::get<double>(data);
}

long long SpecValue::integer() const {
  const double d = number();
  if (d != std::floor(d)) throw Error("spec argument is not an integer");
  return static_cast<long long>(d);
}

const SpecNode& SpecValue::node() const {
  if (!is_node()) throw Error("spec argument is not a name or call");
  return *std::get<std::shared_ptr<SpecNode>>(data);
}

const std::vector<SpecValue>& SpecValue::list() const {
  if (!is_list()) throw Error("spec argument is not a list");
  return std::get<std::vector<SpecValue>>(data);
}

const SpecValue* SpecNode::find(const std::string& key) const {
  for (const auto& arg : args) {
    if (arg.key == key) return &arg.value;
  }
  return nullptr;
}

const SpecValue* SpecNode::positional(std::size_t index) const {
  std::size_t seen = 0;
  for (const auto& arg : args) {
    if (!arg.key.empty()) continue;
    if (seen == index) return &arg.value;
    ++seen;
  }
  return nullptr;
}

const SpecValue& SpecNode::require(const std::string& key,
                                   std::size_t index) const {
  if (const SpecValue* v = find(key)) return *v;
  if (const SpecValue* v = positional(index)) return *v;
  throw Error("spec \"" + name + "\" is missing required argument \"" + key +
              "\"");
}

void SpecNode::reject_unknown(const std::vector<std::string>& known) const {
  for (const auto& arg : args) {
    if (arg.key.empty()) continue;
    bool ok = false;
    for (const auto& k : known) ok = ok || (k == arg.key);
    if (!ok) {
      throw Error("spec \"" + name + "\" has unknown argument \"" + arg.key +
                  "\"");
    }
  }
}

SpecNode parse_spec(const std::string& text) { return Parser(text).parse(); }

std::string spec_to_string(const SpecNode& node) {
  std::ostringstream out;
  out << node.name;
  if (!node.args.empty()) {
    out << '(';
    for (std::size_t i = 0; i < node.args.size(); ++i) {
      if (i) out << ',';
      if (!node.args[i].key.empty()) out << node.args[i].key << '=';
      value_to_string(node.args[i].value, out);
    }
    out << ')';
  }
  return out.str();
}

}  // namespace nfllab
